"""Finite-difference oracles, independent of the jet machinery."""

import numpy as np


def central_diff(f, point, var, h=1e-5):
    p = list(point)
    p[var] += h
    fp = f(tuple(p))
    p[var] -= 2 * h
    fm = f(tuple(p))
    return (fp - fm) / (2 * h)


def fd_partial(f, point, multi_index, h=None):
    """Mixed partial derivative by nested central differences.

    Step is tuned per total order: too-small steps amplify cancellation in
    higher orders.
    """
    order = sum(multi_index)
    if h is None:
        h = {0: 0.0, 1: 1e-6, 2: 1e-5, 3: 5e-4}.get(order, 1e-3)
    if order == 0:
        return f(tuple(point))
    var = next(i for i, m in enumerate(multi_index) if m > 0)
    lower = list(multi_index)
    lower[var] -= 1

    def df(p):
        return central_diff(f, p, var, h)

    return fd_partial(df, point, tuple(lower), h)


def fd_metric_christoffel(metric_fn, point, dim, h=1e-5):
    """Gamma^i_jk of a metric function by finite differences."""
    g0 = metric_fn(tuple(point))
    ginv = np.linalg.inv(g0)
    dg = np.empty((dim, dim, dim))
    for m in range(dim):
        dg[m] = central_diff(lambda p: metric_fn(p), point, m, h)
    gamma = np.empty((dim, dim, dim))
    for i in range(dim):
        for j in range(dim):
            for k in range(dim):
                gamma[i, j, k] = 0.5 * sum(
                    ginv[i, m] * (dg[j, k, m] + dg[k, j, m] - dg[m, j, k])
                    for m in range(dim)
                )
    return gamma


def fd_ricci(metric_fn, point, dim, h=1e-4):
    """Ricci tensor by finite differences of Christoffel symbols."""
    dGamma = np.empty((dim, dim, dim, dim))
    for m in range(dim):
        dGamma[m] = central_diff(
            lambda p: fd_metric_christoffel(metric_fn, p, dim, h), point, m, h
        )
    G = fd_metric_christoffel(metric_fn, point, dim, h)
    R = np.empty((dim, dim, dim, dim))
    for i in range(dim):
        for j in range(dim):
            for k in range(dim):
                for l in range(dim):
                    R[i, j, k, l] = (
                        dGamma[k, i, l, j]
                        - dGamma[l, i, k, j]
                        + sum(G[i, k, m] * G[m, l, j] - G[i, l, m] * G[m, k, j] for m in range(dim))
                    )
    return np.einsum("ijil->jl", R)
