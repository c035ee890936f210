"""Connection coefficients and curvature for Levi-Civita and Weyl connections.

Conventions fixed here and used everywhere else:

    Gamma^i_jk(D)  = Gamma^i_jk(g) + delta^i_j w_k + delta^i_k w_j - g_jk w^i
    R^i_jkl        = d_k Gamma^i_lj - d_l Gamma^i_kj
                     + Gamma^i_km Gamma^m_lj - Gamma^i_lm Gamma^m_kj
    ricci_full_jl  = R^i_jil
    scal           = g^jl sym(ricci)_jl

With these signs the round n-sphere has scal = n(n-1) > 0.  For a Weyl
connection ricci_full is not symmetric; its antisymmetric part is a fixed
multiple of the Faraday curvature d(omega) (asserted by tests).  The Weyl
(conformal) curvature is computed for the Levi-Civita connection of the
gauge metric via the Schouten decomposition and is conformally invariant as
a (1,3)-tensor.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from . import jets
from .jets import Jet, OrderError
from .tensors import (
    MetricJets,
    ext_d,
    hodge_star,
    metric_at,
    trunc_array,
    values,
    zeros_like_spec,
)

__all__ = [
    "ConnectionCoeffsAt",
    "CurvatureReportAt",
    "weyl_connection_coeffs_at",
    "christoffel_jets",
    "riemann_jets",
    "ricci_jets",
    "curvature_report_at",
    "faraday_at",
    "frobenius_norm",
]


@dataclass
class ConnectionCoeffsAt:
    """Jet-valued Gamma^i_{jk} at a point (symmetric in jk)."""

    gamma: np.ndarray  # (d, d, d) object array, [i, j, k]
    flavor: str  # "levi_civita" | "weyl"
    metric: MetricJets


@dataclass
class CurvatureReportAt:
    riemann: np.ndarray          # R^i_{jkl}, numeric
    ricci_full: np.ndarray       # possibly non-symmetric for Weyl connections
    ricci_sym: np.ndarray
    scal: float                  # trivialized in the active gauge
    weyl: np.ndarray             # C^i_{jkl} of the gauge metric (0 in dim 3)
    weyl_down: np.ndarray        # C_{ijkl}
    weyl_sd: np.ndarray | None   # dim 4 only
    weyl_asd: np.ndarray | None
    metric0: np.ndarray
    metric0_inv: np.ndarray


def christoffel_jets(mj: MetricJets, omega_jets=None) -> np.ndarray:
    """Gamma^i_{jk} jets; one order below the metric jets.

    ``omega_jets`` is the 1-form jet array of the Weyl structure in the
    active gauge; None or zeros gives the Levi-Civita connection.
    """
    d = mj.dim
    order = mj.order
    if order < 1:
        raise OrderError("christoffel symbols need metric jets of order >= 1")
    lo = order - 1
    g = trunc_array(mj.g, lo)
    g_inv = trunc_array(mj.g_inv, lo)
    dg = np.empty((d, d, d), dtype=object)  # dg[m, j, k] = d_m g_jk
    for j in range(d):
        for k in range(j, d):
            for m in range(d):
                dg[m, j, k] = dg[m, k, j] = jets.jet_partial_derivative(mj.g[j, k], m)
    gamma = np.empty((d, d, d), dtype=object)
    for i in range(d):
        for j in range(d):
            for k in range(j, d):
                acc = None
                for m in range(d):
                    term = g_inv[i, m] * (dg[j, k, m] + dg[k, j, m] - dg[m, j, k])
                    acc = term if acc is None else acc + term
                gamma[i, j, k] = gamma[i, k, j] = 0.5 * acc
    if omega_jets is not None:
        w = trunc_array(omega_jets, lo)
        w_up = np.einsum("im,m->i", g_inv, w)
        for i in range(d):
            for j in range(d):
                for k in range(j, d):
                    extra = -g[j, k] * w_up[i]
                    if i == j:
                        extra = extra + w[k]
                    if i == k:
                        extra = extra + w[j]
                    gamma[i, j, k] = gamma[i, k, j] = gamma[i, j, k] + extra
    return gamma


def weyl_connection_coeffs_at(metric_field, omega_field, point, order=1) -> ConnectionCoeffsAt:
    """Connection coefficients of D = D^g + omega at a point, to jet order
    ``order`` (metric jets are evaluated at order+1)."""
    mj = metric_at(metric_field, point, order + 1)
    if omega_field is None:
        return ConnectionCoeffsAt(christoffel_jets(mj), "levi_civita", mj)
    w = omega_field.component_jets(point, order + 1)
    if all(jet.max_abs() == 0.0 for jet in w):
        return ConnectionCoeffsAt(christoffel_jets(mj, w), "levi_civita", mj)
    return ConnectionCoeffsAt(christoffel_jets(mj, w), "weyl", mj)


def riemann_jets(gamma: np.ndarray) -> np.ndarray:
    """R^i_{jkl} jets from connection coefficient jets (one order lower)."""
    d = gamma.shape[0]
    spec = gamma[0, 0, 0].spec
    if spec.order < 1:
        raise OrderError("curvature needs connection jets of order >= 1")
    lo = spec.order - 1
    dG = np.empty((d, d, d, d), dtype=object)  # dG[m, i, j, k] = d_m Gamma^i_jk
    for m in range(d):
        for i in range(d):
            for j in range(d):
                for k in range(j, d):
                    dG[m, i, j, k] = dG[m, i, k, j] = jets.jet_partial_derivative(
                        gamma[i, j, k], m
                    )
    G = trunc_array(gamma, lo)
    R = np.empty((d, d, d, d), dtype=object)
    for i in range(d):
        for j in range(d):
            for k in range(d):
                for l in range(k + 1, d):
                    acc = dG[k, i, l, j] - dG[l, i, k, j]
                    for m in range(d):
                        acc = acc + G[i, k, m] * G[m, l, j] - G[i, l, m] * G[m, k, j]
                    R[i, j, k, l] = acc
                    R[i, j, l, k] = -acc
                R[i, j, k, k] = jets.constant(spec.with_order(lo), 0.0)
    return R


def ricci_jets(R: np.ndarray) -> np.ndarray:
    d = R.shape[0]
    ric = np.empty((d, d), dtype=object)
    for j in range(d):
        for l in range(d):
            acc = None
            for i in range(d):
                acc = R[i, j, i, l] if acc is None else acc + R[i, j, i, l]
            ric[j, l] = acc
    return ric


def scalar_curvature_jet(metric_field, omega_field, point, order) -> Jet:
    """Trivialized scal of the Weyl connection as a jet of the given order.

    Needs metric and omega jets at order + 2 (derivative depth two).
    """
    mj = metric_at(metric_field, point, order + 2)
    w = omega_field.component_jets(point, order + 2) if omega_field is not None else None
    gamma = christoffel_jets(mj, w)
    R = riemann_jets(gamma)
    ric = ricci_jets(R)
    g_inv = trunc_array(mj.g_inv, order)
    d = mj.dim
    acc = None
    for j in range(d):
        for l in range(d):
            term = g_inv[j, l] * (0.5 * (ric[j, l] + ric[l, j]))
            acc = term if acc is None else acc + term
    return acc


def curvature_report_at(metric_field, omega_field, point, order=2) -> CurvatureReportAt:
    """Full curvature data of (g, omega) at a point; ``order`` >= 2."""
    if order < 2:
        raise OrderError(f"curvature report needs order >= 2, got {order}")
    mj = metric_at(metric_field, point, order)
    w = omega_field.component_jets(point, order) if omega_field is not None else None
    gamma = christoffel_jets(mj, w)
    R_jets = riemann_jets(gamma)
    ric_jets_full = ricci_jets(R_jets)
    R = values(R_jets)
    ric_full = values(ric_jets_full)
    ric_sym = 0.5 * (ric_full + ric_full.T)
    g0 = values(mj.g)
    g0_inv = values(mj.g_inv)
    scal = float(np.einsum("jl,jl->", g0_inv, ric_sym))
    d = mj.dim

    # Weyl curvature of the conformal structure: built from the gauge
    # metric's Levi-Civita data (conformally invariant with upper index).
    if w is not None and any(jet.max_abs() != 0.0 for jet in w):
        R_lc_jets = riemann_jets(christoffel_jets(mj))
        R_lc = values(R_lc_jets)
        ric_lc_full = values(ricci_jets(R_lc_jets))
        ric_lc = 0.5 * (ric_lc_full + ric_lc_full.T)
        scal_lc = float(np.einsum("jl,jl->", g0_inv, ric_lc))
    else:
        R_lc, ric_lc, scal_lc = R, ric_sym, scal

    R_down = np.einsum("im,mjkl->ijkl", g0, R_lc)
    if d >= 3:
        P = (ric_lc - scal_lc / (2.0 * (d - 1)) * g0) / (d - 2)
        gP = (
            np.einsum("ik,jl->ijkl", g0, P)
            - np.einsum("il,jk->ijkl", g0, P)
            + np.einsum("jl,ik->ijkl", g0, P)
            - np.einsum("jk,il->ijkl", g0, P)
        )
        C_down = R_down - gP
    else:
        C_down = np.zeros_like(R_down)
    C_up = np.einsum("im,mjkl->ijkl", g0_inv, C_down)

    weyl_sd = weyl_asd = None
    if d == 4:
        weyl_sd, weyl_asd = _split_weyl(C_down, mj)
    return CurvatureReportAt(
        riemann=R,
        ricci_full=ric_full,
        ricci_sym=ric_sym,
        scal=scal,
        weyl=C_up,
        weyl_down=C_down,
        weyl_sd=weyl_sd,
        weyl_asd=weyl_asd,
        metric0=g0,
        metric0_inv=g0_inv,
    )


def _star_matrix(mj: MetricJets) -> np.ndarray:
    """Numeric matrix of the modified star acting on 2-form index pairs:
    (*F)_ab = S[a,b,c,d] F_cd / 2."""
    spec0 = mj.g[0, 0].spec.with_order(0)
    S = np.zeros((4, 4, 4, 4))
    m0 = mj.truncated(0)
    for c in range(4):
        for d_ in range(c + 1, 4):
            F = zeros_like_spec(spec0, (4, 4))
            F[c, d_] = jets.constant(spec0, 1.0)
            F[d_, c] = jets.constant(spec0, -1.0)
            sF = values(hodge_star(F, m0, 2))
            S[:, :, c, d_] = sF
            S[:, :, d_, c] = -sF
    return S


def _split_weyl(C_down: np.ndarray, mj: MetricJets):
    """Project both antisymmetric index pairs of the Weyl tensor onto the
    selfdual / antiselfdual eigenspaces of the modified star."""
    S = _star_matrix(mj)
    starC_left = 0.5 * np.einsum("abij,ijcd->abcd", S, C_down)
    Cp_left = 0.5 * (C_down + starC_left)
    Cm_left = 0.5 * (C_down - starC_left)
    Cp = 0.5 * (Cp_left + 0.5 * np.einsum("abij,cdij->abcd", Cp_left, S))
    Cm = 0.5 * (Cm_left - 0.5 * np.einsum("abij,cdij->abcd", Cm_left, S))
    return Cp, Cm


def faraday_at(omega_field, point, order=0) -> np.ndarray:
    """F^D = d(omega) for D = D^gauge + omega, as a 2-form jet array."""
    w = omega_field.component_jets(point, order + 1)
    return ext_d(w, 1)


def frobenius_norm(tensor: np.ndarray, g0: np.ndarray, g0_inv: np.ndarray, index_types: str) -> float:
    """Frobenius norm measured in a g-orthonormal frame; 'u'/'d' per slot."""
    T = np.asarray(tensor, dtype=np.float64)
    if len(index_types) != T.ndim:
        raise ValueError("index_types length must match tensor rank")
    idx = "abcdefgh"[: T.ndim]
    parts = [T]
    metric_specs = []
    for k, t in enumerate(index_types):
        parts.append(g0 if t == "u" else g0_inv)
        metric_specs.append(idx[k] + idx[k].upper())
    parts.append(T)
    expr = idx + "," + ",".join(metric_specs) + "," + idx.upper() + "->"
    total = np.einsum(expr, *parts)
    return float(np.sqrt(max(float(total), 0.0)))
