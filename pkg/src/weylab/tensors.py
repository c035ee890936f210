"""Jet-valued tensor calculus at a point: metric data, d, star, SD/ASD split.

Forms and tensors at a point are numpy object arrays of Jets (all sharing
one JetSpec).  Dimensions never exceed four, so plain loops and einsum over
object arrays are fast enough.

Star convention
---------------
The star used *everywhere* in this package is fixed by *1 = orientation and
the recursion *(Xb ^ alpha) = iota_X(*alpha).  Relative to the textbook
Riemannian Hodge star this multiplies k-forms by (-1)^(k(k-1)/2):

    n=3:  k=0: +   k=1: +   k=2: -   k=3: -
    n=4:  k=0: +   k=1: +   k=2: -   k=3: -   k=4: +

Hence *_B o *_B = -1 on 3D 1-forms and * o * = +1 on 4D 2-forms.  Mixing
this star with the textbook one is the main foreseeable sign bug in the
monopole and selfduality formulas, so no other star exists in the code.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass

import numpy as np

from . import jets
from .jets import Jet, JetSpec

__all__ = [
    "MetricJets",
    "DegenerateMetricError",
    "metric_at",
    "jet_matrix_inverse",
    "ext_d",
    "hodge_star",
    "two_form_split",
    "wedge",
    "interior",
    "values",
    "form_norm",
    "star_sign",
]


class DegenerateMetricError(ArithmeticError):
    pass


def star_sign(k: int) -> int:
    """Sign of this package's star relative to the textbook Hodge star."""
    return -1 if (k * (k - 1) // 2) % 2 else 1


@dataclass
class MetricJets:
    """Metric component jets at a point with inverse and volume data."""

    g: np.ndarray
    g_inv: np.ndarray
    det: Jet
    sqrt_det: Jet
    orientation: int

    @property
    def dim(self):
        return self.g.shape[0]

    @property
    def order(self):
        return self.g[0, 0].spec.order

    def truncated(self, order):
        if order == self.order:
            return self
        return MetricJets(
            trunc_array(self.g, order),
            trunc_array(self.g_inv, order),
            self.det.truncate(order),
            self.sqrt_det.truncate(order),
            self.orientation,
        )


def jet_matrix_inverse(g: np.ndarray):
    """Inverse and determinant of a jet matrix by Gauss-Jordan elimination.

    Valid whenever the constant-term matrix is invertible; pivots by the
    magnitude of constant terms.
    """
    d = g.shape[0]
    spec = g[0, 0].spec
    A = g.copy()
    inv = np.empty((d, d), dtype=object)
    for i in range(d):
        for j in range(d):
            inv[i, j] = jets.constant(spec, 1.0 if i == j else 0.0)
    det = jets.constant(spec, 1.0)
    for col in range(d):
        piv_row = max(range(col, d), key=lambda r: abs(A[r, col].value))
        if piv_row != col:
            A[[col, piv_row]] = A[[piv_row, col]]
            inv[[col, piv_row]] = inv[[piv_row, col]]
            det = -det
        piv = A[col, col]
        det = det * piv
        piv_inv = 1.0 / piv
        for j in range(d):
            A[col, j] = A[col, j] * piv_inv
            inv[col, j] = inv[col, j] * piv_inv
        for r in range(d):
            if r == col:
                continue
            f = A[r, col]
            if np.max(np.abs(f.c)) == 0.0:
                continue
            for j in range(d):
                A[r, j] = A[r, j] - f * A[col, j]
                inv[r, j] = inv[r, j] - f * inv[col, j]
    return inv, det


def metric_at(metric_field, point, order) -> MetricJets:
    """Evaluate a MetricField to jets, with inverse and sqrt(det).

    Raises DegenerateMetricError if the constant-term matrix is not positive
    definite.
    """
    point = tuple(point)
    g = metric_field.component_jets(point, order)
    g0 = values(g)
    eig = np.linalg.eigvalsh(0.5 * (g0 + g0.T))
    if eig[0] <= 0:
        raise DegenerateMetricError(
            f"metric not positive definite at {point}: eigenvalues {eig}"
        )
    g_inv, det = jet_matrix_inverse(g)
    return MetricJets(g, g_inv, det, jets.sqrt(det), metric_field.orientation_sign)


def as_jet(x) -> Jet:
    """Unwrap 0-d object arrays produced by einsum contractions."""
    if isinstance(x, np.ndarray):
        return x[()]
    return x


def values(arr):
    """Order-0 part of a jet array, as a float (or complex) ndarray."""
    if isinstance(arr, Jet):
        return arr.value
    out = np.empty(arr.shape, dtype=np.complex128)
    flat_in = arr.reshape(-1)
    flat_out = out.reshape(-1)
    for k in range(flat_in.size):
        v = flat_in[k]
        flat_out[k] = v.value if isinstance(v, Jet) else v
    if np.allclose(out.imag, 0.0):
        return out.real.copy()
    return out


def trunc_array(arr, order):
    out = np.empty(arr.shape, dtype=object)
    flat_in = arr.reshape(-1)
    flat_out = out.reshape(-1)
    for k in range(flat_in.size):
        flat_out[k] = flat_in[k].truncate(order)
    return out


def zeros_like_spec(spec: JetSpec, shape):
    out = np.empty(shape, dtype=object)
    out[...] = jets.constant(spec, 0.0)
    return out


def ext_d(arr: np.ndarray, degree: int) -> np.ndarray:
    """Coordinate exterior derivative; consumes one jet order."""
    spec = _spec_of(arr)
    d = spec.n_vars
    lo = spec.with_order(spec.order - 1)
    if degree == 0:
        out = np.empty((d,), dtype=object)
        for i in range(d):
            out[i] = jets.jet_partial_derivative(arr[()] if arr.shape == () else arr, i)
        return out
    out = zeros_like_spec(lo, (d,) * (degree + 1))
    for idx in itertools.product(range(d), repeat=degree + 1):
        if len(set(idx)) < len(idx):
            continue
        total = jets.constant(lo, 0.0)
        for m in range(degree + 1):
            rest = idx[:m] + idx[m + 1 :]
            total = total + (-1.0) ** m * jets.jet_partial_derivative(arr[rest], idx[m])
        out[idx] = total
    return out


def _spec_of(arr):
    if isinstance(arr, Jet):
        return arr.spec
    return arr.reshape(-1)[0].spec


def _raise_all(arr, g_inv, degree):
    if degree == 1:
        return np.einsum("ia,a->i", g_inv, arr)
    if degree == 2:
        return np.einsum("ia,jb,ab->ij", g_inv, g_inv, arr)
    if degree == 3:
        return np.einsum("ia,jb,kc,abc->ijk", g_inv, g_inv, g_inv, arr)
    if degree == 4:
        return np.einsum("ia,jb,kc,ld,abcd->ijkl", g_inv, g_inv, g_inv, g_inv, arr)
    raise ValueError(f"unsupported degree {degree}")


def hodge_star(arr: np.ndarray, mj: MetricJets, degree: int | None = None) -> np.ndarray:
    """The modified star of a k-form (see module docstring for the signs)."""
    n = mj.dim
    k = arr.ndim if degree is None else degree
    if k == 0 and not isinstance(arr, Jet):
        arr = arr[()]
    order = (arr.spec.order if k == 0 else _spec_of(arr).order)
    m = mj.truncated(min(order, mj.order))
    if k == 0:
        a = arr.truncate(m.order)
        vol = zeros_like_spec(a.spec, (n,) * n)
        for perm in itertools.permutations(range(n)):
            vol[perm] = _perm_sign_tuple(perm) * (a * m.sqrt_det)
        return float(mj.orientation) * vol
    a = trunc_array(arr, m.order)
    spec = _spec_of(a)
    a_up = _raise_all(a, m.g_inv, k)
    if k == n:
        total = jets.constant(spec, 0.0)
        for perm in itertools.permutations(range(n)):
            total = total + _perm_sign_tuple(perm) * a_up[perm]
        scale = star_sign(k) * mj.orientation / math.factorial(k)
        return total * m.sqrt_det * scale
    out = zeros_like_spec(spec, (n,) * (n - k))
    for perm in itertools.permutations(range(n)):
        I = perm[:k]
        J = perm[k:]
        out[J] = out[J] + _perm_sign_tuple(perm) * a_up[I]
    scale = star_sign(k) * mj.orientation / math.factorial(k)
    for idx in itertools.product(range(n), repeat=n - k):
        out[idx] = out[idx] * m.sqrt_det * scale
    return out


def _perm_sign_tuple(perm):
    sign = 1
    p = list(perm)
    for i in range(len(p)):
        while p[i] != i:
            j = p[i]
            p[i], p[j] = p[j], p[i]
            sign = -sign
    return sign


def two_form_split(F: np.ndarray, mj: MetricJets):
    """Selfdual / antiselfdual parts F = F+ + F- in four dimensions."""
    if mj.dim != 4:
        raise ValueError("SD/ASD split requires dimension 4")
    star_F = hodge_star(F, mj, 2)
    order = _spec_of(star_F).order
    Ft = trunc_array(F, order)
    Fp = np.empty_like(Ft)
    Fm = np.empty_like(Ft)
    for idx in itertools.product(range(4), repeat=2):
        Fp[idx] = 0.5 * (Ft[idx] + star_F[idx])
        Fm[idx] = 0.5 * (Ft[idx] - star_F[idx])
    return Fp, Fm


def wedge(a: np.ndarray, b: np.ndarray, ka: int, kb: int) -> np.ndarray:
    """Wedge product of full antisymmetric component arrays."""
    spec = _spec_of(a)
    n = a.shape[0]
    k = ka + kb
    if k > n:
        raise ValueError("wedge degree exceeds dimension")
    ob = _spec_of(b).order
    order = min(spec.order, ob)
    a = trunc_array(a, order)
    b = trunc_array(b, order)
    out = zeros_like_spec(spec.with_order(order), (n,) * k)
    norm = 1.0 / (math.factorial(ka) * math.factorial(kb))
    for idx in itertools.product(range(n), repeat=k):
        if len(set(idx)) < len(idx):
            continue
        total = jets.constant(spec.with_order(order), 0.0)
        for perm in itertools.permutations(range(k)):
            sel = tuple(idx[p] for p in perm)
            total = total + _perm_sign_tuple(perm) * (a[sel[:ka]] * b[sel[ka:]])
        out[idx] = total * norm
    return out


def interior(X: np.ndarray, arr: np.ndarray, degree: int) -> np.ndarray:
    """Interior product iota_X of a vector jet array with a k-form array."""
    return np.einsum("a,a...->...", X, arr)


def form_norm(arr_values: np.ndarray, g_inv_values: np.ndarray, degree: int) -> float:
    """Pointwise norm |alpha| with <e_I, e_I> = 1 on increasing frames."""
    if degree == 0:
        return abs(float(arr_values))
    up = arr_values
    for _ in range(degree):
        up = np.tensordot(up, g_inv_values, axes=([0], [0]))
    total = float(np.sum(arr_values * up))
    return math.sqrt(max(total / math.factorial(degree), 0.0))
