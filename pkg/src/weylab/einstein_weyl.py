"""3D Weyl structures: Einstein-Weyl residuals, gauge moves, congruences.

All densities are trivialized in the gauge of g_B; a weight-w trivialized
field f has covariant derivative df + w f omega_B.  The divergence tau and
twist kappa of a congruence carry weight -1.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from . import jets
from .charts import Chart, ExprField, FormField, LambdaField, MetricField
from .curvature import (
    christoffel_jets,
    curvature_report_at,
    faraday_at,
    frobenius_norm,
    scalar_curvature_jet,
)
from .tensors import as_jet, ext_d, hodge_star, metric_at, trunc_array, values

__all__ = [
    "WeylStructure3",
    "SFGCReport",
    "ew_residual_at",
    "gauge_transform",
    "sfgc_analyze_at",
    "sfgc_fields",
    "kappa_monopole_residual_at",
    "hypercr_identities_at",
    "axial_harmonic_residual_at",
    "scal_field",
    "star_faraday_field",
]


@dataclass
class WeylStructure3:
    """Chart, gauge metric g_B and 1-form omega_B of D^B = D^{g_B} + omega_B."""

    chart: Chart
    g: MetricField
    omega: FormField
    name: str = ""
    params: dict = field(default_factory=dict)
    known_kappa: object = None  # optional trivialized twist field (weight -1)
    congruences: dict = field(default_factory=dict)  # name -> FormField (unit 1-forms)

    def sample(self, n, seed, margin=None):
        from .charts import sample_points

        return sample_points(self.chart, n, seed, margin)


@dataclass
class SFGCReport:
    tau: float
    kappa: float
    shear_residual: float


def ew_residual_at(W: WeylStructure3, point, order=2) -> float:
    """Frobenius norm of sym0(Ricci of D^B), measured with g_B raising."""
    rep = curvature_report_at(W.g, W.omega, point, order)
    d = W.chart.dim
    sym0 = rep.ricci_sym - (rep.scal / d) * rep.metric0
    return frobenius_norm(sym0, rep.metric0, rep.metric0_inv, "dd")


def weyl3_norm_at(W: WeylStructure3, point) -> float:
    """Norm of the 3D conformal Weyl tensor (identically 0; pipeline check)."""
    rep = curvature_report_at(W.g, W.omega, point, 2)
    return frobenius_norm(rep.weyl, rep.metric0, rep.metric0_inv, "uddd")


def gauge_transform(W: WeylStructure3, f_source: str, params=None) -> WeylStructure3:
    """(g, omega) -> (e^{2f} g, omega - df): same Weyl structure, new gauge."""
    f = ExprField(W.chart, f_source, params=params)

    def scale_component(g_field):
        def fn(point, order):
            return jets.exp(2.0 * f.eval_jet(point, order)) * g_field.eval_jet(point, order)

        return LambdaField(W.chart, fn, depth=g_field.derivative_depth + f.derivative_depth)

    d = W.chart.dim
    new_g = MetricField(
        W.chart,
        {(i, j): scale_component(W.g.component(i, j)) for i in range(d) for j in range(i, d)},
        orientation_sign=W.g.orientation_sign,
    )

    def shift_component(w_field, var):
        def fn(point, order):
            df = jets.jet_partial_derivative(f.eval_jet(point, order + 1), var)
            return w_field.eval_jet(point, order) - df

        return LambdaField(
            W.chart, fn, depth=max(w_field.derivative_depth, f.derivative_depth + 1)
        )

    new_omega = FormField(
        W.chart, 1, {(i,): shift_component(W.omega.component((i,)), i) for i in range(d)}
    )

    new_kappa = None
    if W.known_kappa is not None:
        kap = W.known_kappa

        def kfn(point, order):
            return jets.exp(-f.eval_jet(point, order)) * kap.eval_jet(point, order)

        new_kappa = LambdaField(W.chart, kfn, depth=kap.derivative_depth)
    return WeylStructure3(
        W.chart, new_g, new_omega, name=W.name + "+gauge", params=dict(W.params),
        known_kappa=new_kappa, congruences=dict(W.congruences),
    )


def _unit_one_form_jets(W: WeylStructure3, chi: FormField, point, order):
    """chi jets normalized to unit length in g_B; returns (chi_hat, mj)."""
    mj = metric_at(W.g, point, order)
    c = chi.component_jets(point, order)
    norm2 = None
    for i in range(W.chart.dim):
        for j in range(W.chart.dim):
            term = mj.g_inv[i, j] * c[i] * c[j]
            norm2 = term if norm2 is None else norm2 + term
    if abs(norm2.value) < 1e-12:
        raise ValueError(f"zero-length congruence at {point}")
    inv_norm = 1.0 / jets.sqrt(norm2)
    out = np.empty_like(c)
    for i in range(W.chart.dim):
        out[i] = c[i] * inv_norm
    return out, mj


def _sfgc_jets(W: WeylStructure3, chi: FormField, point, order):
    """tau, kappa jets of a congruence and the full D^B chi decomposition.

    D^B acts on the weightless unit 1-form chi via the Weyl connection plus
    the weight (+1) term of the L^1-valued index lowering:
        T_ij = d_i chi_j - Gamma(D^B)^k_ij chi_k + omega_i chi_j.
    """
    d = W.chart.dim
    chi_hat, mj = _unit_one_form_jets(W, chi, point, order + 1)
    w = W.omega.component_jets(point, order + 1)
    gamma = christoffel_jets(mj, w)  # order
    w_lo = trunc_array(w, order)
    chi_lo = trunc_array(chi_hat, order)
    T = np.empty((d, d), dtype=object)
    for i in range(d):
        for j in range(d):
            acc = jets.jet_partial_derivative(chi_hat[j], i) + w_lo[i] * chi_lo[j]
            for k in range(d):
                acc = acc - gamma[k, i, j] * chi_lo[k]
            T[i, j] = acc
    mj_lo = mj.truncated(order)
    g = mj_lo.g
    g_inv = mj_lo.g_inv
    chi_up = np.einsum("ij,j->i", g_inv, chi_lo)
    trace_full = as_jet(np.einsum("ij,ij->", g_inv, T))
    trace_chi = as_jet(np.einsum("i,j,ij->", chi_up, chi_up, T))
    tau = 0.5 * (trace_full - trace_chi)
    star_chi = hodge_star(chi_lo, mj_lo, 1)
    star_chi_up = np.einsum("ia,jb,ab->ij", g_inv, g_inv, star_chi)
    kappa = 0.5 * as_jet(np.einsum("ij,ij->", T, star_chi_up))
    return {
        "T": T,
        "tau": tau,
        "kappa": kappa,
        "chi_hat": chi_lo,
        "star_chi": star_chi,
        "mj": mj_lo,
    }


def sfgc_analyze_at(W: WeylStructure3, chi: FormField, point) -> SFGCReport:
    """Divergence, twist and shear residual of a congruence at a point."""
    data = _sfgc_jets(W, chi, point, 0)
    T0 = values(data["T"])
    g0 = values(data["mj"].g)
    g0_inv = values(data["mj"].g_inv)
    chi0 = values(data["chi_hat"])
    star0 = values(data["star_chi"])
    tau = float(data["tau"].value)
    kappa = float(data["kappa"].value)
    recon = tau * (g0 - np.outer(chi0, chi0)) + kappa * star0
    shear = frobenius_norm(T0 - recon, g0, g0_inv, "dd")
    return SFGCReport(tau=tau, kappa=kappa, shear_residual=shear)


def sfgc_fields(W: WeylStructure3, chi: FormField):
    """(tau, kappa) as point-evaluable fields (derivative depth one more
    than the congruence/metric data)."""
    depth = 1 + max(chi.derivative_depth, W.g.derivative_depth, W.omega.derivative_depth)

    def tau_fn(point, order):
        return _sfgc_jets(W, chi, point, order)["tau"]

    def kappa_fn(point, order):
        return _sfgc_jets(W, chi, point, order)["kappa"]

    return (
        LambdaField(W.chart, tau_fn, depth=depth, name="tau"),
        LambdaField(W.chart, kappa_fn, depth=depth, name="kappa"),
    )


def kappa_monopole_residual_at(W: WeylStructure3, chi: FormField, point) -> float:
    """Norm of *_B D^B kappa - (1/2 F^B - d(tau chi)), all trivialized."""
    order = 1
    data = _sfgc_jets(W, chi, point, order)
    mj = data["mj"]
    w = W.omega.component_jets(point, order - 1)
    d = W.chart.dim
    # D^B kappa for weight -1: d(kappa) - kappa omega
    kap = data["kappa"]
    Dk = np.empty((d,), dtype=object)
    for i in range(d):
        Dk[i] = jets.jet_partial_derivative(kap, i) - kap.truncate(order - 1) * w[i]
    star_Dk = hodge_star(Dk, mj.truncated(order - 1), 1)
    F = faraday_at(W.omega, point, 0)
    tau_chi = np.empty((d,), dtype=object)
    for i in range(d):
        tau_chi[i] = data["tau"] * data["chi_hat"][i]
    d_tau_chi = ext_d(tau_chi, 1)
    resid = np.empty((d, d), dtype=object)
    for i in range(d):
        for j in range(d):
            resid[i, j] = star_Dk[i, j] - (0.5 * F[i, j] - d_tau_chi[i, j])
    g0 = values(mj.g)
    g0_inv = values(mj.g_inv)
    return frobenius_norm(values(resid) / np.sqrt(2.0), g0, g0_inv, "dd")


def hypercr_identities_at(W: WeylStructure3, point, kappa_field=None):
    """Residuals of D^B kappa = -1/2 *_B F^B and kappa^2 = scal^B / 6."""
    kap = kappa_field if kappa_field is not None else W.known_kappa
    if kap is None:
        raise ValueError(f"space {W.name!r} has no known twist field")
    order = 1
    mj = metric_at(W.g, point, order)
    w = W.omega.component_jets(point, order)
    k_jet = kap.eval_jet(point, order)
    d = W.chart.dim
    Dk = np.empty((d,), dtype=object)
    k0 = k_jet.truncate(0)
    for i in range(d):
        Dk[i] = jets.jet_partial_derivative(k_jet, i) - k0 * w[i].truncate(0)
    F = faraday_at(W.omega, point, 0)
    starF = hodge_star(F, mj.truncated(0), 2)
    resid1_arr = values(Dk) + 0.5 * values(starF)
    g0 = values(mj.g)
    g0_inv = values(mj.g_inv)
    resid1 = frobenius_norm(resid1_arr, g0, g0_inv, "d")
    scal = curvature_report_at(W.g, W.omega, point, 2).scal
    resid2 = abs(float(k_jet.value) ** 2 - scal / 6.0)
    return resid1, resid2


def axial_harmonic_residual_at(V_field, point) -> float:
    """|(rho V_rho)_rho + rho V_etaeta| for a field V(rho, eta, ...)."""
    rho = point[0]
    j = V_field.eval_jet(point, 2)
    n = j.spec.n_vars
    e_rho = tuple(1 if k == 0 else 0 for k in range(n))
    e_rho2 = tuple(2 if k == 0 else 0 for k in range(n))
    e_eta2 = tuple(2 if k == 1 else 0 for k in range(n))
    V_r = jets.derivative_extract(j, e_rho)
    V_rr = jets.derivative_extract(j, e_rho2)
    V_ee = jets.derivative_extract(j, e_eta2)
    return abs(V_r + rho * (V_rr + V_ee))


def scal_field(W: WeylStructure3) -> LambdaField:
    """Trivialized scal^B of D^B as a field (derivative depth 2)."""
    base_depth = max(W.g.derivative_depth, W.omega.derivative_depth)

    def fn(point, order):
        return scalar_curvature_jet(W.g, W.omega, point, order)

    return LambdaField(W.chart, fn, depth=base_depth + 2, name="scal")


def star_faraday_field(W: WeylStructure3) -> list:
    """Components of *_B F^B = *_B d(omega_B) as fields (depth 1)."""
    base_depth = max(W.g.derivative_depth, W.omega.derivative_depth)

    def make(i):
        def fn(point, order):
            mj = metric_at(W.g, point, order)
            F = faraday_at(W.omega, point, order)
            return hodge_star(F, mj, 2)[i]

        return LambdaField(W.chart, fn, depth=base_depth + 1, name=f"starF{i}")

    return [make(i) for i in range(W.chart.dim)]
