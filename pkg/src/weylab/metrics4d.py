"""Assembly of 4D metrics over Einstein-Weyl bases, and their diagnostics.

Every bundle lives on a product chart (base coords..., t) with volume
orientation BASE_ORIENTATION * FIBER_ORIENTATION * dx^1^dx^2^dx^3^dt.  The
generic shape is

    g = phi * g_B + psi * eta (x) eta,      eta = eta_t dt + eta_i dx^i,

with phi, psi scalar fields and eta a fiber 1-form; each construction picks
its own (phi, psi, eta):

    monopole builds ("w" gauge)   phi = w,  psi = 1/w,        eta = dt + A
    Hitchin-LeBrun filling        phi = w/t^2, psi = 1/(w t^2),
                                  w = 1 - t^2 scal/6, eta = dt + t omega
                                        - t^2/2 *_B F^B
    hyperCR filling               same with w = 1 + 2 t kappa,
                                  eta = dt + t omega
    scalar-flat Kaehler           phi = rho - 2 t kappa, psi = 1/phi,
                                  eta = dt - t omega + 2 t tau chi + Phi

Diagnostics (Einstein residual, SD/ASD Weyl norms, conformal-submersion and
skew-selfduality residuals, inverse-construction recovery, complex-structure
residuals) are computed from jets of the bundle metric alone.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass, field as dc_field

import numpy as np

from . import jets
from .charts import Chart, ExprField, FormField, LambdaField, MetricField
from .curvature import christoffel_jets, curvature_report_at, frobenius_norm
from .einstein_weyl import WeylStructure3, scal_field, sfgc_fields, star_faraday_field
from .monopoles import (
    AbelianMonopole,
    AffineMonopole,
    GeneralMonopole,
    MonopoleError,
    ProjectiveMonopole,
)
from .orientation import bundle_orientation
from .tensors import (
    MetricJets,
    as_jet,
    ext_d,
    hodge_star,
    metric_at,
    trunc_array,
    two_form_split,
    values,
)

__all__ = [
    "Metric4Bundle",
    "DiagnosticsAt",
    "assemble_from_monopole",
    "hitchin_lebrun_metric",
    "theorem_ix_metric",
    "explicit_einstein_hypercomplex_family",
    "sfk_metric",
    "sfk_linear_residual_at",
    "einstein_selfdual_report_at",
    "submersion_residuals_at",
    "jones_tod_extract_at",
    "complex_structure_checks_at",
    "ix_projective_agreement_at",
    "EINSTEIN_SCAL",
]

# Every filling metric (hitchin-lebrun / theorem-ix builds) is Einstein with
# this scalar curvature in its own gauge (the fibre-coordinate normalization).
EINSTEIN_SCAL = -12.0


@dataclass
class Metric4Bundle:
    chart: Chart
    g: MetricField
    base: WeylStructure3
    construction: str
    monopole: object = None
    params: dict = dc_field(default_factory=dict)

    @property
    def dim(self):
        return self.chart.dim

    def sample(self, n, seed, margin=None):
        from .charts import sample_points

        return sample_points(self.chart, n, seed, margin)


@dataclass
class DiagnosticsAt:
    einstein_residual: float = math.nan
    scal: float = math.nan
    asd_weyl_norm: float = math.nan
    sd_weyl_norm: float = math.nan
    conformal_killing_residual: float = math.nan
    legendrian_residual: float = math.nan
    f0_sd_residual: float = math.nan
    recovered_base_mismatch: float = math.nan
    nijenhuis_residual: float = math.nan
    kahler_residual: float = math.nan


def _product_chart(W: WeylStructure3, t_domain) -> Chart:
    names = list(W.chart.coord_names) + ["t"]
    domain = dict(W.chart.sample_domain)
    domain["t"] = list(t_domain)
    chart = Chart(names, domain, complex_pair=W.chart.complex_pair)
    chart.exclusions.extend(W.chart.exclusions)
    return chart


def _lift(chart4: Chart, base_field):
    """A base field viewed on the product chart (no t dependence)."""

    def fn(point, order):
        return jets.embed_jet(base_field.eval_jet(tuple(point[:-1]), order), chart4.dim)

    return LambdaField(chart4, fn, depth=base_field.derivative_depth, name="lift")


def _build_bundle(W, chart4, phi_fn, psi_fn, eta_fns, construction, monopole=None, params=None):
    """g = phi g_B + psi eta (x) eta on the product chart."""
    d = W.chart.dim
    gB = [[_lift(chart4, W.g.component(i, j)) for j in range(d)] for i in range(d)]
    depth = max(
        W.g.derivative_depth,
        max(f.derivative_depth for f in eta_fns.values()),
    )

    def comp(i, j):
        def fn(point, order):
            phi = phi_fn(point, order)
            psi = psi_fn(point, order)
            ei = eta_fns[i].eval_jet(point, order)
            ej = eta_fns[j].eval_jet(point, order)
            out = psi * ei * ej
            if i < d and j < d:
                out = out + phi * gB[i][j].eval_jet(point, order)
            return out

        return LambdaField(chart4, fn, depth=depth, name=f"g{i}{j}")

    comps = {(i, j): comp(i, j) for i in range(d + 1) for j in range(i, d + 1)}
    g4 = MetricField(chart4, comps, orientation_sign=bundle_orientation() * W.g.orientation_sign)
    return Metric4Bundle(
        chart4, g4, W, construction, monopole=monopole, params=dict(params or {})
    )


def _const_eta(chart4, spatial_fields, t_value=1.0):
    d = chart4.dim - 1
    out = {}
    for i in range(d):
        out[i] = spatial_fields[i]
    from .charts import ConstField

    out[d] = ConstField(chart4, t_value)
    return out


def _monopole_wA_fields(W, m, chart4):
    """(w, A_i) on the product chart for each monopole variant."""
    d = W.chart.dim
    t_index = d
    from .charts import ConstField

    if isinstance(m, AbelianMonopole):
        w = _lift(chart4, m.w)
        A = [_lift(chart4, m.A.component((i,))) for i in range(d)]
        return w, A
    if isinstance(m, (AffineMonopole, ProjectiveMonopole)):
        if isinstance(m, AffineMonopole):
            ws = [m.w0, m.w1]
            As = [m.A0, m.A1]
        else:
            ws = [m.w0, m.w1, m.w2]
            As = [m.A0, m.A1, m.A2]
        ws4 = [_lift(chart4, x) for x in ws]
        As4 = [[_lift(chart4, A.component((i,))) for i in range(d)] for A in As]

        def w_fn(point, order):
            t = jets.variable(jets.JetSpec(chart4.dim, order), t_index, point[t_index])
            acc = ws4[0].eval_jet(point, order)
            tp = t
            for k in range(1, len(ws4)):
                acc = acc + tp * ws4[k].eval_jet(point, order)
                tp = tp * t
            return acc

        w = LambdaField(chart4, w_fn, depth=max(x.derivative_depth for x in ws4))

        def A_fn(i):
            def fn(point, order):
                t = jets.variable(jets.JetSpec(chart4.dim, order), t_index, point[t_index])
                acc = As4[0][i].eval_jet(point, order)
                tp = t
                for k in range(1, len(As4)):
                    acc = acc + tp * As4[k][i].eval_jet(point, order)
                    tp = tp * t
                return acc

            return LambdaField(chart4, fn, depth=max(A[i].derivative_depth for A in As4))

        A = [A_fn(i) for i in range(d)]
        return w, A
    if isinstance(m, GeneralMonopole):
        w = m.w
        A = [m.A.component((i,)) for i in range(d)]
        return w, A
    raise MonopoleError(f"cannot assemble from {type(m).__name__}")


def assemble_from_monopole(W: WeylStructure3, m, t_domain=(0.2, 1.0), gauge="w") -> Metric4Bundle:
    """Metric of the inverse construction, by default in the gauge in which
    the flat-space abelian point monopole gives the Ricci-flat metric:
    g = w g_B + w^{-1} (dt + A)^2.  ``gauge="base"`` gives g_B + w^{-2}(...)^2.
    """
    chart4 = _product_chart(W, t_domain)
    w, A = _monopole_wA_fields(W, m, chart4)
    probes = []
    for p in W.sample(10, seed=17):
        for t in np.linspace(t_domain[0], t_domain[1], 5):
            probes.append(w.eval_jet(tuple(p) + (float(t),), 0).value)
    if min(abs(v) for v in probes) < 1e-6 or min(probes) * max(probes) < 0:
        raise MonopoleError("w vanishes on the requested (x, t) domain; the assembled metric would degenerate")
    if gauge == "w":
        phi_fn = lambda p, o: w.eval_jet(p, o)
        psi_fn = lambda p, o: 1.0 / w.eval_jet(p, o)
    elif gauge == "base":
        from .charts import ConstField

        one = ConstField(chart4, 1.0)
        phi_fn = lambda p, o: one.eval_jet(p, o)
        psi_fn = lambda p, o: 1.0 / (w.eval_jet(p, o) ** 2)
    else:
        raise ValueError(f"unknown gauge {gauge!r}")
    eta = _const_eta(chart4, A)
    chart4.exclusions.append(LambdaField(chart4, lambda p, o: w.eval_jet(p, o), name="w"))
    return _build_bundle(
        W, chart4, phi_fn, psi_fn, eta, "monopole", monopole=m, params={"gauge": gauge}
    )


def _filling_bundle(W, w4, A_fields, construction, t_domain, params):
    """g = t^{-2} ( w g_B + w^{-1} (dt + A)^2 )."""
    chart4 = _product_chart(W, t_domain)
    t_index = chart4.dim - 1

    def tj(point, order):
        return jets.variable(jets.JetSpec(chart4.dim, order), t_index, point[t_index])

    wf = w4(chart4)
    A = A_fields(chart4)

    def phi_fn(p, o):
        t = tj(p, o)
        return wf.eval_jet(p, o) / (t * t)

    def psi_fn(p, o):
        t = tj(p, o)
        return 1.0 / (wf.eval_jet(p, o) * t * t)

    eta = _const_eta(chart4, A)
    chart4.exclusions.append(ExprField(chart4, "t"))
    chart4.exclusions.append(LambdaField(chart4, lambda p, o: wf.eval_jet(p, o), name="w"))
    return _build_bundle(W, chart4, phi_fn, psi_fn, eta, construction, params=params)


def _default_t_domain(W, first_singularity, cap=1.2, seed=19):
    """[0.1, 0.9] of the first fiber singularity, probed over base samples."""
    t_star = cap / 0.9
    for p in W.sample(10, seed):
        s = first_singularity(p)
        if s is not None and s > 0:
            t_star = min(t_star, s)
    return (0.1 * t_star, 0.9 * t_star)


def hitchin_lebrun_metric(W: WeylStructure3, t_domain=None) -> Metric4Bundle:
    """The explicit filling metric of an arbitrary Einstein-Weyl space:
    g = t^{-2}[ (1 - t^2 s/6) g_B + (1 - t^2 s/6)^{-1}
                 (dt + t omega_B - 1/2 t^2 *_B F^B)^2 ],  s = scal^B."""
    scal = scal_field(W)
    starF = star_faraday_field(W)
    if t_domain is None:

        def sing(p):
            s = scal.eval_jet(p, 0).value
            return math.sqrt(6.0 / s) if s > 1e-9 else None

        t_domain = _default_t_domain(W, sing)
    d = W.chart.dim

    def w4(chart4):
        s4 = _lift(chart4, scal)

        def fn(p, o):
            t = jets.variable(jets.JetSpec(chart4.dim, o), d, p[d])
            return 1.0 - t * t * s4.eval_jet(p, o) / 6.0

        return LambdaField(chart4, fn, depth=s4.derivative_depth, name="1-t^2 s/6")

    def A_fields(chart4):
        om4 = [_lift(chart4, W.omega.component((i,))) for i in range(d)]
        sF4 = [_lift(chart4, f) for f in starF]

        def make(i):
            def fn(p, o):
                t = jets.variable(jets.JetSpec(chart4.dim, o), d, p[d])
                return t * om4[i].eval_jet(p, o) - 0.5 * t * t * sF4[i].eval_jet(p, o)

            return LambdaField(
                chart4, fn, depth=max(om4[i].derivative_depth, sF4[i].derivative_depth)
            )

        return [make(i) for i in range(d)]

    return _filling_bundle(W, w4, A_fields, "hitchin-lebrun", t_domain, {})


def theorem_ix_metric(W: WeylStructure3, t_domain=None) -> Metric4Bundle:
    """Filling metric of a hyperCR space with twist kappa:
    g = t^{-2}[ (1 + 2 t kappa) g_B + (1 + 2 t kappa)^{-1} (dt + t omega)^2 ]."""
    if W.known_kappa is None:
        raise ValueError(f"theorem-ix construction needs a known twist; {W.name!r} has none")
    kappa = W.known_kappa
    if t_domain is None:

        def sing(p):
            k = kappa.eval_jet(p, 0).value
            return -0.5 / k if k < -1e-9 else None

        t_domain = _default_t_domain(W, sing)
    d = W.chart.dim

    def w4(chart4):
        k4 = _lift(chart4, kappa)

        def fn(p, o):
            t = jets.variable(jets.JetSpec(chart4.dim, o), d, p[d])
            return 1.0 + 2.0 * t * k4.eval_jet(p, o)

        return LambdaField(chart4, fn, depth=k4.derivative_depth, name="1+2t kappa")

    def A_fields(chart4):
        om4 = [_lift(chart4, W.omega.component((i,))) for i in range(d)]

        def make(i):
            def fn(p, o):
                t = jets.variable(jets.JetSpec(chart4.dim, o), d, p[d])
                return t * om4[i].eval_jet(p, o)

            return LambdaField(chart4, fn, depth=om4[i].derivative_depth)

        return [make(i) for i in range(d)]

    return _filling_bundle(W, w4, A_fields, "theorem-ix", t_domain, {})


def explicit_einstein_hypercomplex_family(h: str, t_domain=None) -> Metric4Bundle:
    """The closed-form Einstein + hypercomplex family over hypercr-toda(h):
    g = t^{-2}[ H (abs2(z+h) g_S2 + dz^2) + H^{-1} (dt + t omega_B)^2 ],
    H = 1 - 2 im(h) t / abs2(z+h).  Generic h has no continuous symmetries.
    """
    from .catalog import LAM2, make_catalog_space

    W = make_catalog_space("hypercr-toda", {"h": h})
    a = f"abs2(z + ({h}))"
    H = f"(1 - 2*im({h})*t/({a}))"
    wz = f"(-(2*z + 2*re({h}))/({a}))"
    if t_domain is None:
        probe = ExprField(W.chart, f"im({h})/({a})")
        t_star = 1.4
        for p in W.sample(10, seed=23):
            k = probe.eval_jet(p, 0).value
            if k > 1e-9:
                t_star = min(t_star, 0.5 / k)
        t_domain = (0.1 * t_star, 0.85 * t_star)
    chart4 = _product_chart(W, t_domain)
    comps = {
        (0, 0): ExprField(chart4, f"{H}*({a})*{LAM2}/t^2"),
        (1, 1): ExprField(chart4, f"{H}*({a})*{LAM2}/t^2"),
        (2, 2): ExprField(chart4, f"({H} + (t*{wz})^2/{H})/t^2"),
        (2, 3): ExprField(chart4, f"({wz})/({H}*t)"),
        (3, 3): ExprField(chart4, f"1/({H}*t^2)"),
    }
    g4 = MetricField(chart4, comps, orientation_sign=bundle_orientation() * W.g.orientation_sign)
    chart4.exclusions.append(ExprField(chart4, "t"))
    chart4.exclusions.append(ExprField(chart4, H))
    return Metric4Bundle(chart4, g4, W, "hypercomplex-einstein", params={"h": h})


def sfk_metric(W: WeylStructure3, chi: FormField, rho, Phi: FormField, t_domain=None) -> Metric4Bundle:
    """Scalar-flat Kaehler metric from a shear-free geodesic congruence.

    The fiber coordinate t is the trivialized affine section mu_t^{-1}
    (increasing along the fibres; eta(d/dt) = +1, keeping the submersion
    orientation coherent with the chart orientation):

        g = (rho - 2 t kappa) g_B + eta^2 / (rho - 2 t kappa),
        eta = dt - t omega + 2 t tau chi + Phi.
    """
    tau_f, kappa_f = sfgc_fields(W, chi)
    chi_unit = _unit_congruence_fields(W, chi)
    if t_domain is None:

        def sing(p):
            k = kappa_f.eval_jet(p, 0).value
            r = rho.eval_jet(p, 0).value
            return r / (2.0 * k) if k * r > 1e-9 else None

        t_domain = _default_t_domain(W, sing, cap=0.9)
    chart4 = _product_chart(W, t_domain)
    d = W.chart.dim
    t_index = d
    tau4 = _lift(chart4, tau_f)
    kappa4 = _lift(chart4, kappa_f)
    rho4 = _lift(chart4, rho)
    om4 = [_lift(chart4, W.omega.component((i,))) for i in range(d)]
    chi4 = [_lift(chart4, c) for c in chi_unit]
    Phi4 = [_lift(chart4, Phi.component((i,))) for i in range(d)]

    def tj(p, o):
        return jets.variable(jets.JetSpec(chart4.dim, o), t_index, p[t_index])

    def factor_fn(p, o):
        t = tj(p, o)
        return rho4.eval_jet(p, o) - 2.0 * t * kappa4.eval_jet(p, o)

    def psi_fn(p, o):
        return 1.0 / factor_fn(p, o)

    def eta_i(i):
        def fn(p, o):
            t = tj(p, o)
            return (
                -t * om4[i].eval_jet(p, o)
                + 2.0 * t * tau4.eval_jet(p, o) * chi4[i].eval_jet(p, o)
                + Phi4[i].eval_jet(p, o)
            )

        return LambdaField(chart4, fn, depth=max(tau4.derivative_depth, 1))

    from .charts import ConstField

    eta = {i: eta_i(i) for i in range(d)}
    eta[d] = ConstField(chart4, 1.0)
    chart4.exclusions.append(LambdaField(chart4, factor_fn, depth=tau4.derivative_depth, name="factor"))
    bundle = _build_bundle(W, chart4, factor_fn, psi_fn, eta, "sfk", params={})
    bundle.params["chi"] = chi
    return bundle


def _unit_congruence_fields(W: WeylStructure3, chi: FormField):
    """Components of chi normalized to unit g_B-length, as base fields."""
    from .einstein_weyl import _unit_one_form_jets

    def make(i):
        def fn(point, order):
            chi_hat, _ = _unit_one_form_jets(W, chi, point, order)
            return chi_hat[i]

        return LambdaField(W.chart, fn, depth=chi.derivative_depth, name=f"chi{i}")

    return [make(i) for i in range(W.chart.dim)]


def sfk_linear_residual_at(W: WeylStructure3, chi: FormField, rho, Phi: FormField, point, order=0) -> float:
    """Residual of *_B(D^B rho + 2 tau chi rho + 2 kappa Phi)
    = d^B Phi + 2 tau chi ^ Phi (rho weight -2, Phi weight -1)."""
    from .monopoles import _form2_norm
    from .tensors import wedge

    d = W.chart.dim
    data_order = order + 1
    mj = metric_at(W.g, point, order)
    omega = W.omega.component_jets(point, data_order)
    rho_j = rho.eval_jet(point, data_order)
    Phi_j = Phi.component_jets(point, data_order)
    tau_f, kappa_f = sfgc_fields(W, chi)
    tau = tau_f.eval_jet(point, order)
    kappa = kappa_f.eval_jet(point, order)
    chi_unit = _unit_congruence_fields(W, chi)
    chi_j = np.array([c.eval_jet(point, order) for c in chi_unit], dtype=object)
    om_lo = trunc_array(omega, order)
    rho_lo = rho_j.truncate(order)
    Phi_lo = trunc_array(Phi_j, order)
    lhs = np.empty((d,), dtype=object)
    for i in range(d):
        lhs[i] = (
            jets.jet_partial_derivative(rho_j, i)
            - 2.0 * rho_lo * om_lo[i]
            + 2.0 * tau * chi_j[i] * rho_lo
            + 2.0 * kappa * Phi_lo[i]
        )
    dPhi = ext_d(Phi_j, 1)
    omega_wedge_Phi = wedge(om_lo, Phi_lo, 1, 1)
    tau_chi = np.empty((d,), dtype=object)
    for i in range(d):
        tau_chi[i] = tau * chi_j[i]
    rhs = np.empty((d, d), dtype=object)
    tcP = wedge(tau_chi, Phi_lo, 1, 1)
    for i in range(d):
        for j in range(d):
            rhs[i, j] = dPhi[i, j] - omega_wedge_Phi[i, j] + 2.0 * tcP[i, j]
    star_lhs = hodge_star(lhs, mj, 1)
    resid = np.empty((d, d), dtype=object)
    for i in range(d):
        for j in range(d):
            resid[i, j] = star_lhs[i, j] - rhs[i, j]
    return _form2_norm(resid, mj.truncated(order))


# ---------------------------------------------------------------------------
# diagnostics
# ---------------------------------------------------------------------------


def einstein_selfdual_report_at(M: Metric4Bundle, point, order=2) -> DiagnosticsAt:
    rep = curvature_report_at(M.g, None, point, order)
    g0, g0i = rep.metric0, rep.metric0_inv
    einstein = rep.ricci_sym - (rep.scal / 4.0) * g0
    out = DiagnosticsAt()
    out.einstein_residual = frobenius_norm(einstein, g0, g0i, "dd")
    out.scal = rep.scal
    out.sd_weyl_norm = frobenius_norm(rep.weyl_sd, g0, g0i, "dddd")
    out.asd_weyl_norm = frobenius_norm(rep.weyl_asd, g0, g0i, "dddd")
    return out


def _xi_data(M: Metric4Bundle, point, order):
    """Unit vertical vector/coform jets and the minimal-derivative gap.

    Returns dict with xi (vector jets), xi_flat, gamma0 (gap 1-form of
    D^0 relative to the bundle gauge), omega_jt (the Jones-Tod 1-form
    -(*(xi_flat ^ d xi_flat))), all at jet order ``order`` (metric jets are
    taken at order+1).
    """
    n = M.chart.dim
    t = n - 1
    mj = metric_at(M.g, point, order + 1)
    inv_len = 1.0 / jets.sqrt(mj.g[t, t])
    xi = np.empty((n,), dtype=object)
    zero = jets.constant(mj.g[0, 0].spec, 0.0)
    for mu in range(n):
        xi[mu] = inv_len if mu == t else zero
    xi_flat = np.empty((n,), dtype=object)
    for mu in range(n):
        xi_flat[mu] = mj.g[mu, t] * inv_len
    gamma = christoffel_jets(mj)  # order
    xi_lo = trunc_array(xi, order)
    xif_lo = trunc_array(xi_flat, order)
    mj_lo = mj.truncated(order)
    # div xi = d_mu xi^mu + Gamma^mu_{mu nu} xi^nu
    div = None
    for mu in range(n):
        term = jets.jet_partial_derivative(xi[mu], mu)
        for nu in range(n):
            term = term + gamma[mu, mu, nu] * xi_lo[nu]
        div = term if div is None else div + term
    d_xif = ext_d(xi_flat, 1)  # order
    iota_xi_dxif = np.einsum("a,ab->b", xi_lo, d_xif)
    gamma0 = np.empty((n,), dtype=object)
    for mu in range(n):
        gamma0[mu] = -(1.0 / (n - 1)) * div * xif_lo[mu] + as_jet(iota_xi_dxif[mu])
    xi_wedge_dxif = np.einsum("a,bc->abc", xif_lo, d_xif)
    three = np.empty((n, n, n), dtype=object)
    for idx in itertools.product(range(n), repeat=3):
        a, b, c = idx
        three[idx] = (
            xi_wedge_dxif[a, b, c] + xi_wedge_dxif[b, c, a] + xi_wedge_dxif[c, a, b]
        )
    # xi ^ dxi as a 3-form: alt of xi (x) dxi; dxi already antisymmetric, so
    # the cyclic symmetrization above is exactly the wedge.
    omega_jt = hodge_star(three, mj_lo, 3)
    for mu in range(n):
        omega_jt[mu] = -1.0 * omega_jt[mu]
    return {
        "mj": mj,
        "mj_lo": mj_lo,
        "gamma": gamma,
        "xi": xi_lo,
        "xi_flat": xif_lo,
        "xi_hi": xi,
        "xi_flat_hi": xi_flat,
        "gamma0": gamma0,
        "omega_jt": omega_jt,
        "div": div,
    }


def submersion_residuals_at(M: Metric4Bundle, point) -> tuple[float, float]:
    """(conformal_killing_residual, legendrian_residual).

    T = (D^0 [+] D^g) xi: sym0 part vanishes iff the fibration is a
    conformal submersion; the antiselfdual part of alt(T) vanishes iff the
    congruence is Legendrian (nonzero scalar curvature) or triholomorphic
    (vanishing scalar curvature)."""
    n = M.chart.dim
    data = _xi_data(M, point, 0)
    mj = data["mj_lo"]
    gamma = values(data["gamma"])
    xi = values(data["xi"])
    xif = values(data["xi_flat"])
    gamma0 = values(data["gamma0"])
    g0 = values(mj.g)
    g0i = values(mj.g_inv)
    dxi = np.empty((n, n))
    for mu in range(n):
        for lam in range(n):
            dxi[mu, lam] = jets.derivative_extract(
                data["xi_hi"][lam], tuple(1 if v == mu else 0 for v in range(n))
            )
    nabla_xi = dxi + np.einsum("lmn,n->ml", gamma, xi)  # [mu, lambda]
    T = np.einsum("ml,nl->mn", nabla_xi, g0) - np.outer(gamma0, xif)
    sym = 0.5 * (T + T.T)
    sym0 = sym - (np.einsum("mn,mn->", g0i, sym) / n) * g0
    ck = frobenius_norm(sym0, g0, g0i, "dd")
    alt = 0.5 * (T - T.T)
    alt_jets = np.empty((n, n), dtype=object)
    spec0 = mj.g[0, 0].spec.with_order(0)
    for i in range(n):
        for j in range(n):
            alt_jets[i, j] = jets.constant(spec0, alt[i, j])
    _, alt_asd = two_form_split(alt_jets, mj.truncated(0))
    leg = frobenius_norm(values(alt_asd) / math.sqrt(2.0), g0, g0i, "dd")
    return ck, leg


def jones_tod_extract_at(M: Metric4Bundle, point) -> dict:
    """Inverse-construction data at a bundle point.

    Returns the Jones-Tod 1-form value, the minimal-derivative gap, the
    antiselfduality residual of F^0 = d(gap), and the mismatch between the
    recovered base Weyl connection (from the horizontal metric and
    gap + omega_jt restricted to the t-slice) and the provenance base."""
    n = M.chart.dim
    d = n - 1
    data = _xi_data(M, point, 1)
    F0 = ext_d(data["gamma0"], 1)
    F0p, F0m = two_form_split(F0, data["mj_lo"].truncated(0))
    g0 = values(data["mj_lo"].g)
    g0i = values(data["mj_lo"].g_inv)
    f0_sd_residual = frobenius_norm(values(F0m) / math.sqrt(2.0), g0, g0i, "dd")

    # recovered base on the t-slice through this point
    omega_rec4 = np.empty((n,), dtype=object)
    for mu in range(n):
        omega_rec4[mu] = data["gamma0"][mu] + data["omega_jt"][mu]
    h4 = np.empty((n, n), dtype=object)
    mj = data["mj_lo"]
    for i in range(n):
        for j in range(n):
            h4[i, j] = mj.g[i, j] - data["xi_flat"][i] * data["xi_flat"][j]
    h3 = np.empty((d, d), dtype=object)
    om3 = np.empty((d,), dtype=object)
    for i in range(d):
        om3[i] = jets.restrict_jet(omega_rec4[i], d)
        for j in range(d):
            h3[i, j] = jets.restrict_jet(h4[i, j], d)
    from .tensors import jet_matrix_inverse

    h3_inv, det3 = jet_matrix_inverse(h3)
    mj3 = MetricJets(h3, h3_inv, det3, jets.sqrt(det3), M.base.g.orientation_sign)
    gamma_rec = values(christoffel_jets(mj3, om3))
    base_point = tuple(point[:d])
    from .curvature import weyl_connection_coeffs_at

    gamma_true = values(
        weyl_connection_coeffs_at(M.base.g, M.base.omega, base_point, 0).gamma
    )
    mismatch = float(np.max(np.abs(gamma_rec - gamma_true)))
    return {
        "omega_jt": values(data["omega_jt"]),
        "gamma0": values(data["gamma0"]),
        "f0_sd_residual": f0_sd_residual,
        "recovered_base_mismatch": mismatch,
    }


def complex_structure_checks_at(M: Metric4Bundle, chi_base: FormField, point) -> tuple[float, float]:
    """(nijenhuis_residual, kahler_residual) for J built from
    Omega_J = xi ^ chi - *(xi ^ chi)."""
    n = M.chart.dim
    d = n - 1
    order = 1
    data = _xi_data(M, point, order)
    mj = data["mj_lo"]
    xi_flat = data["xi_flat"]
    chi_unit = _unit_congruence_fields(M.base, chi_base)
    base_point = tuple(point[:d])
    chi4 = np.empty((n,), dtype=object)
    spec = xi_flat[0].spec
    for i in range(d):
        chi4[i] = jets.embed_jet(chi_unit[i].eval_jet(base_point, order), n)
    chi4[d] = jets.constant(spec, 0.0)
    # project out the xi component and renormalize (jets)
    ip = as_jet(np.einsum("i,ij,j->", chi4, mj.g_inv, xi_flat))
    for mu in range(n):
        chi4[mu] = chi4[mu] - ip * xi_flat[mu]
    norm2 = as_jet(np.einsum("i,ij,j->", chi4, mj.g_inv, chi4))
    inv_norm = 1.0 / jets.sqrt(norm2)
    for mu in range(n):
        chi4[mu] = chi4[mu] * inv_norm
    from .tensors import wedge

    xc = wedge(xi_flat, chi4, 1, 1)
    star_xc = hodge_star(xc, mj, 2)
    Omega = np.empty((n, n), dtype=object)
    for idx in itertools.product(range(n), repeat=2):
        Omega[idx] = xc[idx] - star_xc[idx]
    J = np.einsum("ln,mn->lm", mj.g_inv, Omega)  # J^l_m
    J0 = values(J)
    JJ = J0 @ J0
    if not np.allclose(JJ, -np.eye(n), atol=1e-8):
        raise ArithmeticError("Omega_J did not square to -1; degenerate congruence data")
    dJ = np.empty((n, n, n))
    for idx in itertools.product(range(n), repeat=2):
        for mu in range(n):
            dJ[(mu,) + idx] = jets.derivative_extract(
                as_jet(J[idx]), tuple(1 if v == mu else 0 for v in range(n))
            )
    N = (
        np.einsum("sm,sln->lmn", J0, dJ)
        - np.einsum("sn,slm->lmn", J0, dJ)
        - np.einsum("ls,msn->lmn", J0, dJ)
        + np.einsum("ls,nsm->lmn", J0, dJ)
    )
    g0 = values(mj.g)
    g0i = values(mj.g_inv)
    nij = frobenius_norm(N, g0, g0i, "udd")
    gamma = values(data["gamma"])
    nablaJ = (
        dJ
        + np.einsum("lms,sn->mln", gamma, J0)
        - np.einsum("smn,ls->mln", gamma, J0)
    )
    kah = frobenius_norm(nablaJ, g0, g0i, "dud")
    return nij, kah


def ix_projective_agreement_at(W: WeylStructure3, point4, t_domain_ix=None) -> float:
    """Pointwise agreement of the hitchin-lebrun metric with the theorem-ix
    metric under the projective fiber change t_old = t/(1 - t kappa).

    The change mixes dt with the base differentials through d(kappa), so the
    comparison pulls the Theorem IX metric back through the full Jacobian.
    """
    if W.known_kappa is None:
        raise ValueError("agreement check needs a hyperCR base with known twist")
    M_x = hitchin_lebrun_metric(W)
    M_ix = theorem_ix_metric(W, t_domain=t_domain_ix or (1e-6, 10.0))
    n = W.chart.dim + 1
    base_point = tuple(point4[:-1])
    t = point4[-1]
    k_jet = W.known_kappa.eval_jet(base_point, 1)
    k = k_jet.value
    denom = 1.0 - t * k
    if abs(denom) < 1e-9:
        raise ArithmeticError("projective change singular at this point")
    t_old = t / denom
    dk = [jets.derivative_extract(k_jet, tuple(1 if v == i else 0 for v in range(n - 1)))
          for i in range(n - 1)]
    Jac = np.eye(n)
    Jac[n - 1, n - 1] = 1.0 / denom**2
    for i in range(n - 1):
        Jac[n - 1, i] = t * t * dk[i] / denom**2
    G_ix = values(metric_at(M_ix.g, base_point + (t_old,), 0).g)
    G_x = values(metric_at(M_x.g, point4, 0).g)
    pulled = Jac.T @ G_ix @ Jac
    return float(np.max(np.abs(pulled - G_x)))
