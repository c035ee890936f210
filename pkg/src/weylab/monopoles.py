"""Monopole-type equations over Einstein-Weyl 3-spaces: residuals and catalog.

Variants and their equations, all with the modified 3D star and with every
density trivialized in the gauge of g_B (weight -1 rule D w = dw - w omega):

    abelian      *_B D^B w = dA
    general      *_B (D^B w + A'w - A w') = dA + A' ^ A        (' = d/dt)
    affine       w = t w1 + w0,  A = t A1 + A0:
                   *_B D^B w1 = dA1
                   *_B (D^B w0 + A1 w0 - A0 w1) = dA0 + A1 ^ A0
    projective   w = t^2 w2 + t w1 + w0,  A likewise:
                   *_B (D^B w2 + A2 w1 - A1 w2)      = dA2 + A2 ^ A1
                   *_B (D^B w1/2 + A2 w0 - A0 w2)    = dA1/2 + A2 ^ A0
                   *_B (D^B w0 + A1 w0 - A0 w1)      = dA0 + A1 ^ A0

The projective system is equivalently the SL(2,R) Bogomolny equation
*_B (D^B + ad A) w = dA + A ^ A under the packing
w = [[w1/2, w0], [-w2, -w1/2]], A = [[A1/2, A0], [-A2, -A1/2]].
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from . import jets
from .charts import Chart, ConstField, ExprField, FormField, LambdaField
from .einstein_weyl import WeylStructure3, scal_field, star_faraday_field
from .curvature import frobenius_norm
from .tensors import ext_d, hodge_star, metric_at, trunc_array, values, zeros_like_spec

__all__ = [
    "AbelianMonopole",
    "AffineMonopole",
    "ProjectiveMonopole",
    "GeneralMonopole",
    "SL2MonopoleData",
    "MonopoleError",
    "monopole_residual_at",
    "sl2_residual_at",
    "sl2_equation_forms",
    "canonical_projective_monopole",
    "make_catalog_monopole",
    "monopole_names",
    "ansatz_reduction_check",
    "affine_gauge_transform",
]


class MonopoleError(ValueError):
    pass


@dataclass
class AbelianMonopole:
    w: object  # scalar field, weight -1 trivialized
    A: FormField
    variant = "abelian"


@dataclass
class AffineMonopole:
    w0: object
    w1: object
    A0: FormField
    A1: FormField
    variant = "affine"


@dataclass
class ProjectiveMonopole:
    w0: object
    w1: object
    w2: object
    A0: FormField
    A1: FormField
    A2: FormField
    variant = "projective"


@dataclass
class GeneralMonopole:
    """(w, A) on a product chart (base coords..., t); A has spatial
    components only."""

    chart4: Chart
    w: object
    A: FormField
    variant = "general"


@dataclass
class SL2MonopoleData:
    """Trace-free 2x2 packing of a projective monopole."""

    w: list  # 2x2 nested list of scalar fields
    A: list  # 2x2 nested list of FormField

    @classmethod
    def from_projective(cls, W: WeylStructure3, m: ProjectiveMonopole) -> "SL2MonopoleData":
        half_w1 = _scaled(W.chart, m.w1, 0.5)
        neg_w2 = _scaled(W.chart, m.w2, -1.0)
        neg_half_w1 = _scaled(W.chart, m.w1, -0.5)
        half_A1 = _scaled_form(m.A1, 0.5)
        neg_A2 = _scaled_form(m.A2, -1.0)
        neg_half_A1 = _scaled_form(m.A1, -0.5)
        return cls(
            w=[[half_w1, m.w0], [neg_w2, neg_half_w1]],
            A=[[half_A1, m.A0], [neg_A2, neg_half_A1]],
        )


def _scaled(chart, field, c):
    return LambdaField(chart, lambda p, o: c * field.eval_jet(p, o), depth=field.derivative_depth)


def _scaled_form(form: FormField, c):
    return FormField(
        form.chart,
        1,
        {idx: _scaled(form.chart, f, c) for idx, f in form.components.items()},
    )


def _db_scalar(w_jet, omega_jets, weight=-1.0):
    """1-form jets of D^B acting on a trivialized weight-w scalar."""
    d = len(omega_jets)
    lo = w_jet.spec.order - 1
    out = np.empty((d,), dtype=object)
    w_lo = w_jet.truncate(lo)
    for i in range(d):
        out[i] = jets.jet_partial_derivative(w_jet, i) + weight * w_lo * omega_jets[i].truncate(lo)
    return out


def _one_form_scale(arr, scalar_jet):
    out = np.empty_like(arr)
    for i in range(len(arr)):
        out[i] = arr[i] * scalar_jet
    return out


def _form2_norm(arr2, mj) -> float:
    g0 = values(mj.g)
    g0_inv = values(mj.g_inv)
    return frobenius_norm(values(arr2) / np.sqrt(2.0), g0, g0_inv, "dd")


def _affine_equation_forms(W: WeylStructure3, m: AffineMonopole, point, order):
    """Jet-valued 2-form residuals (eq for w1, eq for w0)."""
    mj = metric_at(W.g, point, order)
    omega = W.omega.component_jets(point, order + 1)
    w0 = m.w0.eval_jet(point, order + 1)
    w1 = m.w1.eval_jet(point, order + 1)
    A0 = m.A0.component_jets(point, order + 1)
    A1 = m.A1.component_jets(point, order + 1)
    from .tensors import wedge

    Dw1 = _db_scalar(w1, omega)
    R1 = _sub2(hodge_star(Dw1, mj, 1), ext_d(A1, 1))
    lhs0 = _add1(
        _db_scalar(w0, omega),
        _one_form_scale(trunc_array(A1, order), w0.truncate(order)),
        _one_form_scale(trunc_array(A0, order), -1.0 * w1.truncate(order)),
    )
    rhs0 = _add2(ext_d(A0, 1), wedge(trunc_array(A1, order), trunc_array(A0, order), 1, 1))
    R0 = _sub2(hodge_star(lhs0, mj, 1), rhs0)
    return [R1, R0], mj.truncated(order)


def _projective_equation_forms(W: WeylStructure3, m: ProjectiveMonopole, point, order):
    """Jet-valued 2-form residuals (eq for w2, w1, w0) as displayed."""
    from .tensors import wedge

    mj = metric_at(W.g, point, order)
    omega = W.omega.component_jets(point, order + 1)
    w = [m.w0.eval_jet(point, order + 1), m.w1.eval_jet(point, order + 1), m.w2.eval_jet(point, order + 1)]
    A = [
        m.A0.component_jets(point, order + 1),
        m.A1.component_jets(point, order + 1),
        m.A2.component_jets(point, order + 1),
    ]
    wl = [x.truncate(order) for x in w]
    Al = [trunc_array(x, order) for x in A]

    lhs2 = _add1(
        _db_scalar(w[2], omega),
        _one_form_scale(Al[2], wl[1]),
        _one_form_scale(Al[1], -1.0 * wl[2]),
    )
    rhs2 = _add2(ext_d(A[2], 1), wedge(Al[2], Al[1], 1, 1))
    R2 = _sub2(hodge_star(lhs2, mj, 1), rhs2)

    lhs1 = _add1(
        _one_form_scale(_db_scalar(w[1], omega), jets.constant(wl[0].spec, 0.5)),
        _one_form_scale(Al[2], wl[0]),
        _one_form_scale(Al[0], -1.0 * wl[2]),
    )
    rhs1 = _add2(_scale2(ext_d(A[1], 1), 0.5), wedge(Al[2], Al[0], 1, 1))
    R1 = _sub2(hodge_star(lhs1, mj, 1), rhs1)

    lhs0 = _add1(
        _db_scalar(w[0], omega),
        _one_form_scale(Al[1], wl[0]),
        _one_form_scale(Al[0], -1.0 * wl[1]),
    )
    rhs0 = _add2(ext_d(A[0], 1), wedge(Al[1], Al[0], 1, 1))
    R0 = _sub2(hodge_star(lhs0, mj, 1), rhs0)
    return [R2, R1, R0], mj.truncated(order)


def _add1(*arrs):
    out = arrs[0].copy()
    for other in arrs[1:]:
        for i in range(len(out)):
            out[i] = out[i] + other[i]
    return out


def _add2(a, b):
    out = np.empty_like(a)
    for idx in np.ndindex(*a.shape):
        out[idx] = a[idx] + b[idx]
    return out


def _sub2(a, b):
    out = np.empty_like(a)
    for idx in np.ndindex(*a.shape):
        out[idx] = a[idx] - b[idx]
    return out


def _scale2(a, c):
    out = np.empty_like(a)
    for idx in np.ndindex(*a.shape):
        out[idx] = c * a[idx]
    return out


def _general_equation_form(W: WeylStructure3, m: GeneralMonopole, point4, order):
    """The evolution-equation residual 2-form at a point of B x R.

    Spatial exterior derivatives act on the base indices only; dots are
    t-derivatives.  Base-metric jets are embedded into the product ring.
    """
    from .tensors import MetricJets, wedge

    d = W.chart.dim
    t_var = d
    base_point = tuple(point4[:d])
    mj3 = metric_at(W.g, base_point, order)
    # embed base metric data into the 4-variable ring
    g4 = np.empty((d, d), dtype=object)
    gi4 = np.empty((d, d), dtype=object)
    for i in range(d):
        for j in range(d):
            g4[i, j] = jets.embed_jet(mj3.g[i, j], d + 1)
            gi4[i, j] = jets.embed_jet(mj3.g_inv[i, j], d + 1)
    mj4 = MetricJets(g4, gi4, jets.embed_jet(mj3.det, d + 1), jets.embed_jet(mj3.sqrt_det, d + 1), mj3.orientation)
    omega4 = np.array(
        [jets.embed_jet(j, d + 1) for j in W.omega.component_jets(base_point, order + 1)],
        dtype=object,
    )
    w = m.w.eval_jet(point4, order + 1)
    A = np.array([m.A.component((i,)).eval_jet(point4, order + 1) for i in range(d)], dtype=object)
    w_dot = jets.jet_partial_derivative(w, t_var)
    A_dot = np.array([jets.jet_partial_derivative(a, t_var) for a in A], dtype=object)
    w_lo = w.truncate(order)
    A_lo = np.array([a.truncate(order) for a in A], dtype=object)
    Dw = _db_scalar(w, omega4)  # spatial components: index over 0..d-1
    lhs = np.empty((d,), dtype=object)
    for i in range(d):
        lhs[i] = Dw[i] + A_dot[i] * w_lo - A_lo[i] * w_dot
    # spatial exterior derivative of A
    dA = np.empty((d, d), dtype=object)
    for i in range(d):
        for j in range(d):
            dA[i, j] = jets.jet_partial_derivative(A[j], i) - jets.jet_partial_derivative(A[i], j)
    AdotA = wedge(A_dot, A_lo, 1, 1)
    rhs = _add2(dA, AdotA)
    return _sub2(hodge_star(lhs, mj4, 1), rhs), mj4.truncated(order)


def monopole_residual_at(W: WeylStructure3, m, point, order=0, t=None) -> dict:
    """Named residual norms of the monopole equations at a point.

    For the general variant ``point`` is the 4D point (or pass the base
    point plus ``t``).
    """
    if isinstance(m, AbelianMonopole):
        mj = metric_at(W.g, point, order)
        omega = W.omega.component_jets(point, order + 1)
        w = m.w.eval_jet(point, order + 1)
        A = m.A.component_jets(point, order + 1)
        R = _sub2(hodge_star(_db_scalar(w, omega), mj, 1), ext_d(A, 1))
        return {"abelian": _form2_norm(R, mj.truncated(order))}
    if isinstance(m, AffineMonopole):
        (R1, R0), mj = _affine_equation_forms(W, m, point, order)
        return {"affine_w1": _form2_norm(R1, mj), "affine_w0": _form2_norm(R0, mj)}
    if isinstance(m, ProjectiveMonopole):
        (R2, R1, R0), mj = _projective_equation_forms(W, m, point, order)
        return {
            "projective_w2": _form2_norm(R2, mj),
            "projective_w1": _form2_norm(R1, mj),
            "projective_w0": _form2_norm(R0, mj),
        }
    if isinstance(m, GeneralMonopole):
        point4 = tuple(point) if t is None else tuple(point) + (float(t),)
        if len(point4) != W.chart.dim + 1:
            raise MonopoleError("general variant needs a (base, t) point")
        R, mj4 = _general_equation_form(W, m, point4, order)
        return {"general": _form2_norm(R, mj4)}
    raise MonopoleError(f"unknown monopole data {type(m).__name__}")


def sl2_equation_forms(W: WeylStructure3, s: SL2MonopoleData, point, order=0):
    """Entrywise 2-form residuals of *_B(D^B w + [A, w]) - (dA + A ^ A)."""
    from .tensors import wedge

    mj = metric_at(W.g, point, order)
    omega = W.omega.component_jets(point, order + 1)
    d = W.chart.dim
    w = [[s.w[a][b].eval_jet(point, order + 1) for b in range(2)] for a in range(2)]
    A = [[s.A[a][b].component_jets(point, order + 1) for b in range(2)] for a in range(2)]
    w_lo = [[w[a][b].truncate(order) for b in range(2)] for a in range(2)]
    A_lo = [[trunc_array(A[a][b], order) for b in range(2)] for a in range(2)]
    out = [[None, None], [None, None]]
    for a in range(2):
        for b in range(2):
            lhs = _db_scalar(w[a][b], omega)
            for c in range(2):
                lhs = _add1(
                    lhs,
                    _one_form_scale(A_lo[a][c], w_lo[c][b]),
                    _one_form_scale(A_lo[c][b], -1.0 * w_lo[a][c]),
                )
            rhs = ext_d(A[a][b], 1)
            for c in range(2):
                rhs = _add2(rhs, wedge(A_lo[a][c], A_lo[c][b], 1, 1))
            out[a][b] = _sub2(hodge_star(lhs, mj, 1), rhs)
    return out, mj.truncated(order)


def sl2_residual_at(W: WeylStructure3, s, point, order=0) -> float:
    if isinstance(s, ProjectiveMonopole):
        s = SL2MonopoleData.from_projective(W, s)
    forms, mj = sl2_equation_forms(W, s, point, order)
    return max(_form2_norm(forms[a][b], mj) for a in range(2) for b in range(2))


def canonical_projective_monopole(W: WeylStructure3) -> ProjectiveMonopole:
    """The canonical SL(2,R) monopole of an Einstein-Weyl space, trivialized:
    w0 = 1, w1 = 0, w2 = -scal/6, A0 = 0, A1 = omega_B, A2 = -1/2 *_B F^B.

    Its residual is the differential Bianchi identity of the Weyl
    connection, so it vanishes on every Einstein-Weyl space.
    """
    chart = W.chart
    scal = scal_field(W)
    starF = star_faraday_field(W)

    def w2_fn(point, order):
        return (-1.0 / 6.0) * scal.eval_jet(point, order)

    w2 = LambdaField(chart, w2_fn, depth=scal.derivative_depth, name="-scal/6")
    A2 = FormField(
        chart,
        1,
        {
            (i,): LambdaField(
                chart,
                (lambda i_: lambda p, o: -0.5 * starF[i_].eval_jet(p, o))(i),
                depth=starF[i].derivative_depth,
            )
            for i in range(chart.dim)
        },
    )
    zero_form = FormField.zero_form(chart)
    return ProjectiveMonopole(
        w0=ConstField(chart, 1.0),
        w1=ConstField(chart, 0.0),
        w2=w2,
        A0=zero_form,
        A1=W.omega,
        A2=A2,
    )


def ansatz_reduction_check(W: WeylStructure3, m, point, order=0) -> float:
    """Max discrepancy between the t-graded coefficients of the evolution
    residual of polynomial-in-t data and the displayed affine/projective
    equation residuals (scaled by their t-binomial factors)."""
    from .tensors import wedge

    if isinstance(m, AffineMonopole):
        ws = [m.w0, m.w1]
        As = [m.A0, m.A1]
        displayed, mj = _affine_equation_forms(W, m, point, order)
        displayed = displayed[::-1]  # grade order: t^0, t^1
        factors = [1.0, 1.0]
    elif isinstance(m, ProjectiveMonopole):
        ws = [m.w0, m.w1, m.w2]
        As = [m.A0, m.A1, m.A2]
        displayed, mj = _projective_equation_forms(W, m, point, order)
        displayed = displayed[::-1]  # grade order: t^0, t^1, t^2
        factors = [1.0, 2.0, 1.0]
    else:
        raise MonopoleError("reduction check applies to affine/projective data")
    omega = W.omega.component_jets(point, order + 1)
    d = W.chart.dim
    deg = len(ws) - 1
    w_jets = [w.eval_jet(point, order + 1) for w in ws]
    A_jets = [A.component_jets(point, order + 1) for A in As]
    w_lo = [w.truncate(order) for w in w_jets]
    A_lo = [trunc_array(A, order) for A in A_jets]
    spec_lo = w_lo[0].spec

    # LHS(t) = sum_k t^k [ D^B w_k + sum_{l+k'-1=k} (l-k') A_l w_k' ]
    n_coeff = 2 * deg + 1
    lhs = [zeros_like_spec(spec_lo, (d,)) for _ in range(n_coeff)]
    rhs = [zeros_like_spec(spec_lo, (d, d)) for _ in range(n_coeff)]
    for k in range(deg + 1):
        lhs[k] = _add1(lhs[k], _db_scalar(w_jets[k], omega))
        rhs[k] = _add2(rhs[k], ext_d(A_jets[k], 1))
    for l in range(deg + 1):
        for kp in range(deg + 1):
            grade = l + kp - 1
            if grade < 0 or l == kp:
                continue
            coeff = float(l - kp)
            lhs[grade] = _add1(lhs[grade], _one_form_scale(_scale_1form(A_lo[l], coeff), w_lo[kp]))
            if l > 0:
                rhs[grade] = _add2(rhs[grade], _scale2(wedge(A_lo[l], A_lo[kp], 1, 1), float(l)))
    worst = 0.0
    for grade in range(n_coeff):
        general_form = _sub2(hodge_star(lhs[grade], mj, 1), rhs[grade])
        expected = (
            _scale2(displayed[grade], factors[grade]) if grade <= deg else zeros_like_spec(spec_lo, (d, d))
        )
        diff = _sub2(general_form, expected)
        worst = max(worst, max(j.max_abs() for j in diff.reshape(-1)))
    return worst


def _scale_1form(arr, c):
    out = np.empty_like(arr)
    for i in range(len(arr)):
        out[i] = c * arr[i]
    return out


def affine_gauge_transform(W: WeylStructure3, m: AffineMonopole, a_src: str, b_src: str) -> AffineMonopole:
    """New affine data for the coordinate change t~ = a t + b (a, b basic):
    w1~ = w1, w0~ = a w0 - b w1, A1~ = A1 - a^{-1} da, A0~ = a A0 - b A1~ - db.
    Solutions map to solutions."""
    chart = W.chart
    a = ExprField(chart, a_src)
    b = ExprField(chart, b_src)

    def w0_fn(p, o):
        return a.eval_jet(p, o) * m.w0.eval_jet(p, o) - b.eval_jet(p, o) * m.w1.eval_jet(p, o)

    w0t = LambdaField(chart, w0_fn, depth=max(m.w0.derivative_depth, m.w1.derivative_depth))

    def A1_fn(i):
        def fn(p, o):
            aj = a.eval_jet(p, o + 1)
            da_i = jets.jet_partial_derivative(aj, i)
            return m.A1.component((i,)).eval_jet(p, o) - da_i / aj.truncate(o)

        return fn

    A1t = FormField(
        chart,
        1,
        {(i,): LambdaField(chart, A1_fn(i), depth=m.A1.derivative_depth + 1) for i in range(chart.dim)},
    )

    def A0_fn(i):
        def fn(p, o):
            bj = b.eval_jet(p, o + 1)
            db_i = jets.jet_partial_derivative(bj, i)
            return (
                a.eval_jet(p, o) * m.A0.component((i,)).eval_jet(p, o)
                - bj.truncate(o) * A1t.component((i,)).eval_jet(p, o)
                - db_i
            )

        return fn

    A0t = FormField(
        chart,
        1,
        {(i,): LambdaField(chart, A0_fn(i), depth=m.A0.derivative_depth + 2) for i in range(chart.dim)},
    )
    return AffineMonopole(w0=w0t, w1=m.w1, A0=A0t, A1=A1t)


# ---------------------------------------------------------------------------
# catalog monopoles
# ---------------------------------------------------------------------------


def _gibbons_hawking(W: WeylStructure3, params):
    if W.name != "flat-r3":
        raise MonopoleError("gibbons-hawking requires the flat-r3 base")
    mass = float(params.get("mass", 1.0))
    const = float(params.get("constant", 1.0))
    chart = W.chart
    r = "sqrt(x^2+y^2+z^2)"
    w = ExprField(chart, f"{const!r} + {mass!r}/(2*{r})")
    # Dirac-type potential, regular away from the negative z-axis.  With the
    # modified star the sign is opposite to the textbook curl A = +grad w.
    pref = f"({mass!r}/2)*(1 - z/{r})/(x^2+y^2)"
    A = FormField(
        chart,
        1,
        {
            (0,): ExprField(chart, f"{pref}*y"),
            (1,): ExprField(chart, f"-({pref})*x"),
        },
    )
    chart.exclusions.append(ExprField(chart, "x^2+y^2"))
    chart.sample_domain.update({"x": [0.25, 1.0], "y": [0.25, 1.0], "z": [0.2, 0.9]})
    return AbelianMonopole(w=w, A=A)


def _strachan(W: WeylStructure3, params):
    if W.name != "hypercr-toda":
        raise MonopoleError("strachan requires a hypercr-toda base")
    f = str(params.get("f", "1"))
    h = W.params["h"]
    chart = W.chart
    q = f"({f})/(z + ({h}))"
    w = ExprField(chart, f"re({q})")
    # A = theta + v dz with d(theta) = re(f) vol_S2 (f constant)
    probe = ExprField(chart, f"re({f})", real_valued=True)
    vals = [probe.eval_jet(p, 1) for p in [(0.1, 0.2, 1.5), (-0.3, 0.1, 1.2)]]
    if any(jets.jet_partial_derivative(v, k).max_abs() > 1e-12 for v in vals for k in (0, 1)):
        raise MonopoleError("the catalog strachan potential needs constant f")
    A = FormField(
        chart,
        1,
        {
            (0,): ExprField(chart, f"re({f})*(-2*y/(1+x^2+y^2))"),
            (1,): ExprField(chart, f"re({f})*(2*x/(1+x^2+y^2))"),
            (2,): ExprField(chart, f"im({q})"),
        },
    )
    return AbelianMonopole(w=w, A=A)


def _theorem_ix(W: WeylStructure3, params):
    if W.known_kappa is None:
        raise MonopoleError(f"theorem-ix needs a base with a known twist; {W.name!r} has none")
    chart = W.chart
    kappa = W.known_kappa
    w1 = LambdaField(chart, lambda p, o: 2.0 * kappa.eval_jet(p, o), depth=kappa.derivative_depth)
    return AffineMonopole(
        w0=ConstField(chart, 1.0),
        w1=w1,
        A0=FormField.zero_form(chart),
        A1=W.omega,
    )


MONOPOLES = {
    "gibbons-hawking": (_gibbons_hawking, "abelian point monopole on flat-r3"),
    "strachan": (_strachan, "abelian monopole on hypercr-toda (constant f)"),
    "theorem-ix": (_theorem_ix, "affine data (1 + 2 t kappa, t omega_B) on hyperCR bases"),
}


def monopole_names():
    return sorted(MONOPOLES)


def make_catalog_monopole(name: str, W: WeylStructure3, params=None):
    try:
        builder, _ = MONOPOLES[name]
    except KeyError:
        raise MonopoleError(f"unknown monopole {name!r}; known: {', '.join(monopole_names())}")
    return builder(W, dict(params or {}))


def monopole_from_doc(doc: dict):
    """User-supplied monopole JSON:

        { "variant": "abelian" | "affine" | "projective" | "general",
          "base": {"name": ..., "params": {...}},
          "fields": {name: expr string},
          "t_domain": [lo, hi] }          (general variant only)

    Scalar field names are w (abelian/general) or w0, w1, w2; 1-form
    components are A_<coord> / A0_<coord> etc.  General-variant expressions
    may also use t.  Returns (base WeylStructure3, monopole data).
    """
    from .catalog import make_catalog_space

    W = make_catalog_space(doc["base"]["name"], doc["base"].get("params"))
    fields = doc["fields"]
    variant = doc["variant"]
    chart = W.chart

    def scalar(chart_, key, default="0"):
        return ExprField(chart_, str(fields.get(key, default)))

    def one_form(chart_, prefix):
        comps = {}
        for i, cname in enumerate(W.chart.coord_names):
            key = f"{prefix}_{cname}"
            if key in fields:
                comps[(i,)] = ExprField(chart_, str(fields[key]))
        return FormField(chart_, 1, comps)

    if variant == "abelian":
        return W, AbelianMonopole(w=scalar(chart, "w", "1"), A=one_form(chart, "A"))
    if variant == "affine":
        return W, AffineMonopole(
            w0=scalar(chart, "w0", "1"),
            w1=scalar(chart, "w1"),
            A0=one_form(chart, "A0"),
            A1=one_form(chart, "A1"),
        )
    if variant == "projective":
        return W, ProjectiveMonopole(
            w0=scalar(chart, "w0", "1"),
            w1=scalar(chart, "w1"),
            w2=scalar(chart, "w2"),
            A0=one_form(chart, "A0"),
            A1=one_form(chart, "A1"),
            A2=one_form(chart, "A2"),
        )
    if variant == "general":
        t_domain = doc.get("t_domain", [0.2, 1.0])
        chart4 = Chart(
            list(chart.coord_names) + ["t"],
            {**chart.sample_domain, "t": list(t_domain)},
            complex_pair=chart.complex_pair,
        )
        return W, GeneralMonopole(
            chart4, w=scalar(chart4, "w", "1"), A=one_form(chart4, "A")
        )
    raise MonopoleError(f"unknown monopole variant {variant!r}")
