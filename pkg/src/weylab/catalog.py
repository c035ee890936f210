"""Catalog of explicit Einstein-Weyl spaces.

Every space is delivered in a fixed gauge on an explicit chart.  The
two-sphere factor always appears in stereographic coordinates,
g_S2 = 4(dx^2+dy^2)/(1+x^2+y^2)^2, with volume potential
theta0 = 2(x dy - y dx)/(1+x^2+y^2) so that d(theta0) = vol_S2.

Twist conventions: the trivialized hyperCR twist fields shipped here are
    round-s3(R):            kappa = 1/R
    hypercr-toda(h):        kappa = -im(h)/abs2(z+h)
    geodesic-symmetry(f):   kappa = -re(1/f)/2
and are consistent with BASE_ORIENTATION = +1 (see orientation module).
"""

from __future__ import annotations

from dataclasses import dataclass

from .charts import (
    Chart,
    ConstField,
    ExprField,
    FormField,
    LambdaField,
    MetricField,
    holomorphy_residual,
    partial_field,
    sample_points,
)
from .einstein_weyl import WeylStructure3, axial_harmonic_residual_at
from .orientation import BASE_ORIENTATION
from .tensors import ext_d, values

__all__ = ["CatalogError", "SPACES", "make_catalog_space", "perturbed_space", "space_names"]

LAM2 = "4/(1+x^2+y^2)^2"
THETA0 = ("-2*y/(1+x^2+y^2)", "2*x/(1+x^2+y^2)")


class CatalogError(ValueError):
    pass


@dataclass
class SpaceEntry:
    builder: object
    schema: dict
    doc: str


def _flat_r3(params):
    chart = Chart(["x", "y", "z"], {c: [-1.0, 1.0] for c in "xyz"})
    g = MetricField(
        chart,
        {(i, i): ConstField(chart, 1.0) for i in range(3)},
        orientation_sign=BASE_ORIENTATION,
    )
    omega = FormField.zero_form(chart)
    W = WeylStructure3(chart, g, omega, name="flat-r3", params={})
    W.congruences["dz"] = FormField(chart, 1, {(2,): ConstField(chart, 1.0)})
    return W


def _round_s3(params):
    radius = float(params.get("radius", 1.0))
    if radius <= 0:
        raise CatalogError("radius must be positive")
    chart = Chart(["x", "y", "z"], {c: [-0.4, 0.4] for c in "xyz"})
    conf = ExprField(chart, f"4*{radius!r}^2/(1+x^2+y^2+z^2)^2")
    g = MetricField(
        chart, {(i, i): conf for i in range(3)}, orientation_sign=BASE_ORIENTATION
    )
    omega = FormField.zero_form(chart)
    kappa = ConstField(chart, 1.0 / radius)
    return WeylStructure3(
        chart, g, omega, name="round-s3", params={"radius": radius}, known_kappa=kappa
    )


def _check_holomorphic(chart, source, label):
    probe = ExprField(chart, source, real_valued=False)
    for p in sample_points(chart, 4, seed=101):
        if holomorphy_residual(probe, p) > 1e-8:
            raise CatalogError(f"{label} = {source!r} is not holomorphic in zeta")


def _hypercr_toda(params):
    h = str(params.get("h", "i"))
    chart = Chart(
        ["x", "y", "z"],
        {"x": [-0.5, 0.5], "y": [-0.5, 0.5], "z": [1.0, 2.0]},
        complex_pair=("x", "y"),
    )
    _check_holomorphic(chart, h, "h")
    a = f"abs2(z + ({h}))"
    conf = ExprField(chart, f"{a} * {LAM2}")
    g = MetricField(
        chart,
        {(0, 0): conf, (1, 1): conf, (2, 2): ConstField(chart, 1.0)},
        orientation_sign=BASE_ORIENTATION,
    )
    omega = FormField(chart, 1, {(2,): ExprField(chart, f"-(2*z + 2*re({h}))/({a})")})
    chart.exclusions.append(ExprField(chart, a))
    kappa = ExprField(chart, f"-im({h})/({a})")
    W = WeylStructure3(
        chart, g, omega, name="hypercr-toda", params={"h": h}, known_kappa=kappa
    )
    W.congruences["dz"] = FormField(chart, 1, {(2,): ConstField(chart, 1.0)})
    return W


def _geodesic_symmetry(params):
    f = str(params.get("f", "1"))
    chart = Chart(
        ["x", "y", "psi"],
        {"x": [-0.6, 0.6], "y": [-0.6, 0.6], "psi": [-1.0, 1.0]},
        complex_pair=("x", "y"),
    )
    _check_holomorphic(chart, f, "f")
    if "theta" in params:
        th_x, th_y = params["theta"]
    else:
        # valid potential for d(theta) = re(f) vol_S2 when f is constant
        th_x = f"re({f})*({THETA0[0]})"
        th_y = f"re({f})*({THETA0[1]})"
    beta = [ExprField(chart, th_x), ExprField(chart, th_y), ConstField(chart, 1.0)]
    conf = f"abs2({f})*{LAM2}"
    comps = {
        (0, 0): ExprField(chart, f"{conf} + ({th_x})^2"),
        (1, 1): ExprField(chart, f"{conf} + ({th_y})^2"),
        (2, 2): ConstField(chart, 1.0),
        (0, 1): ExprField(chart, f"({th_x})*({th_y})"),
        (0, 2): ExprField(chart, th_x),
        (1, 2): ExprField(chart, th_y),
    }
    g = MetricField(chart, comps, orientation_sign=BASE_ORIENTATION)
    omega = FormField(
        chart,
        1,
        {
            (0,): ExprField(chart, f"-im(1/({f}))*({th_x})"),
            (1,): ExprField(chart, f"-im(1/({f}))*({th_y})"),
            (2,): ExprField(chart, f"-im(1/({f}))"),
        },
    )
    chart.exclusions.append(ExprField(chart, f"abs2({f})"))
    kappa = ExprField(chart, f"-re(1/({f}))/2")
    W = WeylStructure3(
        chart,
        g,
        omega,
        name="geodesic-symmetry",
        params={"f": f, "theta": (th_x, th_y)},
        known_kappa=kappa,
    )
    W.congruences["beta"] = FormField(chart, 1, {(0,): beta[0], (1,): beta[1], (2,): beta[2]})
    _check_beta_potential(W, f)
    return W


def _check_beta_potential(W, f):
    """d(beta) must equal re(f) vol_S2 for the geodesic-symmetry family."""
    beta = W.congruences["beta"]
    vol = ExprField(W.chart, f"re({f})*{LAM2}")
    for p in sample_points(W.chart, 4, seed=103):
        d = values(ext_d(beta.component_jets(p, 1), 1))
        expected = vol.eval_jet(p, 0).value
        worst = max(
            abs(d[0, 1] - expected), abs(d[0, 2]), abs(d[1, 2])
        )
        if worst > 1e-8:
            raise CatalogError(
                "theta is not a potential for re(f) vol_S2 "
                f"(residual {worst:.2e} at {p}); supply theta explicitly"
            )


def _ward_toda(params):
    v_src = str(params.get("V", "eta"))
    chart = Chart(
        ["rho", "eta", "psi"],
        {"rho": [0.6, 1.6], "eta": [0.4, 1.4], "psi": [-1.0, 1.0]},
    )
    V = ExprField(chart, v_src)
    Vr = partial_field(V, 0)
    Ve = partial_field(V, 1)

    def m2_fn(point, order):
        a = Vr.eval_jet(point, order)
        b = Ve.eval_jet(point, order)
        return a * a + b * b

    m2 = LambdaField(chart, m2_fn, depth=1, name="Vr^2+Ve^2")

    def omega_rho_fn(point, order):
        a = Vr.eval_jet(point, order)
        b = Ve.eval_jet(point, order)
        rho = chart.coordinate_jets(point, order)["rho"]
        return (a * a - b * b) / (rho * (a * a + b * b))

    def omega_eta_fn(point, order):
        a = Vr.eval_jet(point, order)
        b = Ve.eval_jet(point, order)
        rho = chart.coordinate_jets(point, order)["rho"]
        return 2.0 * a * b / (rho * (a * a + b * b))

    g = MetricField(
        chart,
        {(0, 0): m2, (1, 1): m2, (2, 2): ConstField(chart, 1.0)},
        orientation_sign=BASE_ORIENTATION,
    )
    omega = FormField(
        chart,
        1,
        {
            (0,): LambdaField(chart, omega_rho_fn, depth=1, name="omega_rho"),
            (1,): LambdaField(chart, omega_eta_fn, depth=1, name="omega_eta"),
        },
    )
    chart.exclusions.append(ExprField(chart, "rho"))
    chart.exclusions.append(m2)
    W = WeylStructure3(chart, g, omega, name="ward-toda", params={"V": v_src})
    for p in sample_points(chart, 4, seed=105):
        resid = axial_harmonic_residual_at(V, p)
        if resid > 1e-8:
            raise CatalogError(
                f"V = {v_src!r} is not axially symmetric harmonic "
                f"(residual {resid:.2e} at {p})"
            )
    W.congruences["dpsi"] = FormField(chart, 1, {(2,): ConstField(chart, 1.0)})
    return W


SPACES = {
    "flat-r3": SpaceEntry(_flat_r3, {}, "Flat exact structure on R^3"),
    "round-s3": SpaceEntry(
        _round_s3, {"radius": "float (default 1.0)"}, "Round 3-sphere, stereographic chart"
    ),
    "hypercr-toda": SpaceEntry(
        _hypercr_toda,
        {"h": "holomorphic expression in zeta (default 'i')"},
        "Toda-type space g = abs2(z+h) g_S2 + dz^2 with its hyperCR twist",
    ),
    "geodesic-symmetry": SpaceEntry(
        _geodesic_symmetry,
        {
            "f": "holomorphic expression in zeta (default '1')",
            "theta": "optional potential pair (needed for nonconstant f)",
        },
        "Geodesic-symmetry space g = abs2(f) g_S2 + beta^2",
    ),
    "ward-toda": SpaceEntry(
        _ward_toda,
        {"V": "axially symmetric harmonic expression in rho, eta (default 'eta')"},
        "Axially symmetric space from a harmonic V(rho, eta)",
    ),
}


def space_names():
    return sorted(SPACES)


def make_catalog_space(name: str, params=None) -> WeylStructure3:
    try:
        entry = SPACES[name]
    except KeyError:
        raise CatalogError(f"unknown space {name!r}; known: {', '.join(space_names())}")
    return entry.builder(dict(params or {}))


def perturbed_space(W: WeylStructure3, eps: float = 0.1) -> WeylStructure3:
    """W with omega_B + eps * d(last coordinate): breaks Einstein-Weyl."""
    last = W.chart.dim - 1
    comps = {(i,): W.omega.component((i,)) for i in range(W.chart.dim)}

    def fn(point, order):
        base = W.omega.component((last,)).eval_jet(point, order)
        return base + eps

    comps[(last,)] = LambdaField(W.chart, fn, depth=W.omega.derivative_depth)
    return WeylStructure3(
        W.chart,
        W.g,
        FormField(W.chart, 1, comps),
        name=W.name + "+perturbed",
        params=dict(W.params),
        known_kappa=W.known_kappa,
        congruences=dict(W.congruences),
    )
