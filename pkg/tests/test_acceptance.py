"""Acceptance criteria, one test per criterion, at the stated tolerances.

Each criterion prints a single pass/fail line (details shown on failure).
All point sweeps use 20 seeded points unless a criterion states otherwise.
Run `pytest tests/test_acceptance.py -v -s` or `python scripts/run_acceptance.py`.
"""

import math

import numpy as np

from weylab import jets
from weylab.catalog import make_catalog_space, perturbed_space
from weylab.charts import ConstField, ExprField, FormField, MetricField
from weylab.curvature import curvature_report_at, frobenius_norm
from weylab.einstein_weyl import (
    ew_residual_at,
    gauge_transform,
    hypercr_identities_at,
)
from weylab.metrics4d import (
    EINSTEIN_SCAL,
    assemble_from_monopole,
    complex_structure_checks_at,
    einstein_selfdual_report_at,
    explicit_einstein_hypercomplex_family,
    hitchin_lebrun_metric,
    ix_projective_agreement_at,
    jones_tod_extract_at,
    sfk_linear_residual_at,
    sfk_metric,
    submersion_residuals_at,
    theorem_ix_metric,
)
from weylab.monopoles import (
    AffineMonopole,
    ProjectiveMonopole,
    ansatz_reduction_check,
    canonical_projective_monopole,
    make_catalog_monopole,
    monopole_residual_at,
)

from helpers import fd_partial

POINTS = 20
SEED = 2026

EW_CATALOG = [
    ("hypercr-toda", {"h": "i"}),
    ("hypercr-toda", {"h": "zeta^2 + i"}),
    ("geodesic-symmetry", {"f": "1"}),
    ("ward-toda", {"V": "eta"}),
    ("ward-toda", {"V": "log(rho)"}),
    ("ward-toda", {"V": "(rho^2+eta^2)^-0.5"}),
    ("round-s3", {}),
    ("flat-r3", {}),
]


def _criterion(num, description, entries):
    """entries: (label, value, tol, 'le'|'ge'); prints the verdict line."""
    failed = [
        e for e in entries if (e[1] > e[2] if e[3] == "le" else e[1] < e[2])
    ]
    print(f"[criterion {num:02d}] {'PASS' if not failed else 'FAIL'} - {description}")
    if failed:
        for label, value, tol, op in entries:
            mark = "<=" if op == "le" else ">="
            print(f"    {label}: {value:.3e} (want {mark} {tol:g})")
    assert not failed, [f"{e[0]}={e[1]:.3e}" for e in failed]


def test_criterion_01_einstein_weyl_catalog():
    entries = []
    for name, params in EW_CATALOG:
        W = make_catalog_space(name, params)
        worst = max(ew_residual_at(W, p) for p in W.sample(POINTS, SEED))
        entries.append((f"ew[{name}{params}]", worst, 1e-7, "le"))
        Wp = perturbed_space(W)
        detect = max(ew_residual_at(Wp, p) for p in Wp.sample(POINTS, SEED))
        entries.append((f"perturbed[{name}{params}]", detect, 1e-4, "ge"))
    _criterion(1, "Einstein-Weyl catalog residuals and perturbation detection", entries)


def test_criterion_02_filling_metric_flat_base():
    W = make_catalog_space("flat-r3")
    M = hitchin_lebrun_metric(W)
    einstein = asd = scal = 0.0
    for p in M.sample(POINTS, SEED):
        rep = einstein_selfdual_report_at(M, p)
        einstein = max(einstein, rep.einstein_residual)
        asd = max(asd, rep.asd_weyl_norm)
        scal = max(scal, abs(rep.scal - EINSTEIN_SCAL))
    _criterion(
        2,
        "filling metric over the flat base: Einstein, selfdual, scal = -12",
        [
            ("einstein", einstein, 1e-8, "le"),
            ("asd_weyl", asd, 1e-8, "le"),
            ("scal+12", scal, 1e-8, "le"),
        ],
    )


def test_criterion_03_filling_metric_curved_bases():
    entries = []
    for name, params in [("round-s3", {}), ("ward-toda", {"V": "log(rho)"})]:
        W = make_catalog_space(name, params)
        M = hitchin_lebrun_metric(W)
        einstein = asd = scal = leg = 0.0
        for p in M.sample(POINTS, SEED):
            rep = einstein_selfdual_report_at(M, p)
            einstein = max(einstein, rep.einstein_residual)
            asd = max(asd, rep.asd_weyl_norm)
            scal = max(scal, abs(rep.scal - EINSTEIN_SCAL))
            leg = max(leg, submersion_residuals_at(M, p)[1])
        entries += [
            (f"einstein[{name}]", einstein, 1e-6, "le"),
            (f"asd_weyl[{name}]", asd, 1e-6, "le"),
            (f"scal[{name}]", scal, 1e-6, "le"),
            (f"legendrian[{name}]", leg, 1e-6, "le"),
        ]
    _criterion(3, "filling metric over round-s3 and ward-toda(log rho)", entries)


def test_criterion_04_canonical_projective_monopole():
    entries = []
    for name, params in EW_CATALOG:
        W = make_catalog_space(name, params)
        m = canonical_projective_monopole(W)
        worst = max(
            max(monopole_residual_at(W, m, p).values()) for p in W.sample(POINTS, SEED)
        )
        entries.append((f"bianchi[{name}{params}]", worst, 1e-7, "le"))
    _criterion(4, "canonical projective monopole solves the equations (Bianchi)", entries)


def test_criterion_05_explicit_einstein_family():
    M = explicit_einstein_hypercomplex_family("zeta^2 + i")
    einstein = asd = 0.0
    for p in M.sample(POINTS, SEED):
        rep = einstein_selfdual_report_at(M, p)
        einstein = max(einstein, rep.einstein_residual)
        asd = max(asd, rep.asd_weyl_norm)
    entries = [
        ("einstein[h=zeta^2+i]", einstein, 1e-7, "le"),
        ("asd_weyl[h=zeta^2+i]", asd, 1e-7, "le"),
    ]
    for name, params in [
        ("hypercr-toda", {"h": "i"}),
        ("hypercr-toda", {"h": "zeta^2 + i"}),
        ("geodesic-symmetry", {"f": "1"}),
    ]:
        W = make_catalog_space(name, params)
        worst = max(
            ix_projective_agreement_at(W, p + (0.25,)) for p in W.sample(POINTS, SEED)
        )
        entries.append((f"ix-agreement[{name}{params}]", worst, 1e-8, "le"))
    _criterion(5, "explicit Einstein family and projective-coordinate agreement", entries)


def test_criterion_06_gibbons_hawking():
    W = make_catalog_space("flat-r3")
    gh = make_catalog_monopole("gibbons-hawking", W)
    abelian = max(
        monopole_residual_at(W, gh, p)["abelian"] for p in W.sample(POINTS, SEED)
    )
    M = assemble_from_monopole(W, gh)
    ricci = asd = tri = 0.0
    for p in M.sample(POINTS, SEED):
        crep = curvature_report_at(M.g, None, p, 2)
        ricci = max(
            ricci, frobenius_norm(crep.ricci_sym, crep.metric0, crep.metric0_inv, "dd")
        )
        asd = max(asd, einstein_selfdual_report_at(M, p).asd_weyl_norm)
        tri = max(tri, submersion_residuals_at(M, p)[1])
    _criterion(
        6,
        "Gibbons-Hawking: monopole, Ricci-flat, selfdual, triholomorphic (pins orientation)",
        [
            ("abelian", abelian, 1e-9, "le"),
            ("ricci", ricci, 1e-7, "le"),
            ("asd_weyl", asd, 1e-7, "le"),
            ("triholomorphic", tri, 1e-7, "le"),
        ],
    )


def test_criterion_07_strachan():
    W = make_catalog_space("hypercr-toda", {"h": "i"})
    st = make_catalog_monopole("strachan", W, {"f": "1"})
    abelian = max(
        monopole_residual_at(W, st, p)["abelian"] for p in W.sample(POINTS, SEED)
    )
    M = assemble_from_monopole(W, st)
    asd = nij = 0.0
    sheared_nij = math.inf
    sheared = FormField(
        W.chart, 1, {(2,): ConstField(W.chart, 1.0), (0,): ConstField(W.chart, 0.2)}
    )
    for p in M.sample(POINTS, SEED):
        asd = max(asd, einstein_selfdual_report_at(M, p).asd_weyl_norm)
        nij = max(nij, complex_structure_checks_at(M, W.congruences["dz"], p)[0])
        sheared_nij = min(sheared_nij, complex_structure_checks_at(M, sheared, p)[0])
    _criterion(
        7,
        "Strachan monopole: selfdual metric, integrable J from dz, shear detection",
        [
            ("abelian", abelian, 1e-8, "le"),
            ("asd_weyl", asd, 1e-7, "le"),
            ("nijenhuis[dz]", nij, 1e-7, "le"),
            ("nijenhuis[sheared]", sheared_nij, 1e-3, "ge"),
        ],
    )


def test_criterion_08_sfk_family():
    W = make_catalog_space("geodesic-symmetry", {"f": "1"})
    chi = W.congruences["beta"]
    rho = ConstField(W.chart, 1.0)
    Phi0 = FormField.zero_form(W.chart)
    lin = max(
        sfk_linear_residual_at(W, chi, rho, Phi0, p) for p in W.sample(POINTS, SEED)
    )
    M = sfk_metric(W, chi, rho, Phi0)
    scal = kah = 0.0
    for p in M.sample(POINTS, SEED):
        scal = max(scal, abs(einstein_selfdual_report_at(M, p).scal))
        kah = max(kah, complex_structure_checks_at(M, chi, p)[1])
    Phi_bad = FormField(W.chart, 1, {(0,): ConstField(W.chart, 0.1)})
    lin_bad = min(
        sfk_linear_residual_at(W, chi, rho, Phi_bad, p) for p in W.sample(POINTS, SEED)
    )
    M_bad = sfk_metric(W, chi, rho, Phi_bad)
    scal_bad = max(
        abs(einstein_selfdual_report_at(M_bad, p).scal) for p in M_bad.sample(5, SEED)
    )
    _criterion(
        8,
        "scalar-flat Kaehler family: scal, parallel J, linear equation, detection",
        [
            ("scal", scal, 1e-6, "le"),
            ("kahler", kah, 1e-6, "le"),
            ("linear_equation", lin, 1e-7, "le"),
            ("linear_equation[perturbed]", lin_bad, 1e-4, "ge"),
            ("scal[perturbed]", scal_bad, 1e-4, "ge"),
        ],
    )


def _all_bundles():
    W_flat = make_catalog_space("flat-r3")
    yield "gibbons-hawking", assemble_from_monopole(
        W_flat, make_catalog_monopole("gibbons-hawking", W_flat)
    )
    W_toda = make_catalog_space("hypercr-toda", {"h": "i"})
    yield "strachan", assemble_from_monopole(
        W_toda, make_catalog_monopole("strachan", W_toda, {"f": "1"})
    )
    yield "hl[flat-r3]", hitchin_lebrun_metric(make_catalog_space("flat-r3"))
    yield "hl[round-s3]", hitchin_lebrun_metric(make_catalog_space("round-s3"))
    yield "hl[ward-toda]", hitchin_lebrun_metric(
        make_catalog_space("ward-toda", {"V": "log(rho)"})
    )
    yield "ix[geodesic-symmetry]", theorem_ix_metric(
        make_catalog_space("geodesic-symmetry", {"f": "1"})
    )
    yield "ix[hypercr-toda]", theorem_ix_metric(make_catalog_space("hypercr-toda", {"h": "i"}))
    yield "hypercomplex-einstein[zeta^2+i]", explicit_einstein_hypercomplex_family("zeta^2 + i")
    Wg = make_catalog_space("geodesic-symmetry", {"f": "1"})
    yield "sfk[geodesic-symmetry]", sfk_metric(
        Wg, Wg.congruences["beta"], ConstField(Wg.chart, 1.0), FormField.zero_form(Wg.chart)
    )


def test_criterion_09_jones_tod_roundtrip():
    entries = []
    for label, M in _all_bundles():
        mismatch = f0 = 0.0
        for p in M.sample(POINTS, SEED):
            jt = jones_tod_extract_at(M, p)
            mismatch = max(mismatch, jt["recovered_base_mismatch"])
            f0 = max(f0, jt["f0_sd_residual"])
        entries.append((f"base_recovery[{label}]", mismatch, 1e-7, "le"))
        entries.append((f"f0_selfdual[{label}]", f0, 1e-7, "le"))
    _criterion(9, "inverse-construction roundtrip over every bundle", entries)


def test_criterion_10_ansatz_reductions():
    W = make_catalog_space("flat-r3")
    ch = W.chart
    affine = AffineMonopole(
        w0=ExprField(ch, "1 + 0.3*sin(x+y)"),
        w1=ExprField(ch, "0.5*exp(0.2*z)"),
        A0=FormField(ch, 1, {(0,): ExprField(ch, "y*z"), (2,): ExprField(ch, "cos(x)")}),
        A1=FormField(ch, 1, {(1,): ExprField(ch, "x^2"), (2,): ExprField(ch, "0.3*y")}),
    )
    worst_affine = max(
        ansatz_reduction_check(W, affine, p) for p in W.sample(POINTS, SEED)
    )
    W2 = make_catalog_space("round-s3")
    ch2 = W2.chart
    projective = ProjectiveMonopole(
        w0=ExprField(ch2, "1 + 0.2*x"),
        w1=ExprField(ch2, "0.4*y - z"),
        w2=ExprField(ch2, "sin(z) + 2"),
        A0=FormField(ch2, 1, {(0,): ExprField(ch2, "y"), (1,): ExprField(ch2, "z*x")}),
        A1=FormField(ch2, 1, {(1,): ExprField(ch2, "x")}),
        A2=FormField(ch2, 1, {(2,): ExprField(ch2, "cos(x*y)"), (0,): ConstField(ch2, 0.7)}),
    )
    worst_proj = max(
        ansatz_reduction_check(W2, projective, p) for p in W2.sample(POINTS, SEED)
    )
    _criterion(
        10,
        "affine/projective data satisfy the t-graded evolution identity",
        [
            ("affine", worst_affine, 1e-10, "le"),
            ("projective", worst_proj, 1e-10, "le"),
        ],
    )


def test_criterion_11_engine_properties():
    entries = []

    # jets vs central finite differences, derivative orders up to 3
    spec = jets.JetSpec(2, 3)
    x = jets.variable(spec, 0, 0.3)
    y = jets.variable(spec, 1, -0.6)
    j = jets.exp(x * jets.sin(y)) + jets.sqrt(1.0 + x * x) / (2.0 + y)

    def f(p):
        return math.exp(p[0] * math.sin(p[1])) + math.sqrt(1 + p[0] ** 2) / (2 + p[1])

    worst_fd = 0.0
    for m in [(1, 0), (0, 1), (1, 1), (2, 0), (2, 1), (3, 0), (0, 3)]:
        exact = jets.derivative_extract(j, m)
        approx = fd_partial(f, (0.3, -0.6), m)
        worst_fd = max(worst_fd, abs(exact - approx) / max(1.0, abs(exact)))
    entries.append(("jet_vs_fd", worst_fd, 1e-6, "le"))

    # conformal invariance of the (1,3) Weyl tensor
    from weylab.charts import Chart

    chart = Chart(["x", "y", "z", "t"], {c: [-0.5, 0.5] for c in "xyzt"})

    def comps(scale):
        return {
            (0, 0): ExprField(chart, f"({scale})*(2 + 0.3*sin(x+t))"),
            (1, 1): ExprField(chart, f"({scale})*(2 + 0.2*x*y)"),
            (2, 2): ExprField(chart, f"({scale})*(2 + 0.1*z^2)"),
            (3, 3): ExprField(chart, f"({scale})*(2 + 0.2*cos(y))"),
            (0, 2): ExprField(chart, f"({scale})*0.1*y"),
        }

    g1 = MetricField(chart, comps("1"))
    g2 = MetricField(chart, comps("exp(0.4*sin(x) + 0.2*y*z)"))
    worst_weyl = 0.0
    from weylab.charts import sample_points

    for p in sample_points(chart, 5, SEED):
        r1 = curvature_report_at(g1, None, p, 2)
        r2 = curvature_report_at(g2, None, p, 2)
        scale = np.max(np.abs(r1.weyl)) + 1e-30
        worst_weyl = max(worst_weyl, float(np.max(np.abs(r1.weyl - r2.weyl)) / scale))
    entries.append(("weyl_conformal_invariance", worst_weyl, 1e-8, "le"))

    # gauge invariance of the Einstein-Weyl residual
    W = make_catalog_space("hypercr-toda", {"h": "i"})
    W2 = gauge_transform(W, "0.3*sin(x)*y + 0.1*z")
    worst_gauge = max(
        abs(ew_residual_at(W2, p) - ew_residual_at(W, p)) for p in W.sample(POINTS, SEED)
    )
    entries.append(("ew_gauge_invariance", worst_gauge, 1e-8, "le"))

    # hyperCR identities wherever a twist is known
    for name, params in [
        ("round-s3", {}),
        ("geodesic-symmetry", {"f": "1"}),
        ("hypercr-toda", {"h": "i"}),
        ("hypercr-toda", {"h": "zeta^2 + i"}),
    ]:
        Wk = make_catalog_space(name, params)
        worst = max(max(hypercr_identities_at(Wk, p)) for p in Wk.sample(POINTS, SEED))
        entries.append((f"hypercr[{name}{params}]", worst, 1e-7, "le"))
    _criterion(11, "engine properties: FD agreement, invariances, twist identities", entries)
