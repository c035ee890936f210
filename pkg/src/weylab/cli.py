"""Command-line front end: catalog, checks, builds, reports.

Commands:

    weylab catalog
    weylab check-ew        --space NAME [--param k=v]... [--perturbed]
    weylab check-monopole  --monopole NAME --space NAME [--param]... [--mparam]...
    weylab build           --construction NAME --base NAME [...] --out FILE
    weylab check-metric    (--construction ... | --bundle FILE) [check flags]
    weylab roundtrip       (--construction ... | --bundle FILE)

All commands also accept ``--request FILE`` with the same data as a JSON
document.  Reports are deterministic for a fixed (request, version): numbers
carry 17 significant digits, aggregation order is fixed by point index, and
wall time lives in a separate "timing" block.  Exit codes: 0 pass, 1 fail,
2 usage/domain error (with an error JSON on stderr).
"""

from __future__ import annotations

import argparse
import json
import sys
import time

from . import __version__
from .catalog import CatalogError, SPACES, make_catalog_space, perturbed_space, space_names
from .charts import ChartError, sample_points
from .jets import DomainError, OrderError
from .einstein_weyl import (
    ew_residual_at,
    hypercr_identities_at,
    weyl3_norm_at,
)
from .monopoles import (
    MONOPOLES,
    MonopoleError,
    canonical_projective_monopole,
    make_catalog_monopole,
    monopole_names,
    monopole_residual_at,
    sl2_residual_at,
)
from .tensors import DegenerateMetricError

CONSTRUCTIONS = ["monopole", "hitchin-lebrun", "theorem-ix", "hypercomplex-einstein", "sfk"]

USAGE_ERRORS = (
    CatalogError,
    ChartError,
    DomainError,
    MonopoleError,
    DegenerateMetricError,
    OrderError,
    ValueError,
    KeyError,
    FileNotFoundError,
)


def _fmt(x):
    if isinstance(x, float):
        return format(x, ".17g")
    if isinstance(x, dict):
        return "{" + ", ".join(f'"{k}": {_fmt(v)}' for k, v in x.items()) + "}"
    if isinstance(x, (list, tuple)):
        return "[" + ", ".join(_fmt(v) for v in x) + "]"
    if isinstance(x, bool):
        return "true" if x else "false"
    if x is None:
        return "null"
    if isinstance(x, int):
        return str(x)
    return json.dumps(x)


def dumps_canonical(obj) -> str:
    """Deterministic JSON with 17-significant-digit floats."""
    return _fmt(obj)


def default_tolerance(space_name: str, construction: str | None = None) -> float:
    """1e-7 for closed-form pipelines, 1e-6 once depth-2 computed fields
    (scal^B over derivative-built metrics) enter."""
    if construction in ("hitchin-lebrun",) and space_name == "ward-toda":
        return 1e-6
    if space_name == "ward-toda" or construction == "hitchin-lebrun":
        return 1e-6
    return 1e-7


def _aggregate(records):
    keys = list(records[0]["residuals"]) if records else []
    agg_max = {k: max(r["residuals"][k] for r in records) for k in keys}
    agg_mean = {k: sum(r["residuals"][k] for r in records) / len(records) for k in keys}
    return agg_max, agg_mean


def run_points_check(request, chart_sampler, residual_fn):
    """Shared orchestration: sample, evaluate, aggregate, report."""
    if request["points"] < 1:
        raise ValueError("points must be >= 1")
    if request["tolerance"] <= 0:
        raise ValueError("tolerance must be positive")
    t0 = time.time()
    points = chart_sampler(request["points"], request["seed"])
    records = []
    for p in points:
        res = residual_fn(p)
        records.append({"coords": [float(v) for v in p], "residuals": res})
    agg_max, agg_mean = _aggregate(records)
    tol = request["tolerance"]
    ok = all(v <= tol for v in agg_max.values())
    worst = None
    if records:
        worst_key = max(agg_max, key=lambda k: agg_max[k]) if agg_max else None
        if worst_key is not None:
            worst_rec = max(records, key=lambda r: r["residuals"][worst_key])
            worst = {"residual": worst_key, "coords": worst_rec["coords"]}
    report = {
        "request": request,
        "result": {
            "points": records,
            "aggregates": {"max": agg_max, "mean": agg_mean},
            "worst": worst,
            "pass": ok,
        },
        "version": __version__,
        "timing": {"wall_seconds": time.time() - t0},
    }
    return report


def emit_report(report, path=None):
    body = dumps_canonical(report)
    if path:
        with open(path, "w") as fh:
            fh.write(body + "\n")
    else:
        print(body)
    return 0 if report["result"]["pass"] else 1


# ---------------------------------------------------------------------------
# command implementations
# ---------------------------------------------------------------------------


def _parse_params(pairs):
    out = {}
    for pair in pairs or []:
        if "=" not in pair:
            raise CatalogError(f"--param expects name=expr, got {pair!r}")
        k, v = pair.split("=", 1)
        try:
            out[k] = float(v) if k in ("radius", "mass", "constant") else v
        except ValueError:
            out[k] = v
    return out


def cmd_catalog(args):
    lines = ["spaces:"]
    for name in space_names():
        entry = SPACES[name]
        lines.append(f"  {name}: {entry.doc}")
        for pname, pdoc in entry.schema.items():
            lines.append(f"      --param {pname}=...  {pdoc}")
    lines.append("monopoles:")
    for name in monopole_names():
        lines.append(f"  {name}: {MONOPOLES[name][1]}")
    lines.append("constructions: " + ", ".join(CONSTRUCTIONS))
    print("\n".join(lines))
    return 0


def cmd_check_ew(args):
    params = _parse_params(args.param)
    W = make_catalog_space(args.space, params)
    if args.perturbed:
        W = perturbed_space(W)
    request = {
        "check": "ew",
        "space": args.space,
        "params": params,
        "perturbed": bool(args.perturbed),
        "points": args.points,
        "seed": args.seed,
        "tolerance": args.tol if args.tol is not None else default_tolerance(args.space),
    }

    def resid(p):
        out = {"ew": ew_residual_at(W, p), "weyl3": weyl3_norm_at(W, p)}
        if W.known_kappa is not None:
            r1, r2 = hypercr_identities_at(W, p)
            out["hypercr_twist_eq"] = r1
            out["hypercr_scal_eq"] = r2
        return out

    report = run_points_check(request, lambda n, s: sample_points(W.chart, n, s), resid)
    return emit_report(report, args.report)


def cmd_check_monopole(args):
    if getattr(args, "monopole_file", None):
        from .monopoles import monopole_from_doc

        with open(args.monopole_file) as fh:
            doc = json.load(fh)
        W, m = monopole_from_doc(doc)
        request = {
            "check": "monopole",
            "monopole_file": args.monopole_file,
            "document": doc,
            "points": args.points,
            "seed": args.seed,
            "tolerance": args.tol
            if args.tol is not None
            else default_tolerance(doc["base"]["name"]),
        }
        chart = m.chart4 if m.variant == "general" else W.chart
    else:
        if not args.monopole or not args.space:
            raise CatalogError("check-monopole needs --monopole and --space, or --monopole-file")
        params = _parse_params(args.param)
        mparams = _parse_params(args.mparam)
        W = make_catalog_space(args.space, params)
        if args.monopole == "canonical":
            m = canonical_projective_monopole(W)
        else:
            m = make_catalog_monopole(args.monopole, W, mparams)
        request = {
            "check": "monopole",
            "monopole": args.monopole,
            "monopole_params": mparams,
            "space": args.space,
            "params": params,
            "points": args.points,
            "seed": args.seed,
            "tolerance": args.tol if args.tol is not None else default_tolerance(args.space),
        }
        chart = W.chart

    def resid(p):
        out = dict(monopole_residual_at(W, m, p))
        if m.variant == "projective":
            out["sl2"] = sl2_residual_at(W, m, p)
        return out

    report = run_points_check(request, lambda n, s: sample_points(chart, n, s), resid)
    return emit_report(report, args.report)


def _build_from_args(args):
    from .bundle_io import build_construction, read_bundle

    if getattr(args, "bundle", None):
        return read_bundle(args.bundle)
    params = _parse_params(args.param)
    mparams = _parse_params(getattr(args, "mparam", None))
    kwargs = {}
    if args.construction == "sfk":
        kwargs["chi"] = params.pop("chi", None)
        kwargs["rho"] = params.pop("rho", "1")
        phi = params.pop("Phi", None)
        if phi:
            kwargs["Phi"] = phi.split(";")
    t_domain = None
    if getattr(args, "t_domain", None):
        lo, hi = args.t_domain.split(",")
        t_domain = (float(lo), float(hi))
    return build_construction(
        args.construction,
        args.base,
        params,
        monopole_name=getattr(args, "monopole", None),
        monopole_params=mparams,
        t_domain=t_domain,
        **kwargs,
    )


def cmd_build(args):
    from .bundle_io import write_bundle, bundle_to_doc

    M = _build_from_args(args)
    if args.out:
        write_bundle(M, args.out)
        print(f"wrote {args.out}")
    else:
        print(dumps_canonical(bundle_to_doc(M)))
    return 0


def cmd_check_metric(args):
    from .metrics4d import (
        EINSTEIN_SCAL,
        complex_structure_checks_at,
        einstein_selfdual_report_at,
        submersion_residuals_at,
    )

    M = _build_from_args(args)
    construction = M.construction
    base_name = M.base.name.split("+")[0]
    checks = {
        "einstein": args.einstein,
        "selfdual": args.selfdual,
        "ricci_flat": args.ricci_flat,
        "legendrian": args.legendrian,
        "scal": args.scal,
        "complex": args.complex is not None,
    }
    if not any(checks.values()):
        checks["selfdual"] = True
        checks["einstein"] = construction in ("hitchin-lebrun", "theorem-ix", "hypercomplex-einstein")
        checks["scal"] = checks["einstein"]
        checks["legendrian"] = construction in ("hitchin-lebrun", "theorem-ix", "hypercomplex-einstein")
    request = {
        "check": "metric",
        "construction": construction,
        "base": {"name": base_name, "params": dict(M.base.params)},
        "checks": {k: bool(v) for k, v in checks.items()},
        "points": args.points,
        "seed": args.seed,
        "tolerance": args.tol
        if args.tol is not None
        else default_tolerance(base_name, construction),
    }
    chi = None
    if checks["complex"]:
        chi = M.base.congruences[args.complex]

    def resid(p):
        out = {}
        rep = einstein_selfdual_report_at(M, p)
        if checks["selfdual"]:
            out["asd_weyl"] = rep.asd_weyl_norm
        if checks["einstein"]:
            out["einstein"] = rep.einstein_residual
        if checks["ricci_flat"]:
            out["einstein"] = rep.einstein_residual
            out["abs_scal"] = abs(rep.scal)
        if checks["scal"]:
            out["scal_vs_filling_value"] = abs(rep.scal - EINSTEIN_SCAL)
        ck, leg = submersion_residuals_at(M, p)
        out["conformal_killing"] = ck
        if checks["legendrian"]:
            out["legendrian"] = leg
        if chi is not None:
            nij, kah = complex_structure_checks_at(M, chi, p)
            out["nijenhuis"] = nij
            out["kahler"] = kah
        return out

    report = run_points_check(request, lambda n, s: sample_points(M.chart, n, s), resid)
    return emit_report(report, args.report)


def cmd_roundtrip(args):
    from .metrics4d import jones_tod_extract_at

    M = _build_from_args(args)
    base_name = M.base.name.split("+")[0]
    request = {
        "check": "roundtrip",
        "construction": M.construction,
        "base": {"name": base_name, "params": dict(M.base.params)},
        "points": args.points,
        "seed": args.seed,
        "tolerance": args.tol
        if args.tol is not None
        else default_tolerance(base_name, M.construction),
    }

    def resid(p):
        jt = jones_tod_extract_at(M, p)
        return {
            "f0_selfdual": jt["f0_sd_residual"],
            "base_mismatch": jt["recovered_base_mismatch"],
        }

    report = run_points_check(request, lambda n, s: sample_points(M.chart, n, s), resid)
    return emit_report(report, args.report)


# ---------------------------------------------------------------------------
# argument plumbing
# ---------------------------------------------------------------------------


def _add_common(p):
    p.add_argument("--points", type=int, default=20)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--tol", type=float, default=None)
    p.add_argument("--report", default=None, help="write the report JSON here")
    p.add_argument("--request", default=None, help="read all options from a JSON request file")


def _add_build_args(p, require_construction=True):
    p.add_argument("--construction", choices=CONSTRUCTIONS, required=require_construction)
    p.add_argument("--base", default=None)
    p.add_argument("--param", action="append", default=[])
    p.add_argument("--monopole", default=None)
    p.add_argument("--mparam", action="append", default=[])
    p.add_argument("--t-domain", dest="t_domain", default=None, help="lo,hi")
    p.add_argument("--bundle", default=None, help="read a built bundle JSON instead")


def make_parser():
    ap = argparse.ArgumentParser(prog="weylab", description=__doc__)
    ap.add_argument("--version", action="version", version=__version__)
    sub = ap.add_subparsers(dest="command", required=True)

    sub.add_parser("catalog", help="list spaces, monopoles, constructions")

    p = sub.add_parser("check-ew", help="Einstein-Weyl residuals of a catalog space")
    p.add_argument("--space", required=True)
    p.add_argument("--param", action="append", default=[])
    p.add_argument("--perturbed", action="store_true")
    _add_common(p)

    p = sub.add_parser("check-monopole", help="monopole-equation residuals")
    p.add_argument("--monopole", default=None, help="catalog name or 'canonical'")
    p.add_argument("--space", default=None)
    p.add_argument("--param", action="append", default=[])
    p.add_argument("--mparam", action="append", default=[])
    p.add_argument("--monopole-file", dest="monopole_file", default=None,
                   help="inline monopole JSON document")
    _add_common(p)

    p = sub.add_parser("build", help="build a metric bundle and write its JSON")
    _add_build_args(p)
    p.add_argument("--out", default=None)
    p.add_argument("--request", default=None)

    p = sub.add_parser("check-metric", help="4D diagnostics of a construction")
    _add_build_args(p, require_construction=False)
    p.add_argument("--einstein", action="store_true")
    p.add_argument("--selfdual", action="store_true")
    p.add_argument("--ricci-flat", dest="ricci_flat", action="store_true")
    p.add_argument("--legendrian", action="store_true")
    p.add_argument("--scal", action="store_true")
    p.add_argument("--complex", default=None, help="congruence name for J checks")
    _add_common(p)

    p = sub.add_parser("roundtrip", help="inverse-construction recovery residuals")
    _add_build_args(p, require_construction=False)
    _add_common(p)
    return ap


COMMANDS = {
    "catalog": cmd_catalog,
    "check-ew": cmd_check_ew,
    "check-monopole": cmd_check_monopole,
    "build": cmd_build,
    "check-metric": cmd_check_metric,
    "roundtrip": cmd_roundtrip,
}


def _apply_request_file(args):
    if getattr(args, "request", None):
        with open(args.request) as fh:
            doc = json.load(fh)
        for k, v in doc.items():
            setattr(args, k.replace("-", "_"), v)
    return args


def main(argv=None):
    ap = make_parser()
    args = ap.parse_args(argv)
    try:
        args = _apply_request_file(args)
        return COMMANDS[args.command](args)
    except USAGE_ERRORS as err:
        sys.stderr.write(
            dumps_canonical({"error": type(err).__name__, "message": str(err)}) + "\n"
        )
        return 2


if __name__ == "__main__":
    sys.exit(main())
