"""Metric-bundle JSON interchange between `build` and the check commands.

The document records the chart, expression-string metric components where
the construction yields closed forms (null entries otherwise), and a
provenance block sufficient to rebuild the bundle exactly; provenance
round-trips losslessly.
"""

from __future__ import annotations

import json

from .catalog import make_catalog_space
from .charts import ExprField
from .metrics4d import Metric4Bundle

__all__ = ["bundle_to_doc", "doc_to_bundle", "write_bundle", "read_bundle", "build_construction"]


def bundle_to_doc(M: Metric4Bundle) -> dict:
    n = M.chart.dim
    metric = []
    for i in range(n):
        row = []
        for j in range(n):
            comp = M.g.component(i, j)
            row.append(comp.source if isinstance(comp, ExprField) else None)
        metric.append(row)
    exclusions = [
        f.source for f in M.chart.exclusions if isinstance(f, ExprField)
    ]
    mono = None
    if M.params.get("monopole_name"):
        mono = {
            "name": M.params["monopole_name"],
            "params": M.params.get("monopole_params", {}),
        }
    params = {
        k: v
        for k, v in M.params.items()
        if k not in ("monopole_name", "monopole_params", "chi") and _jsonable(v)
    }
    return {
        "dim": n,
        "coords": list(M.chart.coord_names),
        "metric": metric,
        "orientation": M.g.orientation_sign,
        "exclusions": exclusions,
        "sample_domain": {k: list(v) for k, v in M.chart.sample_domain.items()},
        "params": params,
        "provenance": {
            "construction": M.construction,
            "base": {"name": M.base.name.split("+")[0], "params": dict(M.base.params)},
            "monopole": mono,
            "t_domain": list(M.chart.sample_domain["t"]),
        },
    }


def _jsonable(v):
    return isinstance(v, (str, int, float, bool, list, dict, tuple, type(None)))


def build_construction(construction, base_name, base_params=None, monopole_name=None,
                       monopole_params=None, t_domain=None, **kwargs) -> Metric4Bundle:
    """Construct a bundle from catalog names (the provenance vocabulary)."""
    from .charts import ConstField, FormField
    from .metrics4d import (
        assemble_from_monopole,
        explicit_einstein_hypercomplex_family,
        hitchin_lebrun_metric,
        sfk_metric,
        theorem_ix_metric,
    )
    from .monopoles import make_catalog_monopole

    base_params = dict(base_params or {})
    if construction == "hypercomplex-einstein":
        h = base_params.get("h", kwargs.get("h", "i"))
        M = explicit_einstein_hypercomplex_family(h, t_domain=t_domain)
        return M
    W = make_catalog_space(base_name, base_params)
    if construction == "monopole":
        if monopole_name is None:
            raise ValueError("monopole construction needs a monopole name")
        m = make_catalog_monopole(monopole_name, W, monopole_params)
        M = assemble_from_monopole(W, m, t_domain=t_domain or (0.2, 1.0),
                                   gauge=kwargs.get("gauge", "w"))
    elif construction == "hitchin-lebrun":
        M = hitchin_lebrun_metric(W, t_domain=t_domain)
    elif construction == "theorem-ix":
        M = theorem_ix_metric(W, t_domain=t_domain)
    elif construction == "sfk":
        chi_name = kwargs.get("chi") or next(iter(W.congruences), None)
        if chi_name is None or chi_name not in W.congruences:
            raise ValueError(
                f"sfk needs a congruence; base {base_name!r} offers {sorted(W.congruences)}"
            )
        rho = ExprField(W.chart, str(kwargs.get("rho", "1")))
        phi_sources = kwargs.get("Phi")
        if phi_sources:
            Phi = FormField(
                W.chart, 1, {(i,): ExprField(W.chart, s) for i, s in enumerate(phi_sources) if s}
            )
        else:
            Phi = FormField.zero_form(W.chart)
        M = sfk_metric(W, W.congruences[chi_name], rho, Phi, t_domain=t_domain)
        M.params["chi_name"] = chi_name
        M.params["rho"] = str(kwargs.get("rho", "1"))
        M.params["Phi"] = list(phi_sources) if phi_sources else None
    else:
        raise ValueError(f"unknown construction {construction!r}")
    if monopole_name is not None:
        M.params["monopole_name"] = monopole_name
        M.params["monopole_params"] = dict(monopole_params or {})
    return M


def doc_to_bundle(doc: dict) -> Metric4Bundle:
    prov = doc["provenance"]
    mono = prov.get("monopole") or {}
    params = doc.get("params", {})
    kwargs = {}
    if prov["construction"] == "sfk":
        kwargs = {
            "chi": params.get("chi_name"),
            "rho": params.get("rho", "1"),
            "Phi": params.get("Phi"),
        }
    if prov["construction"] == "monopole" and "gauge" in params:
        kwargs["gauge"] = params["gauge"]
    return build_construction(
        prov["construction"],
        prov["base"]["name"],
        prov["base"].get("params"),
        monopole_name=mono.get("name"),
        monopole_params=mono.get("params"),
        t_domain=tuple(prov["t_domain"]),
        **kwargs,
    )


def write_bundle(M: Metric4Bundle, path):
    with open(path, "w") as fh:
        json.dump(bundle_to_doc(M), fh, indent=2)
        fh.write("\n")


def read_bundle(path) -> Metric4Bundle:
    with open(path) as fh:
        return doc_to_bundle(json.load(fh))
