"""Regenerate the golden CLI reports under golden/.

Each golden file stores the argv of a CLI invocation together with its
report (timing stripped); the test suite re-runs the invocation and
requires a byte-identical canonical body.
"""

import io
import json
import os
import sys
from contextlib import redirect_stdout

sys.path.insert(0, os.path.join(os.path.dirname(__file__), "..", "src"))

from weylab.cli import dumps_canonical, main

GOLDEN = [
    ("ew_flat_r3", ["check-ew", "--space", "flat-r3", "--points", "5", "--seed", "11"]),
    ("ew_round_s3", ["check-ew", "--space", "round-s3", "--points", "5", "--seed", "11"]),
    (
        "ew_hypercr_toda",
        ["check-ew", "--space", "hypercr-toda", "--param", "h=zeta^2 + i", "--points", "5", "--seed", "11"],
    ),
    (
        "ew_geodesic_symmetry",
        ["check-ew", "--space", "geodesic-symmetry", "--param", "f=1", "--points", "5", "--seed", "11"],
    ),
    (
        "ew_ward_toda",
        ["check-ew", "--space", "ward-toda", "--param", "V=log(rho)", "--points", "5", "--seed", "11"],
    ),
    (
        "monopole_gibbons_hawking",
        ["check-monopole", "--monopole", "gibbons-hawking", "--space", "flat-r3", "--points", "5", "--seed", "11"],
    ),
    (
        "monopole_strachan",
        ["check-monopole", "--monopole", "strachan", "--space", "hypercr-toda", "--param", "h=i", "--points", "5", "--seed", "11"],
    ),
    (
        "monopole_theorem_ix",
        ["check-monopole", "--monopole", "theorem-ix", "--space", "geodesic-symmetry", "--param", "f=1", "--points", "5", "--seed", "11"],
    ),
    (
        "monopole_canonical_ward_toda",
        ["check-monopole", "--monopole", "canonical", "--space", "ward-toda", "--param", "V=eta", "--points", "5", "--seed", "11"],
    ),
    (
        "metric_hitchin_lebrun_round_s3",
        ["check-metric", "--construction", "hitchin-lebrun", "--base", "round-s3", "--points", "4", "--seed", "11"],
    ),
    (
        "metric_hypercomplex_einstein",
        ["check-metric", "--construction", "hypercomplex-einstein", "--param", "h=zeta^2 + i", "--points", "4", "--seed", "11"],
    ),
    (
        "metric_gibbons_hawking",
        [
            "check-metric", "--construction", "monopole", "--base", "flat-r3",
            "--monopole", "gibbons-hawking", "--ricci-flat", "--selfdual",
            "--points", "4", "--seed", "11",
        ],
    ),
    (
        "roundtrip_theorem_ix",
        ["roundtrip", "--construction", "theorem-ix", "--base", "hypercr-toda", "--param", "h=i", "--points", "4", "--seed", "11"],
    ),
]


def make(out_dir):
    os.makedirs(out_dir, exist_ok=True)
    for name, argv in GOLDEN:
        buf = io.StringIO()
        with redirect_stdout(buf):
            code = main(argv)
        report = json.loads(buf.getvalue())
        report.pop("timing")
        body = dumps_canonical({"argv": argv, "report": report})
        path = os.path.join(out_dir, f"{name}.json")
        with open(path, "w") as fh:
            fh.write(body + "\n")
        print(f"[exit {code}] {path}")


if __name__ == "__main__":
    make(os.path.join(os.path.dirname(__file__), "..", "golden"))
