"""
ω-limit verb.

Commands:
  omega  --from LIT [--depth n] [--t0 N] [--levels L] [--set FILE]
         → depth-n prefixes of ω(LIT); with --set, compared against Z
"""

from __future__ import annotations

import argparse

from shiftlab import catalog
from shiftlab.commands import DEPTH, FROM, LEVELS, SET, T0, CommandRouter, make_report, outcome, required
from shiftlab.models import Report
from shiftlab.omega import omega_prefixes, sorted_words, z_prefixes
from shiftlab.points import format_point

router = CommandRouter(tags=["omega"])


@router.command("omega", "finite-depth ω-limit prefixes of a point", [
    required(FROM), DEPTH, T0, LEVELS, SET,
])
def omega(args: argparse.Namespace) -> Report:
    approx = omega_prefixes(args.source, args.depth, args.t0, args.levels)
    inputs = {"from": format_point(args.source), "depth": args.depth}
    assertions = []
    if args.set is not None:
        Z = catalog.load_set(args.set)
        inputs["set"] = Z.describe()
        expected = z_prefixes(Z, args.depth)
        assertions.append(outcome(
            "ω-prefixes equal Z's prefixes",
            approx.prefixes == expected,
            f"expected {sorted_words(expected)}",
        ))
    return make_report("omega", inputs, approx.to_report().model_dump(), assertions)
