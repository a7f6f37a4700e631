"""
Shadowing verb.

Commands:
  shadow  --subshift FILE --po FILE --eps 2^-m   → synthesized ε-shadow of the pseudo-orbit
"""

from __future__ import annotations

import argparse

from shiftlab import catalog
from shiftlab.commands import EPS, PO, SUBSHIFT, CommandRouter, make_report, outcome
from shiftlab.errors import PreconditionError
from shiftlab.models import Report
from shiftlab.points import format_point, parse_point
from shiftlab.shadowing import (
    describe_shadow,
    shadowing_modulus,
    synthesize_shadow,
    verify_pseudo_orbit,
    verify_shadow,
)
from shiftlab.subshift import point_in_subshift

router = CommandRouter(tags=["shadowing"])


@router.command("shadow", "synthesize a shadow for a finite pseudo-orbit", [SUBSHIFT, PO, EPS])
def shadow(args: argparse.Namespace) -> Report:
    """
    Compute (M, δ) for ε, check the pseudo-orbit against δ, and synthesize
    the diagonal shadow.

    A pseudo-orbit whose claimed bound exceeds δ is a precondition failure
    (exit 2); a shadow that fails its own checks is exit 1.
    """
    gamma = catalog.load_subshift(args.subshift)
    po = catalog.load_pseudo_orbit(args.po)
    M, delta = shadowing_modulus(gamma, args.eps)
    if po.delta > delta:
        raise PreconditionError(
            "shadow", f"the pseudo-orbit bound {po.delta} exceeds the modulus δ = {delta} for ε = {args.eps}",
        )
    horizon = max(args.horizon, len(po.points) + M + gamma.L)
    z = synthesize_shadow(gamma, po, horizon)

    literal = format_point(z)
    assertions = [
        outcome("pseudo-orbit defects below δ", verify_pseudo_orbit(po, horizon)),
        outcome("shadow in subshift", point_in_subshift(gamma, z, horizon)),
        outcome("ε-shadowing", verify_shadow(z, po, args.eps, horizon)),
    ]
    if literal is not None:
        assertions.append(outcome("literal re-parses", parse_point(literal) == z))
    inputs = {
        "subshift": gamma.describe()["basis"],
        "po": {"delta": str(po.delta), "points": [format_point(p) for p in po.points]},
        "eps": str(args.eps),
    }
    outputs = {"M": M, "delta": str(delta), "shadow": describe_shadow(z, min(horizon, 64))}
    return make_report("shadow", inputs, outputs, assertions, {"horizon": horizon})
