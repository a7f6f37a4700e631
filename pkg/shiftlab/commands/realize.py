"""
Realization verb.

Commands:
  realize  --subshift FILE --set FILE [--depth n] [--t0 N] [--levels L]
           → a point x with ω(x) = Z, checked at depths 1..n
"""

from __future__ import annotations

import argparse
from typing import Any, Dict, List

from shiftlab import catalog
from shiftlab.commands import (
    DEPTH,
    LEVELS,
    SET,
    SUBSHIFT,
    T0,
    CommandRouter,
    make_report,
    outcome,
    required,
)
from shiftlab.config import get_settings
from shiftlab.core import dyadic
from shiftlab.errors import PreconditionError
from shiftlab.models import AssertionOutcome, Report
from shiftlab.omega import attracting_check, omega_prefixes, sorted_words, z_prefixes
from shiftlab.shadowing import describe_shadow
from shiftlab.subshift import point_in_subshift
from shiftlab.transitivity import (
    FiniteEP,
    ict_realization,
    is_ict_on_ladder,
    realize_invariant_sft,
)

router = CommandRouter(tags=["realization"])


@router.command("realize", "realize a closed set as an ω-limit set", [
    SUBSHIFT, required(SET), DEPTH, T0, LEVELS,
])
def realize(args: argparse.Namespace) -> Report:
    """
    ICT sets go through the asymptotic pseudo-orbit and are also checked to
    be attracting. Other closed invariant sets need an explicit basis over
    the infinite alphabet and are realized by interleaving with fresh
    separators.
    """
    settings = get_settings()
    gamma = catalog.load_subshift(args.subshift)
    Z = catalog.load_set(args.set)
    if not isinstance(Z, FiniteEP):
        raise PreconditionError("realize", "needs a finite presentation (truncate the family)")

    assertions: List[AssertionOutcome] = []
    outputs: Dict[str, Any] = {}
    if is_ict_on_ladder(Z):
        method = "ict"
        realization = ict_realization(gamma, Z, args.horizon)
        x = realization.point
        e = settings.attracting_exponent
        N = realization.settle(e)
        outputs["settle"] = N
        assertions.append(outcome(
            f"attracting at 2^-{e}",
            attracting_check(x, Z, dyadic(e), N, max(settings.attracting_horizon, N + 1)),
        ))
    elif gamma.infinite_alphabet:
        method = "interleave"
        x = realize_invariant_sft(gamma, Z, args.horizon)
    else:
        raise PreconditionError(
            "realize", "Z is not internally chain transitive and the subshift has no fresh symbols",
        )

    assertions.insert(0, outcome("point in subshift", point_in_subshift(gamma, x, args.horizon)))
    omega: Dict[str, Any] = {}
    for n in range(1, args.depth + 1):
        approx = omega_prefixes(x, n, args.t0, args.levels)
        expected = z_prefixes(Z, n)
        omega[str(n)] = approx.to_report().model_dump()
        assertions.append(outcome(
            f"ω-prefixes at depth {n}",
            approx.prefixes == expected,
            f"expected {sorted_words(expected)}",
        ))
    outputs.update({"method": method, "point": describe_shadow(x, 64), "omega": omega})
    inputs = {"subshift": gamma.describe()["basis"], "set": Z.describe(), "depth": args.depth}
    return make_report("realize", inputs, outputs, assertions, {"horizon": args.horizon})
