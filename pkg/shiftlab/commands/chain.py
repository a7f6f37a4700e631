"""
Chain verbs.

Commands:
  chain  --subshift FILE --from LIT --to LIT --delta 2^-m [--set FILE] [--max-len N]
         → a δ-chain, or exit 1 with an absence certificate
  ict    --set FILE [--delta 2^-m] [--max-len N]
         → ICT at one δ, or on the default δ-ladder
"""

from __future__ import annotations

import argparse
from typing import Any, Dict, List

from shiftlab import catalog
from shiftlab.commands import (
    DELTA,
    FROM,
    MAX_LEN,
    SET,
    SUBSHIFT,
    TO,
    CommandRouter,
    make_report,
    outcome,
    required,
)
from shiftlab.config import get_settings
from shiftlab.core import distance
from shiftlab.errors import PreconditionError
from shiftlab.models import Report
from shiftlab.points import format_point, shift_point
from shiftlab.shadowing import describe_shadow
from shiftlab.subshift import point_in_subshift
from shiftlab.transitivity import (
    DeltaChain,
    FiniteEP,
    chain_symbol_bound,
    check_closed_invariant,
    confinement_certificate,
    find_delta_chain,
    is_ict,
    is_ict_on_ladder,
    is_non_increasing,
    sft_connecting_chain,
    subshift_delta_chain,
)

router = CommandRouter(tags=["transitivity"])


def _chain_out(chain: DeltaChain, horizon: int) -> Dict[str, Any]:
    links: List[str] = []
    for i in range(chain.steps):
        links.append(str(distance(shift_point(chain.entries[i], 1), chain.entries[i + 1], horizon)))
    return {
        "delta": str(chain.delta),
        "steps": chain.steps,
        "entries": [describe_shadow(p, 16) for p in chain.entries],
        "link_distances": links,
    }


@router.command("chain", "search or construct a δ-chain", [
    SUBSHIFT, required(FROM), required(TO), required(DELTA), SET, MAX_LEN,
])
def chain(args: argparse.Namespace) -> Report:
    """
    With --set, breadth-first search inside the presented set. Without it,
    explicit bases over the infinite alphabet get the fresh-symbol
    connecting chain; other subshifts are searched through their allowed
    k-words, which decides existence exactly over the search alphabet.
    """
    gamma = catalog.load_subshift(args.subshift)
    x, y, delta = args.source, args.target, args.delta
    max_len = args.max_len or get_settings().chain_max_len
    horizon = max(args.horizon, gamma.L)
    for name, p in (("from", x), ("to", y)):
        if not point_in_subshift(gamma, p, horizon):
            raise PreconditionError("chain", f"the {name} point is not in the subshift")

    inputs = {
        "subshift": gamma.describe()["basis"],
        "from": format_point(x),
        "to": format_point(y),
        "delta": str(delta),
    }
    if args.set is not None:
        Z = catalog.load_set(args.set)
        found = find_delta_chain(Z, x, y, delta, max_len)
        method = "search"
    elif gamma.infinite_alphabet:
        found = sft_connecting_chain(gamma, x, y, delta)
        method = "fresh-symbol"
    else:
        found = subshift_delta_chain(gamma, x, y, delta, max_len)
        method = "window-search"
    inputs["method"] = method

    if found is None:
        scope = "inside the set" if method == "search" else "in the subshift"
        certificate = confinement_certificate(gamma, x, y) or (
            f"exhaustive search: no {delta}-chain {scope} within {max_len} entries"
        )
        outputs = {"chain": None, "certificate": certificate}
        return make_report("chain", inputs, outputs, [outcome("chain exists", False, certificate)])

    assertions = [outcome("links below δ", found.verify(horizon))]
    assertions.append(outcome(
        "entries in subshift",
        all(point_in_subshift(gamma, p, horizon) for p in found.entries),
    ))
    if is_non_increasing(gamma):
        assertions.append(outcome("symbols bounded by the first entry", chain_symbol_bound(found, horizon)))
    outputs = {"chain": _chain_out(found, horizon)}
    return make_report("chain", inputs, outputs, assertions, {"horizon": horizon, "max_len": max_len})


@router.command("ict", "internal chain transitivity of a finite set", [required(SET), DELTA, MAX_LEN])
def ict(args: argparse.Namespace) -> Report:
    """One rung with --delta, else the default δ-ladder down past the separation scale."""
    Z = catalog.load_set(args.set)
    if not isinstance(Z, FiniteEP):
        raise PreconditionError("ict", "needs a finite presentation (truncate the family)")
    max_len = args.max_len or max(get_settings().chain_max_len, len(Z) + 1)
    inputs: Dict[str, Any] = {"set": Z.describe()}
    outputs: Dict[str, Any] = {"closed_invariant": check_closed_invariant(Z)}
    if args.delta is not None:
        inputs["delta"] = str(args.delta)
        verdict = is_ict(Z, args.delta, max_len)
        assertions = [outcome(f"ICT at {args.delta}", verdict)]
    else:
        verdict = is_ict_on_ladder(Z, max_len=max_len)
        assertions = [outcome("ICT on the δ-ladder", verdict)]
    outputs["ict"] = bool(verdict)
    return make_report("ict", inputs, outputs, assertions, {"max_len": max_len})
