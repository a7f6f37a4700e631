"""
Subshift verbs.

Commands:
  check    --subshift FILE [--from LIT]   → basis summary, membership of LIT
  allowed  --subshift FILE WORD           → local/global admissibility of WORD
  glue     --subshift FILE U W V          → gluing implication for one triple
"""

from __future__ import annotations

import argparse

from shiftlab import catalog
from shiftlab.commands import FROM, SUBSHIFT, CommandRouter, flag, make_report, outcome, word_arg
from shiftlab.core import format_word
from shiftlab.models import Report
from shiftlab.points import format_point
from shiftlab.subshift import (
    first_forbidden,
    gluing_bound,
    is_globally_allowed,
    is_locally_allowed,
    point_in_subshift,
    right_extensions,
    verify_gluing,
)

router = CommandRouter(tags=["subshift"])


@router.command("check", "validate a subshift spec", [SUBSHIFT, FROM])
def check(args: argparse.Namespace) -> Report:
    """
    Validate the basis and report L, the active alphabet and the kind flags.

    With --from, also checks membership of the point (exact for eventually
    periodic literals, to --horizon otherwise).
    """
    gamma = catalog.load_subshift(args.subshift)
    inputs = {"subshift": gamma.describe()["basis"]}
    assertions = [outcome("finite basis implies bounded basis", gamma.is_sbt or not gamma.is_sft)]
    outputs = {**gamma.describe(), "gluing_bound": gluing_bound(gamma)}
    if args.source is not None:
        inputs["from"] = format_point(args.source)
        verdict = point_in_subshift(gamma, args.source, max(args.horizon, gamma.L))
        assertions.append(outcome("point in subshift", verdict))
    return make_report("check", inputs, outputs, assertions, {"horizon": args.horizon})


@router.command("allowed", "local and global admissibility of a word", [
    SUBSHIFT, flag("word", type=word_arg, metavar="WORD", help='e.g. "0 4 1 1"'),
])
def allowed(args: argparse.Namespace) -> Report:
    """Globally allowed words are locally allowed; the report carries both answers."""
    gamma = catalog.load_subshift(args.subshift)
    w = args.word
    local = is_locally_allowed(gamma, w)
    global_ = is_globally_allowed(gamma, w)
    outputs = {
        "locally_allowed": local,
        "globally_allowed": global_,
        "first_forbidden": first_forbidden(gamma, w),
        "right_extensions": right_extensions(gamma, w) if global_ else [],
        "exact_alphabet": gamma.exact_alphabet,
    }
    assertions = [outcome("global implies local", local or not global_)]
    return make_report("allowed", {"word": format_word(w)}, outputs, assertions)


@router.command("glue", "gluing implication for uw, wv ⟹ uwv", [
    SUBSHIFT,
    flag("u", type=word_arg, metavar="U"),
    flag("w", type=word_arg, metavar="W"),
    flag("v", type=word_arg, metavar="V"),
])
def glue(args: argparse.Namespace) -> Report:
    """Fails with exit 2 when |W| is below the gluing bound."""
    gamma = catalog.load_subshift(args.subshift)
    u, w, v = args.u, args.w, args.v
    holds = verify_gluing(gamma, u, w, v)
    inputs = {"u": format_word(u), "w": format_word(w), "v": format_word(v)}
    outputs = {
        "gluing_bound": gluing_bound(gamma),
        "uw_allowed": is_globally_allowed(gamma, u + w),
        "wv_allowed": is_globally_allowed(gamma, w + v),
        "uwv_allowed": is_globally_allowed(gamma, u + w + v),
    }
    return make_report("glue", inputs, outputs, [outcome("gluing", holds)])
