"""
Command routers for the shiftlab CLI.

Each verb module exposes a `router` whose handlers take the parsed argparse
namespace and return a Report. main.py mounts every router with
include_router; exit codes are decided there from the report or the error.
"""

from __future__ import annotations

import argparse
from dataclasses import dataclass, field
from typing import Any, Callable, Dict, Iterable, List, Optional, Sequence, Tuple

from shiftlab.config import get_settings
from shiftlab.core import Verdict, parse_dyadic, parse_word
from shiftlab.errors import ShiftLabError, SpecError
from shiftlab.models import AssertionOutcome, Report
from shiftlab.points import parse_point

Handler = Callable[[argparse.Namespace], Report]


class CommandError(ShiftLabError):
    """An error raised by a handler with an explicit exit code."""

    def __init__(self, exit_code: int, detail: str) -> None:
        super().__init__(detail)
        self.exit_code = exit_code


# ── Flags ──────────────────────────────────────────────────────────────────────

@dataclass
class Flag:
    names: Tuple[str, ...]
    options: Dict[str, Any] = field(default_factory=dict)

    def add_to(self, parser: argparse.ArgumentParser) -> None:
        parser.add_argument(*self.names, **self.options)


def flag(*names: str, **options: Any) -> Flag:
    return Flag(tuple(names), options)


def required(f: Flag) -> Flag:
    return Flag(f.names, {**f.options, "required": True})


def _argtype(parse: Callable[[str], Any]) -> Callable[[str], Any]:
    # argparse reports ValueError/TypeError/ArgumentTypeError as usage errors (exit 2).
    def convert(text: str) -> Any:
        try:
            return parse(text)
        except SpecError as exc:
            raise argparse.ArgumentTypeError(exc.detail) from exc
    convert.__name__ = parse.__name__
    return convert


point_arg = _argtype(parse_point)
word_arg = _argtype(parse_word)
dyadic_arg = _argtype(parse_dyadic)

SUBSHIFT = flag("--subshift", required=True, metavar="FILE", help="subshift spec (JSON)")
PO = flag("--po", required=True, metavar="FILE", help="pseudo-orbit file (JSON)")
SET = flag("--set", metavar="FILE", help="set presentation (JSON)")
FROM = flag("--from", dest="source", type=point_arg, metavar="LIT", help="point literal")
TO = flag("--to", dest="target", type=point_arg, metavar="LIT", help="point literal")
DELTA = flag("--delta", type=dyadic_arg, metavar="2^-m", help="chain bound δ")
EPS = flag("--eps", type=dyadic_arg, required=True, metavar="2^-m", help="shadowing bound ε")
DEPTH = flag("--depth", type=int, default=3, metavar="n", help="prefix depth")
T0 = flag("--t0", type=int, metavar="N", help="first ladder window start")
LEVELS = flag("--levels", type=int, metavar="L", help="number of ladder windows")
MAX_LEN = flag("--max-len", dest="max_len", type=int, metavar="N", help="longest chain searched")


# ── Router ─────────────────────────────────────────────────────────────────────

@dataclass(frozen=True)
class Route:
    name: str
    help: str
    flags: Tuple[Flag, ...]
    handler: Handler


class CommandRouter:
    """Collects verbs and their flags; mounted on the app by include_router."""

    def __init__(self, tags: Sequence[str] = ()) -> None:
        self.tags = tuple(tags)
        self.routes: List[Route] = []

    def command(self, name: str, help: str, flags: Iterable[Flag] = ()) -> Callable[[Handler], Handler]:
        def decorator(fn: Handler) -> Handler:
            self.routes.append(Route(name, help, tuple(flags), fn))
            return fn
        return decorator


# ── Report helpers ─────────────────────────────────────────────────────────────

def outcome(name: str, verdict: Any, detail: str = "") -> AssertionOutcome:
    """An assertion from a bool or a Verdict (its note and violation go into the detail)."""
    if isinstance(verdict, Verdict):
        parts = [detail] if detail else []
        if verdict.violation is not None:
            parts.append(f"first violation at {verdict.violation}")
        if verdict.note:
            parts.append(verdict.note)
        if not verdict.exact:
            parts.append("horizon-checked")
        return AssertionOutcome(name=name, passed=verdict.ok, detail="; ".join(parts))
    return AssertionOutcome(name=name, passed=bool(verdict), detail=detail)


def make_report(
    command: str,
    inputs: Optional[Dict[str, Any]] = None,
    outputs: Optional[Dict[str, Any]] = None,
    assertions: Sequence[AssertionOutcome] = (),
    provenance: Optional[Dict[str, Any]] = None,
) -> Report:
    """Assemble a report; passed is the conjunction of its assertions."""
    return Report(
        command=command,
        inputs=inputs or {},
        outputs=outputs or {},
        provenance={"settings": get_settings().model_dump(), **(provenance or {})},
        assertions=list(assertions),
        passed=all(a.passed for a in assertions),
    )
