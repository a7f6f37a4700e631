"""
shiftlab: command-line entry point.

Usage:
    python -m shiftlab demo remark1
    python -m shiftlab chain --subshift monotone.json --from "|2" --to "|3" --delta 2^-1

Verbs served (see the router modules):
    check, allowed, glue        shiftlab.commands.check
    shadow                      shiftlab.commands.shadow
    chain, ict                  shiftlab.commands.chain
    realize                     shiftlab.commands.realize
    omega                       shiftlab.commands.omega
    demo                        shiftlab.commands.demo

Exit codes: 0 every assertion passed, 1 an assertion or construction
failed, 2 the arguments, a spec file or a precondition were rejected.
"""

from __future__ import annotations

import argparse
import logging
import sys
from pathlib import Path
from typing import Dict, List, Optional, Sequence

from shiftlab.commands import CommandError, CommandRouter, Handler, chain, check, demo, omega, realize, shadow
from shiftlab.config import get_settings
from shiftlab.errors import ShiftLabError
from shiftlab.models import Report

logger = logging.getLogger(__name__)


class CommandApp:
    """An argparse program assembled from command routers."""

    def __init__(self, prog: str, description: str) -> None:
        self.parser = argparse.ArgumentParser(
            prog=prog, description=description, formatter_class=argparse.RawDescriptionHelpFormatter,
        )
        self._common = argparse.ArgumentParser(add_help=False)
        self._common.add_argument("--json", metavar="PATH", help="write the report here instead of stdout")
        self._common.add_argument("--horizon", type=int, metavar="N", help="scan horizon for non-periodic points")
        self._common.add_argument("--verbose", "-v", action="store_true", help="debug logging on stderr")
        self._verbs = self.parser.add_subparsers(dest="verb", metavar="VERB", required=True)
        self.handlers: Dict[str, Handler] = {}
        self.groups: Dict[str, List[str]] = {}

    def include_router(self, router: CommandRouter) -> None:
        for route in router.routes:
            sub = self._verbs.add_parser(route.name, help=route.help, parents=[self._common])
            for f in route.flags:
                f.add_to(sub)
            self.handlers[route.name] = route.handler
            for tag in router.tags or ("other",):
                self.groups.setdefault(tag, []).append(route.name)
        self.parser.epilog = "verb groups:\n" + "\n".join(
            f"  {tag:<14}{', '.join(names)}" for tag, names in self.groups.items()
        )


# ── App instance ───────────────────────────────────────────────────────────────

app = CommandApp(
    prog="shiftlab",
    description="Shadowing, chain transitivity and ω-limit sets in subshifts of Baire space.",
)

# ── Routers ────────────────────────────────────────────────────────────────────

app.include_router(check.router)
app.include_router(shadow.router)
app.include_router(chain.router)
app.include_router(realize.router)
app.include_router(omega.router)
app.include_router(demo.router)


# ── Run ────────────────────────────────────────────────────────────────────────

def _configure_logging(verbose: bool) -> None:
    logging.basicConfig(
        level=logging.DEBUG if verbose else logging.WARNING,
        format="%(levelname)s %(name)s: %(message)s",
        stream=sys.stderr,
        force=True,
    )


def _emit(report: Report, path: Optional[str]) -> None:
    text = report.model_dump_json(indent=2) + "\n"
    if path is None:
        sys.stdout.write(text)
    else:
        Path(path).write_text(text, encoding="utf-8")


def run(argv: Optional[Sequence[str]] = None) -> int:
    """Parse argv, run the verb, emit its report; returns the exit code."""
    try:
        args = app.parser.parse_args(argv)
    except SystemExit as exc:
        return exc.code if isinstance(exc.code, int) else 2

    _configure_logging(args.verbose)
    try:
        if args.horizon is None:
            args.horizon = get_settings().horizon
        elif args.horizon < 1:
            raise CommandError(2, "--horizon must be positive")
        report = app.handlers[args.verb](args)
    except ShiftLabError as exc:
        logger.debug("%s failed", args.verb, exc_info=True)
        sys.stderr.write(f"error: {exc.detail}\n")
        return exc.exit_code

    _emit(report, args.json)
    if not report.passed:
        failed = [a.name for a in report.assertions if not a.passed]
        sys.stderr.write(f"failed: {', '.join(failed)}\n")
    return 0 if report.passed else 1


def main() -> None:
    sys.exit(run(sys.argv[1:]))
