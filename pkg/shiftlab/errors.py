"""
Error hierarchy for shiftlab.

Every error carries a human-readable ``detail`` and an ``exit_code``; the CLI
returns that code from ``shiftlab.main.run``:

  SpecError          → exit 2  malformed basis / literal / JSON file
  PreconditionError  → exit 2  an operation was called outside its contract
  ConstructionError  → exit 1  a construction could not be completed
  VerificationError  → exit 1  a construction failed its own post-check
"""

from __future__ import annotations

from typing import Optional


class ShiftLabError(Exception):
    """Base class for every error raised by the library."""

    exit_code = 1

    def __init__(self, detail: str) -> None:
        super().__init__(detail)
        self.detail = detail


class SpecError(ShiftLabError, ValueError):
    """A subshift spec, literal or input file could not be parsed or validated."""

    exit_code = 2


class PreconditionError(ShiftLabError):
    """An operation was invoked with arguments violating its precondition."""

    exit_code = 2

    def __init__(self, operation: str, detail: str) -> None:
        super().__init__(f"{operation}: {detail}")
        self.operation = operation


class ConstructionError(ShiftLabError):
    """A construction step had no admissible choice."""

    def __init__(self, detail: str, witness: Optional[object] = None) -> None:
        super().__init__(detail)
        self.witness = witness


class VerificationError(ShiftLabError):
    """A constructed object failed the verification it is guaranteed to pass."""
