"""
Pydantic models (input files / JSON reports) for shiftlab.

All models use Pydantic v2 BaseModel. Input files are UTF-8 JSON:

  subshift      {"kind":"sft","forbidden":[[2,1],[0,1,0]]}
                {"kind":"sft","forbidden":[[0,1],[2]],"alphabet":[0,1,2]}
                {"kind":"rule","name":"monotone","direction":"non-increasing",
                 "max_len":2,"alphabet_bound":16}
  pseudo-orbit  {"delta":"2^-3","points":["0 1|2", "1|2"]}
  set           {"kind":"finite","points":["|0","|1"]}
                {"kind":"family","name":"remark2"}
"""

from __future__ import annotations

from typing import Annotated, Any, Dict, List, Literal, Optional, Union

from pydantic import BaseModel, ConfigDict, Field, TypeAdapter, field_validator

from shiftlab.core import parse_dyadic
from shiftlab.points import parse_point


# ── Subshift specs ─────────────────────────────────────────────────────────────

class SftSpec(BaseModel):
    """An explicit finite forbidden basis, optionally over a finite declared alphabet."""

    model_config = ConfigDict(extra="forbid")

    kind: Literal["sft"]
    forbidden: List[List[int]] = []
    alphabet: Optional[List[int]] = None

    @field_validator("forbidden")
    @classmethod
    def words_valid(cls, v: List[List[int]]) -> List[List[int]]:
        """Basis words must be nonempty, nonnegative and pairwise distinct."""
        seen = set()
        for word in v:
            if not word:
                raise ValueError("forbidden words must be nonempty")
            if any(s < 0 for s in word):
                raise ValueError("symbols must be nonnegative")
            if tuple(word) in seen:
                raise ValueError(f"duplicate forbidden word {word}")
            seen.add(tuple(word))
        return v

    @field_validator("alphabet")
    @classmethod
    def alphabet_valid(cls, v: Optional[List[int]]) -> Optional[List[int]]:
        """A declared alphabet must be a nonempty set of nonnegative symbols."""
        if v is None:
            return v
        if not v or any(s < 0 for s in v):
            raise ValueError("alphabet must be a nonempty list of nonnegative symbols")
        return sorted(set(v))


class RuleSpec(BaseModel):
    """A named bounded-length rule from the catalog."""

    model_config = ConfigDict(extra="forbid")

    kind: Literal["rule"]
    name: str
    direction: str = "non-increasing"
    max_len: int = 2
    alphabet_bound: int = 16

    @field_validator("max_len", "alphabet_bound")
    @classmethod
    def positive(cls, v: int) -> int:
        """max_len and alphabet_bound must be positive."""
        if v < 1:
            raise ValueError("must be a positive integer")
        return v


SubshiftSpec = Annotated[Union[SftSpec, RuleSpec], Field(discriminator="kind")]
SUBSHIFT_SPEC = TypeAdapter(SubshiftSpec)


# ── Pseudo-orbits ──────────────────────────────────────────────────────────────

class PseudoOrbitSpec(BaseModel):
    """A finite pseudo-orbit file: claimed bound plus point literals."""

    model_config = ConfigDict(extra="forbid")

    delta: str
    points: List[str]

    @field_validator("delta")
    @classmethod
    def delta_literal(cls, v: str) -> str:
        """delta must be a dyadic literal (2^-m or 1)."""
        parse_dyadic(v)
        return v

    @field_validator("points")
    @classmethod
    def points_literals(cls, v: List[str]) -> List[str]:
        """Points must be nonempty and parse as point literals."""
        if not v:
            raise ValueError("a pseudo-orbit needs at least one point")
        for literal in v:
            parse_point(literal)
        return v


# ── Set presentations ──────────────────────────────────────────────────────────

class FiniteSetSpec(BaseModel):
    """A finite set of eventually periodic points."""

    model_config = ConfigDict(extra="forbid")

    kind: Literal["finite"]
    points: List[str]

    @field_validator("points")
    @classmethod
    def eventually_periodic(cls, v: List[str]) -> List[str]:
        """Every member must be an eventually periodic literal."""
        for literal in v:
            if not parse_point(literal).is_periodic:
                raise ValueError(f"{literal!r} is not an eventually periodic literal")
        return v


class FamilySetSpec(BaseModel):
    """A named infinite family; `truncate` turns it into a finite presentation."""

    model_config = ConfigDict(extra="forbid")

    kind: Literal["family"]
    name: str
    truncate: Optional[int] = None


SetSpec = Annotated[Union[FiniteSetSpec, FamilySetSpec], Field(discriminator="kind")]
SET_SPEC = TypeAdapter(SetSpec)


# ── Reports ────────────────────────────────────────────────────────────────────

class LadderOut(BaseModel):
    """Ladder parameters of an ω-limit approximation."""

    t0: int
    levels: int


class OmegaReport(BaseModel):
    """Finite-depth ω-limit approximation."""

    depth: int
    prefixes: List[str]
    ladder: LadderOut
    exact: bool


class AssertionOutcome(BaseModel):
    """One checked claim of a run."""

    name: str
    passed: bool
    detail: str = ""


class Report(BaseModel):
    """Top-level JSON report emitted by every command."""

    command: str
    inputs: Dict[str, Any] = {}
    outputs: Dict[str, Any] = {}
    provenance: Dict[str, Any] = {}
    assertions: List[AssertionOutcome] = []
    passed: bool = True
