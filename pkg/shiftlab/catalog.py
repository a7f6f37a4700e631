"""
Named rules, set families and the validated-subshift cache.

Call reset_catalog() between tests.

Registries:
  RULES       : Dict[name, builder(direction, max_len, alphabet_bound) → BoundedRule]
  FAMILIES    : Dict[name, factory() → set presentation]
  _subshifts  : Dict[canonical spec JSON, Subshift]  : one window graph per spec

File loaders turn UTF-8 JSON into library objects and report every problem
as a SpecError.
"""

from __future__ import annotations

import logging
from pathlib import Path
from typing import Callable, Dict, Iterable, Union

from pydantic import ValidationError

from shiftlab.core import Word, parse_dyadic
from shiftlab.errors import SpecError
from shiftlab.models import (
    SET_SPEC,
    SUBSHIFT_SPEC,
    FamilySetSpec,
    FiniteSetSpec,
    PseudoOrbitSpec,
    RuleSpec,
    SftSpec,
)
from shiftlab.points import parse_point
from shiftlab.shadowing import PseudoOrbit
from shiftlab.subshift import BoundedRule, ExplicitFinite, Subshift, validate_basis
from shiftlab import transitivity
from shiftlab.transitivity import FiniteEP, Remark2Family, SetPresentation

logger = logging.getLogger(__name__)


# ── Rules ──────────────────────────────────────────────────────────────────────

MONOTONE_DIRECTIONS = ("non-increasing", "non-decreasing")


def monotone_rule(direction: str = "non-increasing", max_len: int = 2, alphabet_bound: int = 16) -> BoundedRule:
    """
    Two-symbol monotonicity rule.

    non-increasing forbids every pair s t with s < t, so points never climb;
    non-decreasing forbids s > t.
    """
    if direction not in MONOTONE_DIRECTIONS:
        raise SpecError(f"unknown monotone direction {direction!r}")
    if max_len < 2:
        raise SpecError("the monotone rule needs max_len ≥ 2")
    if direction == "non-increasing":
        rule: Callable[[Word], bool] = lambda w: len(w) == 2 and w[0] < w[1]
    else:
        rule = lambda w: len(w) == 2 and w[0] > w[1]
    return BoundedRule(
        name="monotone",
        max_len=max_len,
        rule=rule,
        alphabet_bound=alphabet_bound,
        params=(("direction", direction),),
    )


RULES: Dict[str, Callable[..., BoundedRule]] = {
    "monotone": monotone_rule,
}

FAMILIES: Dict[str, Callable[[], SetPresentation]] = {
    "remark2": Remark2Family,
}

_subshifts: Dict[str, Subshift] = {}


# ── Named subshifts ────────────────────────────────────────────────────────────

def full_shift() -> Subshift:
    """The full shift over ω."""
    return subshift_from_spec(SftSpec(kind="sft", forbidden=[]))


def dichotomy_sft(alphabet: Iterable[int] = (0, 1, 2), s0: int = 0, s1: int = 1) -> Subshift:
    """
    Finite alphabet, forbidden {s0 s1} plus every symbol other than s0, s1.

    Its points are s1^k s0^ω and s1^ω: countably many, and no chain
    leads from s0^ω to s1^ω.
    """
    alphabet = sorted(set(alphabet))
    if s0 not in alphabet or s1 not in alphabet or s0 == s1:
        raise SpecError("s0 and s1 must be two distinct symbols of the alphabet")
    forbidden = [[s0, s1]] + [[a] for a in alphabet if a not in (s0, s1)]
    return subshift_from_spec(SftSpec(kind="sft", forbidden=forbidden, alphabet=alphabet))


# ── Spec conversion ────────────────────────────────────────────────────────────

def subshift_from_spec(spec: Union[SftSpec, RuleSpec]) -> Subshift:
    """Validate a subshift spec once; later calls with the same spec share the result."""
    key = spec.model_dump_json()
    if key in _subshifts:
        return _subshifts[key]
    if isinstance(spec, SftSpec):
        words = frozenset(tuple(w) for w in spec.forbidden)
        alphabet = frozenset(spec.alphabet) if spec.alphabet is not None else None
        gamma = validate_basis(ExplicitFinite(words, alphabet))
    else:
        builder = RULES.get(spec.name)
        if builder is None:
            raise SpecError(f"unknown rule {spec.name!r} (known: {', '.join(sorted(RULES))})")
        gamma = validate_basis(builder(spec.direction, spec.max_len, spec.alphabet_bound))
    _subshifts[key] = gamma
    return gamma


def set_from_spec(spec: Union[FiniteSetSpec, FamilySetSpec]) -> SetPresentation:
    """A set presentation from its JSON spec."""
    if isinstance(spec, FiniteSetSpec):
        return FiniteEP(tuple(parse_point(p) for p in spec.points))
    factory = FAMILIES.get(spec.name)
    if factory is None:
        raise SpecError(f"unknown set family {spec.name!r}")
    family = factory()
    if spec.truncate is not None:
        return family.truncated(spec.truncate)
    return family


def pseudo_orbit_from_spec(spec: PseudoOrbitSpec) -> PseudoOrbit:
    return PseudoOrbit(tuple(parse_point(p) for p in spec.points), parse_dyadic(spec.delta))


# ── File loaders ───────────────────────────────────────────────────────────────

def _read(path: Union[str, Path]) -> str:
    try:
        return Path(path).read_text(encoding="utf-8")
    except OSError as exc:
        raise SpecError(f"cannot read {path}: {exc.strerror}") from exc


def _invalid(path: Union[str, Path], exc: ValidationError) -> SpecError:
    first = exc.errors()[0]
    where = ".".join(str(p) for p in first["loc"])
    return SpecError(f"{path}: {where}: {first['msg']}")


def load_subshift(path: Union[str, Path]) -> Subshift:
    try:
        spec = SUBSHIFT_SPEC.validate_json(_read(path))
    except ValidationError as exc:
        raise _invalid(path, exc) from exc
    return subshift_from_spec(spec)


def load_set(path: Union[str, Path]) -> SetPresentation:
    try:
        spec = SET_SPEC.validate_json(_read(path))
    except ValidationError as exc:
        raise _invalid(path, exc) from exc
    return set_from_spec(spec)


def load_pseudo_orbit(path: Union[str, Path]) -> PseudoOrbit:
    try:
        spec = PseudoOrbitSpec.model_validate_json(_read(path))
    except ValidationError as exc:
        raise _invalid(path, exc) from exc
    return pseudo_orbit_from_spec(spec)


# ── Reset ──────────────────────────────────────────────────────────────────────

def reset_catalog() -> None:
    """Drop cached subshifts, chain graphs and chain streams. Used between test runs."""
    _subshifts.clear()
    transitivity._ladder_verdict.cache_clear()
    transitivity._stream_chain.cache_clear()
    transitivity._chain_graph.cache_clear()
