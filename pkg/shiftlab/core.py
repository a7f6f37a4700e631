"""
Core vocabulary: symbols, words, the dyadic shift metric and factor queries.

The alphabet is identified with the nonnegative integers. Words are tuples of
ints. Distances are never floats: a DyadicDistance stores the exponent m of
2^-m (None for 0), so every strict "< δ" in the theory is an exact integer
comparison.

Metric convention:
  d(x, y) = 2^-lcp(x, y)
  d(x, y) < 2^-m   ⟺  x, y agree on their first m+1 symbols
  d(x, y) ≤ 2^-m   ⟺  x, y agree on their first m symbols
"""

from __future__ import annotations

import logging
import math
from dataclasses import dataclass
from fractions import Fraction
from typing import TYPE_CHECKING, Iterable, Optional, Tuple

from shiftlab.errors import PreconditionError, SpecError

if TYPE_CHECKING:  # pragma: no cover
    from shiftlab.points import Point

logger = logging.getLogger(__name__)

Symbol = int
Word = Tuple[int, ...]

EMPTY: Word = ()


# ── Words ──────────────────────────────────────────────────────────────────────

def as_word(symbols: Iterable[int]) -> Word:
    """Coerce an iterable of ints into a Word, rejecting negative symbols."""
    word = tuple(int(s) for s in symbols)
    if any(s < 0 for s in word):
        raise SpecError(f"symbols must be nonnegative integers, got {list(word)}")
    return word


def parse_word(text: str) -> Word:
    """Parse the word codec: base-10 symbols separated by single spaces ("" is ε)."""
    text = text.strip()
    if not text:
        return EMPTY
    try:
        return as_word(int(tok) for tok in text.split(" "))
    except ValueError as exc:
        raise SpecError(f"malformed word literal {text!r}") from exc


def format_word(word: Word) -> str:
    """Render a word in the codec form, e.g. (0, 4, 1, 1) → "0 4 1 1"."""
    return " ".join(str(s) for s in word)


def contains_factor(w: Word, f: Word) -> bool:
    """True iff f occurs as a contiguous block of w (the empty word always does)."""
    n = len(f)
    if n == 0:
        return True
    return any(w[i:i + n] == f for i in range(len(w) - n + 1))


def factors_of_length(w: Word, n: int) -> Iterable[Word]:
    """Yield every length-n factor of w, left to right."""
    for i in range(len(w) - n + 1):
        yield w[i:i + n]


# ── Dyadic distances ───────────────────────────────────────────────────────────

@dataclass(frozen=True)
class DyadicDistance:
    """
    The value 2^-exponent, with exponent None standing for 0.

    truncated marks a horizon-limited answer: the true distance is at most
    the stored value. Strict "<" comparisons against a threshold stay sound.
    """

    exponent: Optional[int]
    truncated: bool = False

    def __post_init__(self) -> None:
        if self.exponent is not None and self.exponent < 0:
            raise SpecError("dyadic distances are at most 1 (exponent ≥ 0)")

    @property
    def value(self) -> Fraction:
        if self.exponent is None:
            return Fraction(0)
        return Fraction(1, 2 ** self.exponent)

    @property
    def is_zero(self) -> bool:
        return self.exponent is None

    def _key(self) -> float:
        return math.inf if self.exponent is None else self.exponent

    # Ordering is by value: a larger exponent is a smaller distance.
    def __lt__(self, other: "DyadicDistance") -> bool:
        return self._key() > other._key()

    def __le__(self, other: "DyadicDistance") -> bool:
        return self._key() >= other._key()

    def __gt__(self, other: "DyadicDistance") -> bool:
        return self._key() < other._key()

    def __ge__(self, other: "DyadicDistance") -> bool:
        return self._key() <= other._key()

    def __str__(self) -> str:
        if self.exponent is None:
            return "0"
        if self.exponent == 0:
            return "1"
        return f"2^-{self.exponent}"


ZERO = DyadicDistance(None)
ONE = DyadicDistance(0)


def dyadic(m: int) -> DyadicDistance:
    """The distance 2^-m."""
    return DyadicDistance(m)


def parse_dyadic(text: str) -> DyadicDistance:
    """Parse a dyadic literal: "1", "0" or "2^-m"."""
    text = text.strip()
    if text == "1":
        return ONE
    if text == "0":
        return ZERO
    if text.startswith("2^-"):
        try:
            return DyadicDistance(int(text[3:]))
        except ValueError:
            pass
    raise SpecError(f"malformed dyadic literal {text!r} (expected 2^-m or 1)")


def strict_agreement(bound: DyadicDistance) -> int:
    """
    Number of leading symbols two points must share for d < bound.

    Only positive bounds have a finite answer.
    """
    if bound.exponent is None:
        raise PreconditionError("strict_agreement", "the bound must be positive")
    return bound.exponent + 1


# ── Common prefixes ────────────────────────────────────────────────────────────

@dataclass(frozen=True)
class CommonPrefix:
    """
    Longest-common-prefix answer.

    length None means the points are equal. at_least marks the horizon
    sentinel "≥ length": the points agree that far and were not scanned further.
    """

    length: Optional[int]
    at_least: bool = False

    @property
    def infinite(self) -> bool:
        return self.length is None

    def reaches(self, m: int) -> bool:
        """True iff agreement on the first m symbols is certain."""
        return self.length is None or self.length >= m

    def __str__(self) -> str:
        if self.length is None:
            return "inf"
        return f">={self.length}" if self.at_least else str(self.length)


@dataclass(frozen=True)
class Verdict:
    """Outcome of a verification: ok flag, exactness, first violation index."""

    ok: bool
    exact: bool = True
    violation: Optional[int] = None
    note: str = ""

    def __bool__(self) -> bool:
        return self.ok


def _exact_bound(x: "Point", y: "Point") -> int:
    # Two distinct eventually periodic points differ before this index.
    return max(len(x.preperiod), len(y.preperiod)) + math.lcm(len(x.period), len(y.period))


def lcp(x: "Point", y: "Point", horizon: int) -> CommonPrefix:
    """
    Longest common prefix of two points.

    Exact for eventually periodic pairs (None when equal); otherwise scans at
    most `horizon` symbols and returns the sentinel ≥horizon when no
    difference was found.
    """
    if horizon < 1:
        raise PreconditionError("lcp", "horizon must be positive")
    if x.is_periodic and y.is_periodic:
        if x == y:
            return CommonPrefix(None)
        bound = _exact_bound(x, y)
        a, b = x.window(0, bound), y.window(0, bound)
        for i in range(bound):
            if a[i] != b[i]:
                return CommonPrefix(i)
        raise AssertionError("distinct normal forms must differ before the lcm bound")
    for i in range(horizon):
        if x.symbol_at(i) != y.symbol_at(i):
            return CommonPrefix(i)
    return CommonPrefix(horizon, at_least=True)


def agree(x: "Point", y: "Point", m: int) -> bool:
    """True iff x and y share their first m symbols (scans exactly m symbols)."""
    if m == 0:
        return True
    return lcp(x, y, m).reaches(m)


def distance(x: "Point", y: "Point", horizon: int) -> DyadicDistance:
    """d(x, y) = 2^-lcp(x, y); truncated when lcp hit the horizon sentinel."""
    prefix = lcp(x, y, horizon)
    if prefix.at_least:
        logger.debug("distance truncated at horizon %d", horizon)
    return DyadicDistance(prefix.length, truncated=prefix.at_least)
