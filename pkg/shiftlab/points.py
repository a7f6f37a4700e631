"""
Points of Λ^ω and the shift action.

Two representations:
  EventuallyPeriodic  pre·per^ω kept in normal form (minimal period, then
                      minimal preperiod) so that equality is syntactic.
  scheme points       closed descriptors with a total symbol_at: the two
                      block-structured counterexample points, interleavings,
                      heads-then-tail closures, back-extensions, shifts and
                      diagonals of replayable point streams.

Point literals: "PRE|PER" with the word codec on each side ("0 1|2 3" is
01(23)^ω, "|0" is 0^ω) plus the scheme names "remark1" and "remark2".
"""

from __future__ import annotations

import logging
from abc import ABC, abstractmethod
from dataclasses import dataclass, field
from typing import Callable, Dict, FrozenSet, List, Optional, Tuple

from shiftlab.core import EMPTY, Word, as_word, format_word, parse_word
from shiftlab.errors import PreconditionError, SpecError

logger = logging.getLogger(__name__)


# ── Base class ─────────────────────────────────────────────────────────────────

class Point(ABC):
    """An infinite symbol sequence with a total, deterministic symbol_at."""

    is_periodic = False

    @abstractmethod
    def symbol_at(self, i: int) -> int:
        """The i-th symbol (0-based)."""

    @abstractmethod
    def describe(self) -> Dict[str, object]:
        """A JSON-ready descriptor that identifies this point."""

    def window(self, start: int, n: int) -> Word:
        """The factor x_[start, start+n)."""
        return tuple(self.symbol_at(start + k) for k in range(n))

    def prefix(self, n: int) -> Word:
        return self.window(0, n)


# ── Eventually periodic points ─────────────────────────────────────────────────

def _minimal_period(per: Word) -> Word:
    n = len(per)
    for d in range(1, n + 1):
        if n % d == 0 and per[:d] * (n // d) == per:
            return per[:d]
    return per


@dataclass(frozen=True)
class EventuallyPeriodic(Point):
    """pre·per^ω, normalized on construction."""

    preperiod: Word
    period: Word
    is_periodic = True

    def __post_init__(self) -> None:
        pre, per = as_word(self.preperiod), as_word(self.period)
        if not per:
            raise SpecError("the period of an eventually periodic point must be nonempty")
        per = _minimal_period(per)
        # Pull the preperiod back into the period while the last symbols match.
        while pre and pre[-1] == per[-1]:
            per = (pre[-1],) + per[:-1]
            pre = pre[:-1]
        object.__setattr__(self, "preperiod", pre)
        object.__setattr__(self, "period", per)

    def symbol_at(self, i: int) -> int:
        if i < len(self.preperiod):
            return self.preperiod[i]
        return self.period[(i - len(self.preperiod)) % len(self.period)]

    def window(self, start: int, n: int) -> Word:
        pre, per = self.preperiod, self.period
        out: List[int] = []
        i = start
        while i < len(pre) and len(out) < n:
            out.append(pre[i])
            i += 1
        if len(out) < n:
            offset = (i - len(pre)) % len(per)
            rotated = per[offset:] + per[:offset]
            need = n - len(out)
            reps = need // len(per) + 1
            out.extend((rotated * reps)[:need])
        return tuple(out)

    @property
    def symbols(self) -> FrozenSet[int]:
        return frozenset(self.preperiod + self.period)

    @property
    def tail_start(self) -> int:
        return len(self.preperiod)

    def describe(self) -> Dict[str, object]:
        return {"kind": "eventually_periodic", "literal": format_point(self)}


def ep_point(pre: Word, per: Word) -> EventuallyPeriodic:
    """The normalized point pre·per^ω."""
    if not per:
        raise SpecError("ep_point: the period must be nonempty")
    return EventuallyPeriodic(tuple(pre), tuple(per))


def constant(symbol: int) -> EventuallyPeriodic:
    """The fixed point symbol^ω."""
    return EventuallyPeriodic(EMPTY, (symbol,))


def ep_equal(x: Point, y: Point) -> bool:
    """Exact equality of two eventually periodic points via their normal forms."""
    if not (x.is_periodic and y.is_periodic):
        raise PreconditionError("ep_equal", "both points must be eventually periodic")
    return x == y


# ── Scheme points ──────────────────────────────────────────────────────────────

def _last_block(i: int, start: Callable[[int], int]) -> int:
    """Largest k ≥ 1 with start(k) ≤ i, for an increasing block-start function."""
    lo, hi = 1, 2
    while start(hi) <= i:
        lo, hi = hi, hi * 2
    while hi - lo > 1:
        mid = (lo + hi) // 2
        if start(mid) <= i:
            lo = mid
        else:
            hi = mid
    return lo


@dataclass(frozen=True)
class Remark1(Point):
    """
    0^1 2 1^2 3 0^3 4 1^4 5 …

    Block k (k ≥ 1) is k copies of 0 (k odd) or 1 (k even) followed by the
    separator k+1; it starts at (k-1)(k+2)/2.
    """

    @staticmethod
    def block_start(k: int) -> int:
        return (k - 1) * (k + 2) // 2

    def symbol_at(self, i: int) -> int:
        k = _last_block(i, self.block_start)
        offset = i - self.block_start(k)
        if offset < k:
            return 0 if k % 2 else 1
        return k + 1

    def describe(self) -> Dict[str, object]:
        return {"kind": "remark1"}


@dataclass(frozen=True)
class Remark2(Point):
    """
    0 1 2 0^2 1^2 3 0^3 1^3 4 …

    Block k (k ≥ 1) is 0^k 1^k followed by the separator k+1; it starts at k²-1.
    """

    @staticmethod
    def block_start(k: int) -> int:
        return k * k - 1

    def symbol_at(self, i: int) -> int:
        k = _last_block(i, self.block_start)
        offset = i - self.block_start(k)
        if offset < k:
            return 0
        if offset < 2 * k:
            return 1
        return k + 1

    def describe(self) -> Dict[str, object]:
        return {"kind": "remark2"}


@dataclass(frozen=True)
class Interleave(Point):
    """
    b_0 s_0 b_1 s_1 … over a round-robin prefix schedule.

    Group t (t ≥ 1) emits, for every source p in order, the prefix p_[0,t)
    followed by a separator; separators are separator_start, separator_start+1, …
    """

    sources: Tuple[Point, ...]
    separator_start: int

    def __post_init__(self) -> None:
        if not self.sources:
            raise SpecError("Interleave needs at least one source point")

    def group_start(self, t: int) -> int:
        return len(self.sources) * (t - 1) * (t + 2) // 2

    def block(self, index: int) -> Word:
        """The block b_index of the schedule."""
        t, j = divmod(index, len(self.sources))
        return self.sources[j].prefix(t + 1)

    def symbol_at(self, i: int) -> int:
        t = _last_block(i, self.group_start)
        j, r = divmod(i - self.group_start(t), t + 1)
        if r < t:
            return self.sources[j].symbol_at(r)
        return self.separator_start + (t - 1) * len(self.sources) + j

    def describe(self) -> Dict[str, object]:
        return {
            "kind": "interleave",
            "sources": [s.describe() for s in self.sources],
            "separator_start": self.separator_start,
        }


@dataclass(frozen=True)
class _Concatenation(Point):
    heads: Word
    tail: Point

    def symbol_at(self, i: int) -> int:
        if i < len(self.heads):
            return self.heads[i]
        return self.tail.symbol_at(i - len(self.heads))

    def describe(self) -> Dict[str, object]:
        return {"heads": format_word(self.heads), "tail": self.tail.describe()}


@dataclass(frozen=True)
class HeadsThenTail(_Concatenation):
    """Finite heads followed verbatim by a tail point (finite shadow closure)."""

    def describe(self) -> Dict[str, object]:
        return {"kind": "heads_then_tail", **super().describe()}


@dataclass(frozen=True)
class BackExtended(_Concatenation):
    """A point prefixed by a back-extension word, so that σ^|heads| returns the base."""

    def describe(self) -> Dict[str, object]:
        return {"kind": "back_extended", **super().describe()}


@dataclass(frozen=True)
class Shifted(Point):
    """i ↦ base.symbol_at(i + offset)."""

    base: Point
    offset: int

    def symbol_at(self, i: int) -> int:
        return self.base.symbol_at(i + self.offset)

    def describe(self) -> Dict[str, object]:
        return {"kind": "shifted", "base": self.base.describe(), "offset": self.offset}


@dataclass(frozen=True, eq=False)
class DiagonalOfStream(Point):
    """i ↦ stream[offset + i].symbol_at(0): the initial entries of a point stream."""

    stream: "PointStream"
    offset: int = 0

    def symbol_at(self, i: int) -> int:
        return self.stream[self.offset + i].symbol_at(0)

    def describe(self) -> Dict[str, object]:
        return {"kind": "diagonal", "stream": self.stream.describe(), "offset": self.offset}


def heads_then_tail(heads: Word, tail: Point) -> Point:
    """heads·tail, collapsed to a normalized eventually periodic point when possible."""
    if not heads:
        return tail
    if isinstance(tail, EventuallyPeriodic):
        return ep_point(tuple(heads) + tail.preperiod, tail.period)
    return HeadsThenTail(tuple(heads), tail)


def back_extended(prefix: Word, base: Point) -> Point:
    """prefix·base, collapsed to eventually periodic form when possible."""
    if not prefix:
        return base
    if isinstance(base, EventuallyPeriodic):
        return ep_point(tuple(prefix) + base.preperiod, base.period)
    return BackExtended(tuple(prefix), base)


# ── Shift action ───────────────────────────────────────────────────────────────

def shift_point(x: Point, n: int = 1) -> Point:
    """σ^n(x); eventually periodic inputs give normalized eventually periodic outputs."""
    if n < 0:
        raise PreconditionError("shift_point", "n must be nonnegative")
    if n == 0:
        return x
    if isinstance(x, EventuallyPeriodic):
        pre, per = x.preperiod, x.period
        if n <= len(pre):
            return EventuallyPeriodic(pre[n:], per)
        r = (n - len(pre)) % len(per)
        return EventuallyPeriodic(EMPTY, per[r:] + per[:r])
    if isinstance(x, _Concatenation):
        if n < len(x.heads):
            return type(x)(x.heads[n:], x.tail)
        return shift_point(x.tail, n - len(x.heads))
    if isinstance(x, Shifted):
        return Shifted(x.base, x.offset + n)
    if isinstance(x, DiagonalOfStream):
        return DiagonalOfStream(x.stream, x.offset + n)
    return Shifted(x, n)


def symbols_of(x: Point, horizon: int) -> FrozenSet[int]:
    """All symbols of x (exact when eventually periodic, else the first `horizon`)."""
    if isinstance(x, EventuallyPeriodic):
        return x.symbols
    return frozenset(x.prefix(horizon))


# ── Streams ────────────────────────────────────────────────────────────────────

class PointStream(ABC):
    """An index-addressable, replayable sequence of points."""

    @abstractmethod
    def __getitem__(self, i: int) -> Point:
        """The i-th point of the stream."""

    @abstractmethod
    def describe(self) -> Dict[str, object]:
        """A JSON-ready descriptor of the stream."""


@dataclass(frozen=True)
class OrbitStream(PointStream):
    """i ↦ σ^i(x)."""

    point: Point

    def __getitem__(self, i: int) -> Point:
        return shift_point(self.point, i)

    def describe(self) -> Dict[str, object]:
        return {"kind": "orbit", "point": self.point.describe()}


@dataclass(frozen=True)
class CyclicStream(PointStream):
    """A finite list of points repeated forever (one point gives a constant stream)."""

    points: Tuple[Point, ...]

    def __post_init__(self) -> None:
        if not self.points:
            raise SpecError("a cyclic stream needs at least one point")

    def __getitem__(self, i: int) -> Point:
        return self.points[i % len(self.points)]

    def describe(self) -> Dict[str, object]:
        return {"kind": "cyclic", "points": [p.describe() for p in self.points]}


@dataclass(frozen=True)
class SubsequenceStream(PointStream):
    """The substream i ↦ base[scale·i + offset] (strictly increasing reindexing)."""

    base: PointStream
    scale: int = 1
    offset: int = 0

    def __post_init__(self) -> None:
        if self.scale < 1 or self.offset < 0:
            raise SpecError("subsequence index maps need scale ≥ 1 and offset ≥ 0")

    def __getitem__(self, i: int) -> Point:
        return self.base[self.scale * i + self.offset]

    def describe(self) -> Dict[str, object]:
        return {
            "kind": "subsequence",
            "base": self.base.describe(),
            "scale": self.scale,
            "offset": self.offset,
        }


@dataclass(frozen=True)
class FiniteStream(PointStream):
    """A finite list of points; indexing past the end is an error."""

    points: Tuple[Point, ...] = field(default_factory=tuple)

    def __getitem__(self, i: int) -> Point:
        return self.points[i]

    def __len__(self) -> int:
        return len(self.points)

    def describe(self) -> Dict[str, object]:
        return {"kind": "finite", "points": [p.describe() for p in self.points]}


# ── Literal codec ──────────────────────────────────────────────────────────────

SCHEME_LITERALS: Dict[str, Callable[[], Point]] = {
    "remark1": Remark1,
    "remark2": Remark2,
}


def parse_point(text: str) -> Point:
    """Parse a point literal: "PRE|PER" or a scheme name."""
    text = text.strip()
    if text in SCHEME_LITERALS:
        return SCHEME_LITERALS[text]()
    if text.count("|") != 1:
        raise SpecError(f"malformed point literal {text!r} (expected PRE|PER or a scheme name)")
    pre, per = text.split("|")
    period = parse_word(per)
    if not period:
        raise SpecError(f"point literal {text!r} has an empty period")
    return ep_point(parse_word(pre), period)


def format_point(x: Point) -> Optional[str]:
    """The literal of x, or None when x has no literal form."""
    if isinstance(x, EventuallyPeriodic):
        return f"{format_word(x.preperiod)}|{format_word(x.period)}"
    for name, factory in SCHEME_LITERALS.items():
        if type(x) is factory:
            return name
    return None
