"""
Finite-resolution ω-limit sets.

ω(x) at depth n is approximated by intersecting the length-n factor sets of
x over the dyadic windows [2^j·T0, 2^(j+1)·T0), j < levels. Words that occur
only finitely often (growing separators) drop out of some window. For an
eventually periodic point the answer is exact: the factor set of the tail.

Reported sets always contain the true prefix set; equality is certified for
eventually periodic inputs and checked against closed forms for the
built-in schemes.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass
from typing import FrozenSet, Iterable, Optional, Set

from shiftlab.config import get_settings
from shiftlab.core import DyadicDistance, Verdict, Word, format_word
from shiftlab.errors import PreconditionError
from shiftlab.models import LadderOut, OmegaReport
from shiftlab.points import CyclicStream, EventuallyPeriodic, OrbitStream, Point, PointStream
from shiftlab.transitivity import FiniteEP, PrefixOracle, Remark2Family, SetPresentation

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class OmegaApprox:
    """Depth-n prefix set of an ω-limit, with the ladder it was read from."""

    depth: int
    prefixes: FrozenSet[Word]
    t0: int
    levels: int
    exact: bool

    def to_report(self) -> OmegaReport:
        return OmegaReport(
            depth=self.depth,
            prefixes=sorted_words(self.prefixes),
            ladder=LadderOut(t0=self.t0, levels=self.levels),
            exact=self.exact,
        )


def sorted_words(words: Iterable[Word]) -> list:
    """Words in a fixed order, rendered with the word codec."""
    return [format_word(w) for w in sorted(words)]


def _ladder(n: int, t0: Optional[int], levels: Optional[int]) -> tuple:
    settings = get_settings()
    t0 = settings.omega_t0 if t0 is None else t0
    levels = settings.omega_levels if levels is None else levels
    if n < 1:
        raise PreconditionError("omega_prefixes", "depth must be positive")
    if t0 < n:
        raise PreconditionError("omega_prefixes", f"T0 = {t0} is below the depth {n}")
    if levels < 1:
        raise PreconditionError("omega_prefixes", "levels must be positive")
    return t0, levels


def _windows(t0: int, levels: int) -> Iterable[range]:
    for j in range(levels):
        yield range(2 ** j * t0, 2 ** (j + 1) * t0)


# ── Points ─────────────────────────────────────────────────────────────────────

def factor_set(x: Point, n: int, start: int, end: int) -> Set[Word]:
    """{ x_[i, i+n) : start ≤ i ≤ end − n }."""
    if start + n > end:
        raise PreconditionError("factor_set", "the window is shorter than the factor length")
    block = x.window(start, end - start)
    return {block[i:i + n] for i in range(len(block) - n + 1)}


def _tail_factors(x: EventuallyPeriodic, n: int) -> FrozenSet[Word]:
    pre = len(x.preperiod)
    return frozenset(x.window(pre + i, n) for i in range(len(x.period)))


def omega_prefixes(
    x: Point, n: int, t0: Optional[int] = None, levels: Optional[int] = None,
) -> OmegaApprox:
    """Depth-n prefixes of ω(x) by ladder intersection (exact for eventually periodic x)."""
    t0, levels = _ladder(n, t0, levels)
    if isinstance(x, EventuallyPeriodic):
        return OmegaApprox(n, _tail_factors(x, n), t0, levels, exact=True)
    found: Optional[Set[Word]] = None
    for window in _windows(t0, levels):
        # Factors starting inside the window; the last ones read past its end.
        words = factor_set(x, n, window.start, window.stop + n - 1)
        found = words if found is None else found & words
        logger.debug("window %s leaves %d words", window, len(found))
    return OmegaApprox(n, frozenset(found or ()), t0, levels, exact=False)


def sequence_omega_prefixes(
    stream: PointStream, n: int, t0: Optional[int] = None, levels: Optional[int] = None,
) -> OmegaApprox:
    """Depth-n prefixes of ω⟨x_i⟩ by ladder intersection over stream indices."""
    t0, levels = _ladder(n, t0, levels)
    if isinstance(stream, OrbitStream):
        return omega_prefixes(stream.point, n, t0, levels)
    if isinstance(stream, CyclicStream):
        words = frozenset(p.prefix(n) for p in stream.points)
        return OmegaApprox(n, words, t0, levels, exact=True)
    found: Optional[Set[Word]] = None
    for window in _windows(t0, levels):
        words = {stream[i].prefix(n) for i in window}
        found = words if found is None else found & words
    return OmegaApprox(n, frozenset(found or ()), t0, levels, exact=False)


# ── Sets ───────────────────────────────────────────────────────────────────────

def z_prefixes(Z: SetPresentation, n: int) -> FrozenSet[Word]:
    """Exact depth-n prefix set of a presented set."""
    if isinstance(Z, FiniteEP):
        return frozenset(p.prefix(n) for p in Z.points)
    if isinstance(Z, Remark2Family):
        return frozenset((0,) * a + (1,) * (n - a) for a in range(n + 1))
    if isinstance(Z, PrefixOracle):
        return frozenset(Z.oracle(n))
    raise PreconditionError("z_prefixes", f"unknown set presentation {type(Z).__name__}")


def attracting_check(
    x: Point, Z: SetPresentation, eps: DyadicDistance, N: int, horizon: int,
) -> Verdict:
    """
    d(σ^i(x), Z) < ε for every N ≤ i < horizon.

    With ε = 2^-m this is y_[0, m+1) ∈ z_prefixes(Z, m+1) for y = σ^i(x).
    """
    if horizon <= N:
        raise PreconditionError("attracting_check", "horizon must exceed N")
    if eps.is_zero:
        raise PreconditionError("attracting_check", "ε must be positive")
    k = eps.exponent + 1
    allowed = z_prefixes(Z, k)
    block = x.window(N, horizon - N + k - 1)
    for i in range(horizon - N):
        if block[i:i + k] not in allowed:
            return Verdict(False, exact=True, violation=N + i, note=f"distance to Z not below {eps}")
    exact = isinstance(x, EventuallyPeriodic) and horizon >= max(N, len(x.preperiod)) + len(x.period)
    return Verdict(True, exact=exact, note="" if exact else f"checked to horizon {horizon}")


def omega_equals(
    x: Point, Z: SetPresentation, n: int, t0: Optional[int] = None, levels: Optional[int] = None,
) -> bool:
    """ω(x) and Z have the same depth-n prefixes."""
    return omega_prefixes(x, n, t0, levels).prefixes == z_prefixes(Z, n)
