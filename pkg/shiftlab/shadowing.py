"""
Pseudo-orbits and shadowing in bounded-type subshifts.

Conventions: with δ = 2^(1-M), d(σ(x^i), x^(i+1)) < δ means the two points
share their first M symbols. Under that agreement the diagonal
z_i = x^i_0 satisfies z_[i, i+M] = x^i_[0, M] for every i, so every factor
of z of length ≤ M+1 is a factor of some x^i. Taking M ≥ L-1 keeps z inside
the subshift.

Finite pseudo-orbits are closed by their last point (heads, then the last
point verbatim). Asymptotic pseudo-orbits are shadowed by the diagonal from
I* = rate(max(L, 1)) onward, back-extended over the first I* indices.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass
from typing import Callable, Dict, Optional, Tuple, Union

from shiftlab.config import get_settings
from shiftlab.core import (
    DyadicDistance,
    Verdict,
    Word,
    agree,
    dyadic,
    format_word,
    lcp,
    strict_agreement,
)
from shiftlab.errors import (
    ConstructionError,
    PreconditionError,
    VerificationError,
)
from shiftlab.points import (
    DiagonalOfStream,
    Point,
    PointStream,
    back_extended,
    format_point,
    heads_then_tail,
    shift_point,
    symbols_of,
)
from shiftlab.subshift import (
    Subshift,
    fresh_symbols,
    is_globally_allowed,
    point_in_subshift,
)

logger = logging.getLogger(__name__)


# ── Pseudo-orbits ──────────────────────────────────────────────────────────────

@dataclass(frozen=True)
class PseudoOrbit:
    """A finite pseudo-orbit with its claimed defect bound."""

    points: Tuple[Point, ...]
    delta: DyadicDistance

    def __post_init__(self) -> None:
        if not self.points:
            raise PreconditionError("PseudoOrbit", "a pseudo-orbit needs at least one point")


@dataclass(frozen=True, eq=False)
class AsymptoticPseudoOrbit:
    """
    A stream of points with a rate m ↦ N(m): for i ≥ N(m) the points
    σ(x^i) and x^(i+1) share their first m symbols. rate is non-decreasing.
    """

    points: PointStream
    rate: Callable[[int], int]

    def describe(self) -> Dict[str, object]:
        return {"stream": self.points.describe()}


# ── Modulus ────────────────────────────────────────────────────────────────────

def shadowing_modulus(gamma: Subshift, eps: DyadicDistance) -> Tuple[int, DyadicDistance]:
    """
    (M, δ) with M = max(L-1, min{m : 2^-m < ε}) and δ = 2^(1-M).

    Every δ-pseudo-orbit in the subshift is ε-shadowed by its diagonal.
    """
    if not gamma.is_sbt:
        raise PreconditionError("shadowing_modulus", "the basis is not bounded")
    if eps.is_zero:
        raise PreconditionError("shadowing_modulus", "ε must be positive")
    M = max(gamma.L - 1, eps.exponent + 1)
    return M, dyadic(M - 1)


# ── Verification ───────────────────────────────────────────────────────────────

def verify_pseudo_orbit(po: PseudoOrbit, horizon: int) -> Verdict:
    """Check d(σ(x^i), x^(i+1)) < δ for every consecutive pair."""
    need = strict_agreement(po.delta)
    scan = min(need, horizon)
    exact = scan == need or all(p.is_periodic for p in po.points)
    for i in range(len(po.points) - 1):
        image = shift_point(po.points[i], 1)
        if po.points[i].is_periodic and po.points[i + 1].is_periodic:
            ok = lcp(image, po.points[i + 1], horizon).reaches(need)
        else:
            ok = agree(image, po.points[i + 1], scan)
        if not ok:
            return Verdict(False, exact=True, violation=i, note=f"defect not below {po.delta}")
    return Verdict(True, exact=exact)


def verify_shadow(
    z: Point,
    po: Union[PseudoOrbit, AsymptoticPseudoOrbit],
    eps: DyadicDistance,
    horizon: int,
    settle: Optional[Callable[[int], int]] = None,
    cap: Optional[int] = None,
) -> Verdict:
    """
    Finite case: d(σ^i(z), x^i) < ε for every i.

    Asymptotic case: for each m ≤ cap (default: the exponent of ε) and every
    settle(m) ≤ i < horizon, d(σ^i(z), x^i) < 2^-m.
    """
    if isinstance(po, PseudoOrbit):
        need = strict_agreement(eps)
        for i, x in enumerate(po.points):
            if not agree(shift_point(z, i), x, need):
                return Verdict(False, violation=i, note=f"distance not below {eps}")
        return Verdict(True, exact=z.is_periodic and all(p.is_periodic for p in po.points))

    if settle is None:
        raise PreconditionError("verify_shadow", "asymptotic verification needs a settling index")
    cap = eps.exponent if cap is None else cap
    if cap is None:
        raise PreconditionError("verify_shadow", "ε must be positive")
    for m in range(cap + 1):
        for i in range(settle(m), horizon):
            if not agree(shift_point(z, i), po.points[i], m + 1):
                return Verdict(False, exact=False, violation=i, note=f"2^-{m} violated")
    return Verdict(True, exact=False, note=f"checked m ≤ {cap} to horizon {horizon}")


# ── Finite shadowing ───────────────────────────────────────────────────────────

def synthesize_shadow(gamma: Subshift, po: PseudoOrbit, horizon: Optional[int] = None) -> Point:
    """
    The diagonal shadow z = x^0_0 x^1_0 … x^(n-2)_0 · x^(n-1).

    Requires δ = 2^(1-M) with M ≥ max(L-1, 1) and every point in the
    subshift. Guarantees z in the subshift and d(σ^i(z), x^i) ≤ 2^-M.
    """
    if po.delta.exponent is None:
        raise PreconditionError("synthesize_shadow", "δ must be positive")
    M = po.delta.exponent + 1
    if M < max(gamma.L - 1, 1):
        raise PreconditionError(
            "synthesize_shadow", f"δ = {po.delta} is too coarse for L = {gamma.L}",
        )
    settings = get_settings()
    horizon = max(horizon or settings.horizon, len(po.points) + M + gamma.L)

    verdict = verify_pseudo_orbit(po, horizon)
    if not verdict:
        raise PreconditionError(
            "synthesize_shadow", f"not a {po.delta}-pseudo-orbit at index {verdict.violation}",
        )
    for i, x in enumerate(po.points):
        if not point_in_subshift(gamma, x, horizon):
            raise PreconditionError("synthesize_shadow", f"point {i} is not in the subshift")

    heads = tuple(x.symbol_at(0) for x in po.points[:-1])
    z = heads_then_tail(heads, po.points[-1])

    if not point_in_subshift(gamma, z, horizon):
        raise VerificationError(f"synthesized shadow {format_word(z.prefix(horizon))} left the subshift")
    check = verify_shadow(z, po, dyadic(M - 1), horizon)
    if not check:
        raise VerificationError(f"synthesized shadow drifts at index {check.violation}")
    logger.info("synthesized shadow of a %d-point pseudo-orbit (M=%d)", len(po.points), M)
    return z


# ── Back-extension ─────────────────────────────────────────────────────────────

def back_extend(gamma: Subshift, x: Point, steps: int, horizon: Optional[int] = None) -> Point:
    """
    A point y of the subshift with σ^steps(y) = x.

    Explicit bases over the infinite alphabet prepend fresh symbols; other
    bases search the declared symbols smallest-first, keeping each new
    window globally allowed.
    """
    if steps < 0:
        raise PreconditionError("back_extend", "steps must be nonnegative")
    if steps == 0:
        return x
    horizon = max(horizon or get_settings().horizon, gamma.L)
    if not point_in_subshift(gamma, x, horizon):
        raise PreconditionError("back_extend", "the point is not in the subshift")

    if gamma.infinite_alphabet:
        avoid = symbols_of(x, max(gamma.L, 1))
        prefix: Word = tuple(fresh_symbols(gamma, steps, avoid))
    else:
        k = max(gamma.L - 1, 0)
        prefix = ()
        for _ in range(steps):
            window = (prefix + x.prefix(k))[:k]
            for a in gamma.search_alphabet:
                if is_globally_allowed(gamma, (a,) + window):
                    prefix = (a,) + prefix
                    break
            else:
                raise ConstructionError(
                    f"no declared symbol extends {format_word(window)!r} to the left",
                    witness=prefix,
                )

    y = back_extended(prefix, x)
    if not point_in_subshift(gamma, y, horizon + steps):
        raise VerificationError("back-extension left the subshift")
    logger.debug("back-extended by %s", format_word(prefix))
    return y


# ── Asymptotic shadowing ───────────────────────────────────────────────────────

def settling_index(gamma: Subshift, apo: AsymptoticPseudoOrbit, m: int) -> int:
    """N′(m) = max(I*, rate(m + L)): from here on d(σ^i(z), x^i) < 2^-m."""
    return max(apo.rate(max(gamma.L, 1)), apo.rate(m + gamma.L))


def synthesize_asymptotic_shadow(
    gamma: Subshift, apo: AsymptoticPseudoOrbit, horizon: Optional[int] = None,
) -> Point:
    """
    Diagonal of the stream from I* = rate(max(L, 1)), back-extended over I* steps.

    The output asymptotically shadows the stream with computable
    settling_index; membership and the shadowing contract are re-verified
    to the horizon before returning.
    """
    if not gamma.is_sbt:
        raise PreconditionError("synthesize_asymptotic_shadow", "the basis is not bounded")
    settings = get_settings()
    horizon = horizon or settings.horizon
    start = apo.rate(max(gamma.L, 1))
    diagonal = DiagonalOfStream(apo.points, start)
    z = back_extend(gamma, diagonal, start, horizon)

    if not point_in_subshift(gamma, z, horizon + start):
        raise VerificationError("asymptotic shadow left the subshift")
    check = verify_shadow(
        z, apo, dyadic(settings.asymptotic_cap), horizon + start,
        settle=lambda m: settling_index(gamma, apo, m),
    )
    if not check:
        raise VerificationError(f"asymptotic shadow fails at index {check.violation} ({check.note})")
    logger.info("synthesized asymptotic shadow, diagonal starts at %d", start)
    return z


# ── Expansivity ────────────────────────────────────────────────────────────────

def expansivity_witness(x: Point, y: Point, horizon: int) -> Optional[int]:
    """
    Smallest n with x_n ≠ y_n, i.e. d(σ^n x, σ^n y) = 1.

    Exact for eventually periodic pairs (None iff equal); otherwise None
    means the points agree to the horizon.
    """
    prefix = lcp(x, y, horizon)
    if prefix.infinite or prefix.at_least:
        return None
    return prefix.length


def describe_shadow(z: Point, n: int) -> Dict[str, object]:
    """Report fragment for a synthesized point."""
    return {
        "literal": format_point(z),
        "descriptor": z.describe(),
        "prefix": format_word(z.prefix(n)),
    }
