"""
Seeded random bases, points and pseudo-orbits for the randomized suites.

Points are drawn by a random walk on the window graph that stops once a
window repeats, so every sample is an eventually periodic point of the
subshift.
"""

from __future__ import annotations

import random
from typing import Dict, List, Sequence

from shiftlab.core import Word, dyadic
from shiftlab.errors import PreconditionError
from shiftlab.points import EventuallyPeriodic, ep_point, shift_point
from shiftlab.shadowing import PseudoOrbit
from shiftlab.subshift import (
    ExplicitFinite,
    Subshift,
    is_globally_allowed,
    right_extensions,
    validate_basis,
)


def random_basis(
    rng: random.Random, max_words: int = 5, max_len: int = 3, symbols: int = 8,
) -> Subshift:
    """An explicit basis over the infinite alphabet with small random words."""
    words = {
        tuple(rng.randrange(symbols) for _ in range(rng.randint(1, max_len)))
        for _ in range(rng.randint(0, max_words))
    }
    return validate_basis(ExplicitFinite(frozenset(words)))


def random_word(rng: random.Random, alphabet: Sequence[int], max_len: int) -> Word:
    return tuple(rng.choice(alphabet) for _ in range(rng.randint(0, max_len)))


def random_point(
    gamma: Subshift, rng: random.Random, prefix: Word = (), wander: int = 8,
) -> EventuallyPeriodic:
    """prefix · (random walk) · (first repeated window closed into a cycle)."""
    w: List[int] = list(prefix)
    if not is_globally_allowed(gamma, w):
        raise PreconditionError("random_point", "the prefix does not occur in the subshift")
    k = max(gamma.L - 1, 0)
    seen: Dict[Word, int] = {}
    steps = 0
    while True:
        t = len(w)
        if steps >= wander and t >= k:
            state = tuple(w[t - k:])
            if state in seen:
                s = seen[state]
                return ep_point(tuple(w[:s]), tuple(w[s:]))
            seen[state] = t
        w.append(rng.choice(right_extensions(gamma, tuple(w[max(t - k, 0):]))))
        steps += 1


def random_pseudo_orbit(
    gamma: Subshift, rng: random.Random, M: int, length: int, wander: int = 4,
) -> PseudoOrbit:
    """
    A 2^(1-M)-pseudo-orbit: each point keeps the first M symbols of the
    previous point's image and wanders off afterwards.
    """
    points = [random_point(gamma, rng, wander=wander)]
    for _ in range(length - 1):
        head = shift_point(points[-1], 1).prefix(M)
        points.append(random_point(gamma, rng, head, wander))
    return PseudoOrbit(tuple(points), dyadic(M - 1))


def random_ep(
    rng: random.Random, max_pre: int = 3, max_per: int = 3, symbols: int = 4,
) -> EventuallyPeriodic:
    """A random eventually periodic point (any symbols, no subshift)."""
    pre = tuple(rng.randrange(symbols) for _ in range(rng.randint(0, max_pre)))
    per = tuple(rng.randrange(symbols) for _ in range(rng.randint(1, max_per)))
    return ep_point(pre, per)
