"""
δ-chains, internal chain transitivity and ω-limit realizations.

Set presentations:
  FiniteEP       a finite set of eventually periodic points (closed for free)
  Remark2Family  {0^ω, 1^ω} ∪ {0^k 1^ω : k ∈ ω}; truncated(k) is finite
  PrefixOracle   depth ↦ set of length-depth words

Chain search runs breadth-first on the graph whose edges p → q are the exact
dyadic tests d(σ(p), q) < δ, so an absent chain inside a finite presentation
is a certificate. Over a finite search alphabet, subshift_delta_chain walks the
allowed k-words of the subshift itself, so its absences are certificates too.

Realizations:
  realize_ict            closed ICT set → chain stream → asymptotic shadow
  realize_invariant_sft  closed invariant set → b_0 s_0 b_1 s_1 … with fresh
                         separators (explicit bases over the infinite alphabet)
"""

from __future__ import annotations

import logging
from dataclasses import dataclass
from functools import lru_cache
from typing import Callable, Dict, FrozenSet, List, Optional, Sequence, Tuple, Union

import networkx as nx

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
    SpecError,
    VerificationError,
)
from shiftlab.points import (
    EventuallyPeriodic,
    Interleave,
    Point,
    PointStream,
    constant,
    ep_point,
    format_point,
    heads_then_tail,
    shift_point,
    symbols_of,
)
from shiftlab.shadowing import (
    AsymptoticPseudoOrbit,
    settling_index,
    synthesize_asymptotic_shadow,
)
from shiftlab.subshift import (
    BoundedRule,
    Subshift,
    fresh_symbols,
    is_globally_allowed,
    point_in_subshift,
    right_extensions,
)

logger = logging.getLogger(__name__)


# ── Set presentations ──────────────────────────────────────────────────────────

@dataclass(frozen=True)
class FiniteEP:
    """A finite set of pairwise distinct eventually periodic points, in a fixed order."""

    points: Tuple[EventuallyPeriodic, ...]

    def __post_init__(self) -> None:
        if any(not p.is_periodic for p in self.points):
            raise SpecError("finite presentations hold eventually periodic points only")
        if len(set(self.points)) != len(self.points):
            raise SpecError("finite presentations must not repeat a point")

    def __contains__(self, x: object) -> bool:
        return x in self.points

    def __len__(self) -> int:
        return len(self.points)

    @property
    def symbols(self) -> FrozenSet[int]:
        return frozenset(s for p in self.points for s in p.symbols)

    def describe(self) -> dict:
        return {"kind": "finite", "points": [format_point(p) for p in self.points]}


@dataclass(frozen=True)
class Remark2Family:
    """{0^ω, 1^ω} ∪ {0^k 1^ω : k ∈ ω}."""

    def truncated(self, k: int) -> FiniteEP:
        """{0^j 1^ω : j ≤ k} ∪ {0^ω} as a finite presentation."""
        points = [constant(0)] + [ep_point((0,) * j, (1,)) for j in range(k + 1)]
        return FiniteEP(tuple(points))

    def describe(self) -> dict:
        return {"kind": "family", "name": "remark2"}


@dataclass(frozen=True, eq=False)
class PrefixOracle:
    """A set known only through its depth-n prefix sets."""

    name: str
    oracle: Callable[[int], FrozenSet[Word]]

    def describe(self) -> dict:
        return {"kind": "oracle", "name": self.name}


SetPresentation = Union[FiniteEP, Remark2Family, PrefixOracle]


def _require_finite(operation: str, Z: SetPresentation) -> FiniteEP:
    if not isinstance(Z, FiniteEP):
        raise PreconditionError(operation, "needs a finite presentation of eventually periodic points")
    return Z


# ── δ-chains ───────────────────────────────────────────────────────────────────

@dataclass(frozen=True)
class DeltaChain:
    """x_0, …, x_n with d(σ(x_i), x_(i+1)) < δ for every i < n."""

    entries: Tuple[Point, ...]
    delta: DyadicDistance

    @property
    def steps(self) -> int:
        return len(self.entries) - 1

    def verify(self, horizon: int) -> Verdict:
        need = strict_agreement(self.delta)
        for i in range(self.steps):
            image = shift_point(self.entries[i], 1)
            if not lcp(image, self.entries[i + 1], horizon).reaches(need):
                return Verdict(False, violation=i)
        return Verdict(True)


@lru_cache(maxsize=256)
def _chain_graph(Z: FiniteEP, delta: DyadicDistance) -> nx.DiGraph:
    need = strict_agreement(delta)
    graph = nx.DiGraph()
    graph.add_nodes_from(Z.points)
    for p in Z.points:
        image = shift_point(p, 1)
        for q in Z.points:
            if agree(image, q, need):
                graph.add_edge(p, q)
    return graph


def find_delta_chain(
    Z: SetPresentation,
    a: Point,
    b: Point,
    delta: DyadicDistance,
    max_len: int,
    nontrivial: bool = False,
) -> Optional[DeltaChain]:
    """
    A shortest δ-chain inside Z from a to b with at most max_len entries.

    nontrivial=True asks for at least one step (a return chain when a = b).
    None is an exact absence certificate: Z is finite and every edge is exact.
    """
    Z = _require_finite("find_delta_chain", Z)
    if a not in Z or b not in Z:
        raise PreconditionError("find_delta_chain", "both endpoints must belong to Z")
    if a == b and not nontrivial:
        return DeltaChain((a,), delta)
    graph = _chain_graph(Z, delta)
    best: Optional[List[Point]] = None
    if a != b:
        try:
            best = nx.shortest_path(graph, a, b)
        except nx.NetworkXNoPath:
            best = None
    else:
        for q in graph.successors(a):
            try:
                path = [a] + nx.shortest_path(graph, q, a)
            except nx.NetworkXNoPath:
                continue
            if best is None or len(path) < len(best):
                best = path
    if best is None or len(best) > max_len:
        logger.debug("no %s-chain within %d entries", delta, max_len)
        return None
    return DeltaChain(tuple(best), delta)


# ── δ-chains inside a subshift ─────────────────────────────────────────────────

def least_completion(gamma: Subshift, prefix: Word) -> EventuallyPeriodic:
    """The point of Γ that extends prefix by the smallest symbol until a window repeats."""
    w: List[int] = list(prefix)
    if not is_globally_allowed(gamma, w):
        raise PreconditionError("least_completion", "the prefix does not occur in the subshift")
    k = max(gamma.L - 1, 0)
    seen: Dict[Word, int] = {}
    while True:
        t = len(w)
        if t >= len(prefix) and t >= k:
            state = tuple(w[t - k:])
            if state in seen:
                s = seen[state]
                return ep_point(tuple(w[:s]), tuple(w[s:]))
            seen[state] = t
        w.append(right_extensions(gamma, tuple(w[max(t - k, 0):]))[0])


def _window_successors(gamma: Subshift, state: Word) -> List[Tuple[int, Word]]:
    return [(a, (state + (a,))[1:]) for a in right_extensions(gamma, state)]


def subshift_delta_chain(
    gamma: Subshift,
    x: Point,
    y: Point,
    delta: DyadicDistance,
    max_len: int,
) -> Optional[DeltaChain]:
    """
    A shortest δ-chain from x to y among all points of Γ, or None.

    With k = strict_agreement(δ), entry i+1 must start with symbols 1..k of
    entry i, so chains are walks on the allowed k-words: σ(x)'s first k
    symbols must reach y's first k symbols, one allowed (k+1)-word per step.
    Intermediate entries are least completions of those (k+1)-words.
    Exact over the search alphabet; for bounded rules that is the declared bound.
    """
    if gamma.infinite_alphabet:
        raise PreconditionError(
            "subshift_delta_chain", "needs a finite search alphabet (declared alphabet or bounded rule)",
        )
    if x == y:
        return DeltaChain((x,), delta)
    k = strict_agreement(delta)
    start, target = x.prefix(k + 1)[1:], y.prefix(k)
    alphabet = set(gamma.search_alphabet)
    if not set(start + target) <= alphabet:
        raise PreconditionError("subshift_delta_chain", "endpoints leave the search alphabet")

    graph = nx.DiGraph()
    graph.add_node(start)
    frontier = [start]
    while frontier and target not in graph:
        following = []
        for state in frontier:
            for a, nxt in _window_successors(gamma, state):
                if nxt not in graph:
                    following.append(nxt)
                graph.add_edge(state, nxt, symbol=a)
        frontier = following
    try:
        states = nx.shortest_path(graph, start, target)
    except nx.NetworkXNoPath:
        logger.debug("no %s-chain: %s never reaches %s", delta, format_word(start), format_word(target))
        return None
    if len(states) + 1 > max_len:
        logger.debug("shortest %s-chain has %d entries, above %d", delta, len(states) + 1, max_len)
        return None

    middle = [
        least_completion(gamma, p + (graph.edges[p, q]["symbol"],))
        for p, q in zip(states, states[1:])
    ]
    chain = DeltaChain((x, *middle, y), delta)
    if not chain.verify(get_settings().horizon):
        raise VerificationError("window-graph chain failed its own link check")
    logger.info("%s-chain in the subshift with %d steps", delta, chain.steps)
    return chain


def is_ict(Z: SetPresentation, delta: DyadicDistance, max_len: int) -> bool:
    """True iff every ordered pair of Z is joined by a δ-chain inside Z."""
    Z = _require_finite("is_ict", Z)
    return all(
        find_delta_chain(Z, a, b, delta, max_len) is not None
        for a in Z.points
        for b in Z.points
    )


def separation_exponent(Z: FiniteEP) -> int:
    """
    s such that below δ = 2^-s every δ-chain inside Z is an exact orbit segment.

    s = 1 + the longest common prefix among distinct points of Z ∪ σ(Z).
    """
    pool = sorted(set(Z.points) | {shift_point(p, 1) for p in Z.points}, key=repr)
    longest = -1
    for i, p in enumerate(pool):
        for q in pool[i + 1:]:
            longest = max(longest, lcp(p, q, 1).length or 0)
    return longest + 1


def default_ladder(Z: FiniteEP) -> List[DyadicDistance]:
    """2^0, 2^-1, … down past the separation scale of Z."""
    depth = max(get_settings().ict_ladder_depth, separation_exponent(Z) + 1)
    return [dyadic(m) for m in range(depth + 1)]


def is_ict_on_ladder(
    Z: SetPresentation,
    ladder: Optional[Sequence[DyadicDistance]] = None,
    max_len: Optional[int] = None,
) -> Verdict:
    """ICT at every rung of a δ-ladder; reports the first failing rung."""
    Z = _require_finite("is_ict_on_ladder", Z)
    ladder = list(ladder) if ladder is not None else default_ladder(Z)
    max_len = max_len or max(get_settings().chain_max_len, len(Z) + 1)
    for rung in ladder:
        if not is_ict(Z, rung, max_len):
            return Verdict(False, violation=rung.exponent, note=f"no chains at δ={rung}")
    return Verdict(True, note=f"ladder down to {ladder[-1]}" if ladder else "empty ladder")


def check_closed_invariant(Z: SetPresentation) -> bool:
    """σ(Z) = Z exactly (finite sets are closed)."""
    Z = _require_finite("check_closed_invariant", Z)
    return {shift_point(p, 1) for p in Z.points} == set(Z.points)


# ── ICT → asymptotic pseudo-orbit ──────────────────────────────────────────────

class ChainStream(PointStream):
    """
    z_0 → z_1 → z_2 → … joined by 2^-min(n, s)-chains, targets round-robin over Z.

    Chain n contributes its entries except the last, which opens chain n+1.
    From chain s on every link is exact. The stream is extended lazily and
    is replayable by index; it is owned by one caller, only the chains are shared.
    """

    def __init__(self, Z: FiniteEP, max_len: int) -> None:
        self.Z = Z
        self.max_len = max_len
        self.separation = separation_exponent(Z)
        self._points: List[Point] = []
        self._offsets: List[int] = []

    def _extend(self) -> None:
        chain = _stream_chain(self.Z, len(self._offsets), self.separation, self.max_len)
        self._offsets.append(len(self._points))
        self._points.extend(chain.entries[:-1])

    def __getitem__(self, i: int) -> Point:
        while len(self._points) <= i:
            self._extend()
        return self._points[i]

    def chain_start(self, n: int) -> int:
        while len(self._offsets) <= n:
            self._extend()
        return self._offsets[n]

    def rate(self, m: int) -> int:
        """Smallest N with every link at index ≥ N sharing m symbols (exact)."""
        if m <= 0:
            return 0
        exact_from = self.chain_start(self.separation)
        last_bad = -1
        for i in range(exact_from):
            image = shift_point(self[i], 1)
            if not lcp(image, self[i + 1], 1).reaches(m):
                last_bad = i
        return last_bad + 1

    def describe(self) -> dict:
        return {"kind": "chains", "set": self.Z.describe(), "separation": self.separation}


@lru_cache(maxsize=1024)
def _stream_chain(Z: FiniteEP, n: int, separation: int, max_len: int) -> DeltaChain:
    targets = Z.points
    a, b = targets[n % len(targets)], targets[(n + 1) % len(targets)]
    delta = dyadic(min(n, separation))
    chain = find_delta_chain(Z, a, b, delta, max_len, nontrivial=True)
    if chain is None:
        raise ConstructionError(f"no {delta}-chain inside Z for chain {n}", witness=(a, b))
    return chain


@lru_cache(maxsize=64)
def _ladder_verdict(Z: FiniteEP, ladder: Optional[Tuple[DyadicDistance, ...]]) -> Verdict:
    return is_ict_on_ladder(Z, ladder)


def ict_to_apo(
    Z: SetPresentation,
    ladder: Optional[Tuple[DyadicDistance, ...]] = None,
) -> AsymptoticPseudoOrbit:
    """
    An asymptotic pseudo-orbit inside Z whose ω-limit is Z.

    Targets visit every point of Z infinitely often; chain n has tightness
    2^-n until the separation scale, after which chains are exact. Each call
    gets its own stream; the chains it is assembled from are shared.
    """
    Z = _require_finite("ict_to_apo", Z)
    if not len(Z):
        raise PreconditionError("ict_to_apo", "Z must be nonempty")
    verdict = _ladder_verdict(Z, ladder)
    if not verdict:
        raise ConstructionError(f"Z is not internally chain transitive ({verdict.note})")
    stream = ChainStream(Z, max(get_settings().chain_max_len, len(Z) + 1))
    return AsymptoticPseudoOrbit(stream, stream.rate)


# ── Realizations ───────────────────────────────────────────────────────────────

@dataclass(frozen=True, eq=False)
class Realization:
    """A realizing point together with the pseudo-orbit it shadows."""

    point: Point
    apo: AsymptoticPseudoOrbit
    gamma: Subshift

    def settle(self, m: int) -> int:
        """Index after which σ^i(point) stays within 2^-m of Z."""
        return settling_index(self.gamma, self.apo, m)


def _require_members(operation: str, gamma: Subshift, Z: FiniteEP) -> None:
    horizon = get_settings().horizon
    for p in Z.points:
        if not point_in_subshift(gamma, p, max(horizon, gamma.L)):
            raise PreconditionError(operation, "every point of Z must belong to the subshift")


def ict_realization(gamma: Subshift, Z: SetPresentation, horizon: Optional[int] = None) -> Realization:
    """realize_ict with the underlying pseudo-orbit and settling indices exposed."""
    Z = _require_finite("realize_ict", Z)
    if not gamma.is_sbt:
        raise PreconditionError("realize_ict", "the basis is not bounded")
    _require_members("realize_ict", gamma, Z)
    apo = ict_to_apo(Z)
    point = synthesize_asymptotic_shadow(gamma, apo, horizon)
    logger.info("realized %d-point ICT set as an attracting ω-limit set", len(Z))
    return Realization(point, apo, gamma)


def realize_ict(gamma: Subshift, Z: SetPresentation, horizon: Optional[int] = None) -> Point:
    """A point of the subshift whose ω-limit set is the closed ICT set Z (attracting)."""
    return ict_realization(gamma, Z, horizon).point


def sft_connecting_chain(gamma: Subshift, x: Point, y: Point, delta: DyadicDistance) -> DeltaChain:
    """
    x, z, σ(z), …, σ^N(z) = c·y, σ^(N+1)(z) = y with z = x_[1, N+1) c y.

    N is the least integer with 2^-N < δ and c a fresh symbol, so the chain
    lies in the subshift and its only nonzero defect is the first link.
    """
    if not gamma.infinite_alphabet:
        raise PreconditionError(
            "sft_connecting_chain", "needs an explicit basis over the infinite alphabet",
        )
    N = strict_agreement(delta)
    horizon = max(get_settings().horizon, gamma.L, N + 2)
    for p in (x, y):
        if not point_in_subshift(gamma, p, horizon):
            raise PreconditionError("sft_connecting_chain", "endpoints must belong to the subshift")
    avoid = symbols_of(x, N + 2) | symbols_of(y, max(gamma.L, 1))
    c = fresh_symbols(gamma, 1, avoid)[0]
    z = heads_then_tail(x.window(1, N) + (c,), y)
    chain = DeltaChain((x,) + tuple(shift_point(z, k) for k in range(N + 2)), delta)

    for i, entry in enumerate(chain.entries):
        if not point_in_subshift(gamma, entry, horizon + N):
            raise VerificationError(f"chain entry {i} left the subshift")
    check = chain.verify(horizon + N)
    if not check:
        raise VerificationError(f"chain link {check.violation} is not below {delta}")
    logger.info("connecting chain with N=%d through fresh symbol %d", N, c)
    return chain


def realize_invariant_sft(gamma: Subshift, Z: SetPresentation, horizon: Optional[int] = None) -> Point:
    """
    x = b_0 s_0 b_1 s_1 … with ω(x) = Z for a closed invariant Z in an SFT.

    Blocks follow the round-robin prefix schedule; separators are strictly
    increasing symbols absent from the basis and from Z.
    """
    Z = _require_finite("realize_invariant_sft", Z)
    if not gamma.infinite_alphabet:
        raise PreconditionError(
            "realize_invariant_sft", "needs an explicit basis over the infinite alphabet",
        )
    if not len(Z):
        raise PreconditionError("realize_invariant_sft", "Z must be nonempty")
    if not check_closed_invariant(Z):
        raise PreconditionError("realize_invariant_sft", "Z is not σ-invariant")
    _require_members("realize_invariant_sft", gamma, Z)

    start = fresh_symbols(gamma, 1, Z.symbols)[0]
    x = Interleave(Z.points, start)
    horizon = horizon or get_settings().horizon
    if not point_in_subshift(gamma, x, horizon):
        raise VerificationError("interleaved point left the subshift")
    logger.info("realized closed invariant set of %d points, separators from %d", len(Z), start)
    return x


# ── Confinement and attracting chains ──────────────────────────────────────────

def forward_confinement(x: Point, horizon: int) -> Verdict:
    """Every symbol of σ^n(x), n < horizon, is at most the initial symbol of x."""
    a = x.symbol_at(0)
    for i in range(horizon):
        if x.symbol_at(i) > a:
            return Verdict(False, exact=False, violation=i)
    return Verdict(True, exact=x.is_periodic and horizon >= len(x.preperiod) + len(x.period))


def is_non_increasing(gamma: Subshift) -> bool:
    basis = gamma.basis
    return isinstance(basis, BoundedRule) and basis.name == "monotone" \
        and dict(basis.params).get("direction") == "non-increasing"


def chain_symbol_bound(chain: DeltaChain, horizon: int) -> Verdict:
    """
    No entry of the chain carries a symbol above the initial symbol of its first entry.

    Holds for every chain inside the non-increasing shift: each link forces
    entries[i+1]_0 = entries[i]_1 ≤ entries[i]_0.
    """
    bound = chain.entries[0].symbol_at(0)
    for i, entry in enumerate(chain.entries):
        if max(symbols_of(entry, horizon)) > bound:
            return Verdict(False, exact=entry.is_periodic, violation=i)
    return Verdict(True, exact=all(e.is_periodic for e in chain.entries))


def confinement_certificate(gamma: Subshift, x: Point, y: Point) -> Optional[str]:
    """
    Why no δ-chain from x to y exists anywhere in the non-increasing shift.

    Every entry of a chain from x keeps its symbols at most x_0, so a target
    carrying a larger symbol is unreachable at every δ.
    """
    if not is_non_increasing(gamma):
        return None
    bound = x.symbol_at(0)
    top = max(symbols_of(y, get_settings().horizon))
    if top > bound:
        return f"every chain from x stays in {{0..{bound}}}^ω but the target carries {top}"
    return None


def attracting_to_chain(
    x: Point,
    Z: SetPresentation,
    delta: DyadicDistance,
    a: Point,
    b: Point,
    N: int,
    horizon: int,
) -> Optional[DeltaChain]:
    """
    Read a δ-chain inside Z from a to b off an attracting orbit of x.

    Finds i0 ≥ N with σ^i0(x) close to a and i1 > i0 with σ^i1(x) close to b,
    then snaps every intermediate orbit point to a point of Z sharing its
    first need+1 symbols. None when the horizon is too short.
    """
    Z = _require_finite("attracting_to_chain", Z)
    if a == b:
        return DeltaChain((a,), delta)
    k = strict_agreement(delta) + 1

    def snap(y: Point) -> Optional[Point]:
        return next((p for p in Z.points if agree(y, p, k)), None)

    i0 = next((i for i in range(N, horizon) if agree(shift_point(x, i), a, k)), None)
    if i0 is None:
        return None
    i1 = next((i for i in range(i0 + 1, horizon) if agree(shift_point(x, i), b, k)), None)
    if i1 is None:
        return None
    entries: List[Point] = [a]
    for i in range(i0 + 1, i1):
        q = snap(shift_point(x, i))
        if q is None:
            return None
        entries.append(q)
    entries.append(b)
    chain = DeltaChain(tuple(entries), delta)
    return chain if chain.verify(horizon) else None
