"""
Forbidden-word bases and allowed-word queries.

A subshift is presented by a basis of forbidden words:
  ExplicitFinite  a finite set of words (SFT), optionally confined to a finite
                  declared alphabet
  BoundedRule     a decidable predicate on words of length ≤ max_len (SBT),
                  searched over the symbols below a declared bound

Local admissibility is a factor scan against the basis. Global admissibility
(w occurs in some point) is decided on the window graph: vertices are the
locally allowed words of length L-1, edges the locally allowed words of
length L, and w is allowed iff its last window can reach a cycle.

For an ExplicitFinite basis over the infinite alphabet every symbol outside
the active alphabet behaves the same, so one class symbol stands for all of
them and the answers are exact. The exhaustive checks at the end enumerate
words over that alphabet with a real fresh symbol.
"""

from __future__ import annotations

import itertools
import logging
from dataclasses import dataclass, field
from typing import Callable, Dict, FrozenSet, Iterable, Iterator, List, Optional, Tuple, Union

import networkx as nx

from shiftlab.core import Verdict, Word, format_word
from shiftlab.errors import PreconditionError, SpecError
from shiftlab.points import EventuallyPeriodic, Point

logger = logging.getLogger(__name__)


# ── Bases ──────────────────────────────────────────────────────────────────────

@dataclass(frozen=True)
class ExplicitFinite:
    """A finite forbidden basis; alphabet=None means the alphabet is all of ω."""

    words: FrozenSet[Word]
    alphabet: Optional[FrozenSet[int]] = None


@dataclass(frozen=True)
class BoundedRule:
    """
    A rule-defined basis: rule(w) is True when w (|w| ≤ max_len) is a basis word.

    alphabet_bound caps the symbols enumerated by searches; answers that
    depend on the search are exact only up to that bound.
    """

    name: str
    max_len: int
    rule: Callable[[Word], bool] = field(compare=False)
    alphabet_bound: int
    params: Tuple[Tuple[str, object], ...] = ()

    def forbids(self, w: Word) -> bool:
        return 0 < len(w) <= self.max_len and self.rule(w)


ForbiddenBasis = Union[ExplicitFinite, BoundedRule]


# ── Subshift ───────────────────────────────────────────────────────────────────

@dataclass(frozen=True, eq=False)
class Subshift:
    """A validated basis with its derived data and cached window graph."""

    basis: ForbiddenBasis
    max_basis_length: int
    active_alphabet: FrozenSet[int]
    is_sft: bool
    is_sbt: bool
    search_alphabet: Tuple[int, ...]
    class_symbol: Optional[int]
    window_graph: nx.DiGraph = field(repr=False)
    extendable: FrozenSet[Word] = field(repr=False)
    _by_length: Dict[int, FrozenSet[Word]] = field(default_factory=dict, repr=False)

    @property
    def L(self) -> int:
        return self.max_basis_length

    @property
    def is_full_shift(self) -> bool:
        return isinstance(self.basis, ExplicitFinite) and not self.basis.words \
            and self.basis.alphabet is None

    @property
    def infinite_alphabet(self) -> bool:
        """True when fresh symbols exist (explicit basis over all of ω)."""
        return isinstance(self.basis, ExplicitFinite) and self.basis.alphabet is None

    @property
    def exact_alphabet(self) -> bool:
        """False when global answers hold only up to a declared symbol bound."""
        return isinstance(self.basis, ExplicitFinite)

    def describe(self) -> Dict[str, object]:
        if isinstance(self.basis, BoundedRule):
            basis: Dict[str, object] = {
                "kind": "rule",
                "name": self.basis.name,
                "max_len": self.basis.max_len,
                "alphabet_bound": self.basis.alphabet_bound,
                **dict(self.basis.params),
            }
        else:
            basis = {
                "kind": "sft",
                "forbidden": [list(w) for w in sorted(self.basis.words)],
            }
            if self.basis.alphabet is not None:
                basis["alphabet"] = sorted(self.basis.alphabet)
        return {
            "basis": basis,
            "max_basis_length": self.L,
            "active_alphabet": sorted(self.active_alphabet),
            "is_sft": self.is_sft,
            "is_sbt": self.is_sbt,
            "exact_alphabet": self.exact_alphabet,
        }


# ── Local admissibility ────────────────────────────────────────────────────────

def first_forbidden(gamma: Subshift, w: Word) -> Optional[int]:
    """Start index of the leftmost basis factor of w, or None."""
    basis = gamma.basis
    if isinstance(basis, ExplicitFinite):
        if basis.alphabet is not None:
            for i, s in enumerate(w):
                if s not in basis.alphabet:
                    return i
        lengths = gamma._by_length
        for i in range(len(w)):
            for n, words in lengths.items():
                if i + n <= len(w) and w[i:i + n] in words:
                    return i
        return None
    for i in range(len(w)):
        for n in range(1, basis.max_len + 1):
            if i + n <= len(w) and basis.forbids(w[i:i + n]):
                return i
    return None


def is_locally_allowed(gamma: Subshift, w: Word) -> bool:
    """True iff no factor of w is a basis word."""
    return first_forbidden(gamma, tuple(w)) is None


# ── Window graph ───────────────────────────────────────────────────────────────

def _build_window_graph(
    allowed: Callable[[Word], bool], alphabet: Tuple[int, ...], L: int,
) -> Tuple[nx.DiGraph, FrozenSet[Word]]:
    k = max(L - 1, 0)
    graph = nx.DiGraph()
    for u in itertools.product(alphabet, repeat=k):
        if allowed(u):
            graph.add_node(u)
    for u in list(graph.nodes):
        for a in alphabet:
            edge = u + (a,)
            if allowed(edge):
                v = edge[1:] if k else ()
                graph.add_edge(u, v, symbol=a)

    # A vertex extends forever iff it can reach a cycle.
    condensed = nx.condensation(graph)
    live = set()
    for c in reversed(list(nx.topological_sort(condensed))):
        members = condensed.nodes[c]["members"]
        cyclic = len(members) > 1 or any(graph.has_edge(v, v) for v in members)
        if cyclic or any(d in live for d in condensed.successors(c)):
            live.add(c)
    extendable = frozenset(
        v for c in live for v in condensed.nodes[c]["members"]
    )
    logger.debug(
        "window graph: %d vertices, %d edges, %d extendable",
        graph.number_of_nodes(), graph.number_of_edges(), len(extendable),
    )
    return graph, extendable


def validate_basis(spec: ForbiddenBasis) -> Subshift:
    """Validate a basis and compute L, the active alphabet, kind flags and the window graph."""
    if isinstance(spec, ExplicitFinite):
        words = frozenset(tuple(w) for w in spec.words)
        if any(len(w) == 0 for w in words):
            raise SpecError("the empty word cannot belong to a forbidden basis")
        if any(s < 0 for w in words for s in w):
            raise SpecError("basis symbols must be nonnegative")
        if spec.alphabet is not None and not spec.alphabet:
            raise SpecError("a declared alphabet must be nonempty")
        L = max((len(w) for w in words), default=0)
        active = frozenset(s for w in words for s in w)
        by_length: Dict[int, FrozenSet[Word]] = {}
        for n in sorted({len(w) for w in words}):
            by_length[n] = frozenset(w for w in words if len(w) == n)
        if spec.alphabet is None:
            class_symbol: Optional[int] = max(active, default=-1) + 1
            alphabet = tuple(sorted(active)) + (class_symbol,)
        else:
            class_symbol = None
            alphabet = tuple(sorted(spec.alphabet))
        basis: ForbiddenBasis = ExplicitFinite(words, spec.alphabet)
        is_sft = True
    elif isinstance(spec, BoundedRule):
        if spec.max_len < 1:
            raise SpecError("a bounded rule needs max_len ≥ 1")
        if spec.alphabet_bound < 1:
            raise SpecError("a bounded rule needs alphabet_bound ≥ 1")
        L = spec.max_len
        active = frozenset()
        by_length = {}
        class_symbol = None
        alphabet = tuple(range(spec.alphabet_bound))
        basis = spec
        is_sft = False
    else:
        raise SpecError(f"unknown basis kind {type(spec).__name__}")

    # is_sft ⇒ is_sbt: a finite basis is bounded by its longest word.
    draft = Subshift(
        basis=basis, max_basis_length=L, active_alphabet=active,
        is_sft=is_sft, is_sbt=True, search_alphabet=alphabet,
        class_symbol=class_symbol, window_graph=nx.DiGraph(),
        extendable=frozenset(), _by_length=by_length,
    )
    graph, extendable = _build_window_graph(
        lambda w: first_forbidden(draft, w) is None, alphabet, L,
    )
    gamma = Subshift(
        basis=basis, max_basis_length=L, active_alphabet=active,
        is_sft=is_sft, is_sbt=True, search_alphabet=alphabet,
        class_symbol=class_symbol, window_graph=graph,
        extendable=extendable, _by_length=by_length,
    )
    logger.info(
        "validated subshift: L=%d, sft=%s, active=%s",
        L, is_sft, sorted(active),
    )
    return gamma


# ── Global admissibility ───────────────────────────────────────────────────────

def _to_search_alphabet(gamma: Subshift, w: Word) -> Word:
    if gamma.class_symbol is None:
        return w
    return tuple(s if s in gamma.active_alphabet else gamma.class_symbol for s in w)


def is_globally_allowed(gamma: Subshift, w: Word) -> bool:
    """True iff w is a factor of some point of the subshift."""
    w = tuple(w)
    if not is_locally_allowed(gamma, w):
        return False
    k = max(gamma.L - 1, 0)
    mapped = _to_search_alphabet(gamma, w)
    if len(mapped) >= k:
        window = mapped[len(mapped) - k:]
        if window not in gamma.window_graph:
            # Only a bounded rule can see symbols beyond its search alphabet.
            logger.warning(
                "window %s lies outside the declared alphabet bound; answering locally",
                format_word(window),
            )
            return True
        return window in gamma.extendable
    return any(v[:len(mapped)] == mapped for v in gamma.extendable)


def right_extensions(gamma: Subshift, w: Word) -> List[int]:
    """Symbols a of the search alphabet with w·a globally allowed."""
    return [a for a in gamma.search_alphabet if is_globally_allowed(gamma, tuple(w) + (a,))]


# ── Gluing ─────────────────────────────────────────────────────────────────────

def gluing_bound(gamma: Subshift) -> int:
    """M = max(L-1, 0): uw, wv allowed and |w| ≥ M imply uwv allowed."""
    if not gamma.is_sbt:
        raise PreconditionError("gluing_bound", "the basis is not bounded")
    return max(gamma.L - 1, 0)


def verify_gluing(gamma: Subshift, u: Word, w: Word, v: Word) -> bool:
    """Truth of the gluing implication for one (u, w, v) instance."""
    bound = gluing_bound(gamma)
    if len(w) < bound:
        raise PreconditionError(
            "verify_gluing", f"|w| = {len(w)} is below the gluing bound {bound}",
        )
    u, w, v = tuple(u), tuple(w), tuple(v)
    premise = is_globally_allowed(gamma, u + w) and is_globally_allowed(gamma, w + v)
    return (not premise) or is_globally_allowed(gamma, u + w + v)


# ── Fresh symbols ──────────────────────────────────────────────────────────────

def fresh_symbols(gamma: Subshift, count: int, avoid: Iterable[int] = ()) -> List[int]:
    """
    `count` consecutive symbols absent from every basis word and from `avoid`.

    Policy: start at 1 + max(active alphabet ∪ avoid ∪ {-1}).
    """
    if not gamma.infinite_alphabet:
        raise PreconditionError(
            "fresh_symbols", "only explicit bases over the infinite alphabet have fresh symbols",
        )
    if count < 1:
        raise PreconditionError("fresh_symbols", "count must be positive")
    start = 1 + max(set(gamma.active_alphabet) | set(avoid), default=-1)
    return list(range(start, start + count))


# ── Membership ─────────────────────────────────────────────────────────────────

def point_in_subshift(gamma: Subshift, x: Point, horizon: int) -> Verdict:
    """
    Every factor of x avoids the basis.

    Exact for eventually periodic points (the scan is widened to
    preperiod + 2·period + L), checked to `horizon` otherwise.
    """
    if horizon < gamma.L:
        raise PreconditionError("point_in_subshift", f"horizon {horizon} is below L={gamma.L}")
    exact = isinstance(x, EventuallyPeriodic)
    n = horizon
    if exact:
        n = max(horizon, len(x.preperiod) + 2 * len(x.period) + gamma.L)
    hit = first_forbidden(gamma, x.prefix(n))
    if hit is not None:
        return Verdict(False, exact=True, violation=hit, note="forbidden factor")
    if not exact:
        logger.debug("membership checked to horizon %d only", n)
    return Verdict(True, exact=exact, note="" if exact else f"checked to horizon {n}")


# ── Exhaustive checks ──────────────────────────────────────────────────────────

@dataclass(frozen=True)
class Tally:
    """How many instances an exhaustive check enumerated and how many failed."""

    checked: int
    failures: int

    def __bool__(self) -> bool:
        return self.failures == 0


def words_up_to(alphabet: Iterable[int], max_len: int) -> Iterator[Word]:
    """Every word over alphabet of length 0..max_len, shortest first."""
    symbols = tuple(alphabet)
    for n in range(max_len + 1):
        yield from itertools.product(symbols, repeat=n)


def enumeration_alphabet(gamma: Subshift) -> Tuple[int, ...]:
    """The active alphabet plus one fresh symbol, or the finite search alphabet."""
    if gamma.infinite_alphabet:
        return tuple(sorted(gamma.active_alphabet)) + tuple(fresh_symbols(gamma, 1))
    return tuple(gamma.search_alphabet)


def local_global_agreement(gamma: Subshift, max_len: int) -> Tally:
    """is_locally_allowed = is_globally_allowed on every word over the enumeration alphabet of length ≤ max_len."""
    checked = failures = 0
    for w in words_up_to(enumeration_alphabet(gamma), max_len):
        checked += 1
        if is_locally_allowed(gamma, w) != is_globally_allowed(gamma, w):
            failures += 1
            logger.warning("local and global admissibility disagree on %s", format_word(w))
    return Tally(checked, failures)


def gluing_instances(gamma: Subshift, side: int, slack: int) -> Tally:
    """verify_gluing on every (u, w, v) with |u|, |v| ≤ side and M ≤ |w| ≤ M + slack."""
    symbols = enumeration_alphabet(gamma)
    bound = gluing_bound(gamma)
    sides = list(words_up_to(symbols, side))
    checked = failures = 0
    for n in range(bound, bound + slack + 1):
        for w in itertools.product(symbols, repeat=n):
            for u, v in itertools.product(sides, sides):
                checked += 1
                if not verify_gluing(gamma, u, w, v):
                    failures += 1
                    logger.warning(
                        "gluing fails for %s | %s | %s",
                        format_word(u), format_word(w), format_word(v),
                    )
    return Tally(checked, failures)
