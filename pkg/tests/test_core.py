"""
Test suite: Core
Tests the word codec, factor queries, dyadic distances and longest common prefixes.
"""
from __future__ import annotations

import pytest
from hypothesis import given, strategies as st

from shiftlab.core import (
    ONE,
    ZERO,
    CommonPrefix,
    contains_factor,
    distance,
    dyadic,
    format_word,
    lcp,
    parse_dyadic,
    parse_word,
    strict_agreement,
)
from shiftlab.errors import PreconditionError, SpecError
from shiftlab.points import Remark1, constant, ep_point


# ── Helpers ──────────────────────────────────────────────────────────────────

symbols = st.integers(min_value=0, max_value=3)
ep_points = st.builds(
    ep_point,
    st.lists(symbols, max_size=3).map(tuple),
    st.lists(symbols, min_size=1, max_size=3).map(tuple),
)


# ── Tests ─────────────────────────────────────────────────────────────────────


class TestWords:
    def test_parse_and_format(self) -> None:
        """The codec reads space-separated base-10 symbols."""
        assert parse_word("0 4 1 1") == (0, 4, 1, 1)
        assert format_word((0, 4, 1, 1)) == "0 4 1 1"

    def test_empty_word(self) -> None:
        """The empty literal is the empty word."""
        assert parse_word("") == ()
        assert format_word(()) == ""

    def test_malformed_word(self) -> None:
        """Non-integer and negative symbols are rejected."""
        with pytest.raises(SpecError):
            parse_word("0 a")
        with pytest.raises(SpecError):
            parse_word("-1")

    def test_contains_factor(self) -> None:
        """Factor queries on the documented examples."""
        assert contains_factor((0, 0, 0, 4), (0, 4))
        assert not contains_factor((0, 1, 2), (2, 1))
        assert contains_factor((3, 2, 2, 1), (2, 2))

    def test_empty_factor(self) -> None:
        """The empty word is a factor of every word."""
        assert contains_factor((), ())
        assert contains_factor((1, 2), ())


class TestDyadic:
    def test_literals(self) -> None:
        """2^-m, 1 and 0 parse; anything else is a SpecError."""
        assert parse_dyadic("2^-3") == dyadic(3)
        assert parse_dyadic("1") == ONE
        assert parse_dyadic("0") == ZERO
        with pytest.raises(SpecError):
            parse_dyadic("0.5")

    def test_ordering_by_value(self) -> None:
        """Larger exponents are smaller distances; 0 is the smallest."""
        assert dyadic(3) < dyadic(2) < ONE
        assert ZERO < dyadic(50)
        assert str(dyadic(2)) == "2^-2"

    def test_strict_agreement(self) -> None:
        """d < 2^-m needs m+1 shared symbols; d < 0 is impossible."""
        assert strict_agreement(dyadic(2)) == 3
        assert strict_agreement(ONE) == 1
        with pytest.raises(PreconditionError):
            strict_agreement(ZERO)


class TestLcp:
    def test_identical_points(self) -> None:
        """lcp of a point with itself is infinite."""
        assert lcp(constant(0), constant(0), 10) == CommonPrefix(None)

    def test_differ_at_zero(self) -> None:
        """(01)^ω and (10)^ω differ at index 0."""
        assert lcp(ep_point((), (0, 1)), ep_point((), (1, 0)), 10).length == 0

    def test_two_symbols(self) -> None:
        """0 0 1^ω and 0 0 0^ω agree on exactly two symbols."""
        assert lcp(ep_point((0, 0), (1,)), constant(0), 10).length == 2

    def test_exact_beyond_horizon(self) -> None:
        """Eventually periodic pairs are exact even when the answer exceeds the horizon."""
        x = ep_point((0,) * 20, (1,))
        assert lcp(x, constant(0), 5).length == 20

    def test_scheme_sentinel(self) -> None:
        """Scheme points agreeing to the horizon give the ≥horizon sentinel."""
        prefix = lcp(Remark1(), Remark1(), 12)
        assert prefix.at_least and prefix.length == 12

    def test_horizon_must_be_positive(self) -> None:
        """A zero horizon is a precondition failure."""
        with pytest.raises(PreconditionError):
            lcp(constant(0), constant(1), 0)


class TestDistance:
    def test_documented_examples(self) -> None:
        """d(x,x)=0, first-symbol mismatch gives 1, lcp 2 gives 1/4."""
        assert distance(constant(0), constant(0), 10) == ZERO
        assert distance(ep_point((), (0, 1)), ep_point((), (1, 0)), 10) == ONE
        assert distance(ep_point((0, 0), (1,)), constant(0), 10) == dyadic(2)

    def test_truncated_flag(self) -> None:
        """Horizon-limited answers are flagged."""
        assert distance(Remark1(), Remark1(), 8).truncated

    @given(ep_points, ep_points)
    def test_symmetry_and_identity(self, x, y) -> None:
        """d is symmetric and vanishes exactly on equal points."""
        assert distance(x, y, 16) == distance(y, x, 16)
        assert distance(x, y, 16).is_zero == (x == y)

    @given(ep_points, ep_points, ep_points)
    def test_ultrametric(self, x, y, z) -> None:
        """d(x,z) ≤ max(d(x,y), d(y,z))."""
        assert distance(x, z, 16) <= max(distance(x, y, 16), distance(y, z, 16))

    @given(ep_points, ep_points, st.integers(min_value=0, max_value=8))
    def test_convention(self, x, y, m) -> None:
        """d < 2^-m exactly when the points share m+1 symbols."""
        assert (distance(x, y, 16) < dyadic(m)) == lcp(x, y, 16).reaches(m + 1)
