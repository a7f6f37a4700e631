"""
Test suite: Subshifts
Tests basis validation, local and global admissibility, the gluing bound,
fresh symbols and point membership, plus exhaustive local-to-global and
gluing checks on random and pinned explicit bases.
"""
from __future__ import annotations

import itertools
import random

import pytest
from hypothesis import given, strategies as st

from shiftlab.errors import PreconditionError, SpecError
from shiftlab.points import Remark1, constant, ep_point
from shiftlab.sampling import random_basis
from shiftlab.subshift import (
    ExplicitFinite,
    Tally,
    fresh_symbols,
    gluing_bound,
    gluing_instances,
    is_globally_allowed,
    is_locally_allowed,
    local_global_agreement,
    point_in_subshift,
    enumeration_alphabet,
    right_extensions,
    validate_basis,
    verify_gluing,
    words_up_to,
)


# ── Tests ─────────────────────────────────────────────────────────────────────


class TestValidateBasis:
    def test_empty_basis_is_full_shift(self, full) -> None:
        """No forbidden words: L=0, an SFT, and the full shift."""
        assert full.L == 0
        assert full.is_sft and full.is_full_shift

    def test_single_pair(self, sft_21) -> None:
        """{2 1} has L=2 and active alphabet {1, 2}."""
        assert sft_21.L == 2
        assert sft_21.active_alphabet == {1, 2}
        assert sft_21.is_sft

    def test_monotone_is_sbt_not_sft(self, monotone) -> None:
        """The rule-defined basis is bounded but infinite."""
        assert monotone.L == 2
        assert monotone.is_sbt and not monotone.is_sft

    def test_sft_implies_sbt(self, full, sft_21, sft_010, dichotomy) -> None:
        """Every finite basis is also a bounded basis."""
        for gamma in (full, sft_21, sft_010, dichotomy):
            assert gamma.is_sbt

    def test_rejects_empty_word(self) -> None:
        """The empty word cannot be forbidden."""
        with pytest.raises(SpecError):
            validate_basis(ExplicitFinite(frozenset({()})))

    def test_rejects_negative_symbols(self) -> None:
        """Symbols are natural numbers."""
        with pytest.raises(SpecError):
            validate_basis(ExplicitFinite(frozenset({(0, -1)})))

    def test_window_graph(self, dichotomy) -> None:
        """Only 0 and 1 survive as windows, and both extend forever."""
        assert set(dichotomy.window_graph.nodes) == {(0,), (1,)}
        assert dichotomy.extendable == {(0,), (1,)}


class TestLocalAllowed:
    def test_monotone_examples(self, monotone) -> None:
        """Non-rising words pass, a rise fails."""
        assert is_locally_allowed(monotone, (3, 2, 2, 1))
        assert not is_locally_allowed(monotone, (1, 2))

    def test_full_shift(self, full) -> None:
        """Every word is allowed in the full shift."""
        assert is_locally_allowed(full, (9, 0, 4, 4, 100))

    def test_declared_alphabet(self, dichotomy) -> None:
        """Symbols outside a declared alphabet are forbidden."""
        assert not is_locally_allowed(dichotomy, (1, 5))


class TestGlobalAllowed:
    def test_full_shift(self, full) -> None:
        """[5, 0, 9] occurs in the full shift."""
        assert is_globally_allowed(full, (5, 0, 9))

    def test_dichotomy_pair(self, dichotomy) -> None:
        """s0 s1 is forbidden; s1 s0 continues as s1 s0^ω."""
        assert not is_globally_allowed(dichotomy, (0, 1))
        assert is_globally_allowed(dichotomy, (1, 0))

    def test_dead_end_window(self) -> None:
        """A locally allowed word whose window cannot continue is not globally allowed."""
        gamma = validate_basis(ExplicitFinite(frozenset({(1, 0), (1, 1)}), frozenset({0, 1})))
        assert is_locally_allowed(gamma, (0, 1))
        assert not is_globally_allowed(gamma, (0, 1))
        assert right_extensions(gamma, (0,)) == [0]

    def test_factorial_and_extendable(self, sft_010, dichotomy) -> None:
        """Factors of allowed words are allowed and allowed words extend to the right."""
        for gamma in (sft_010, dichotomy):
            for w in words_up_to(gamma.search_alphabet, 4):
                if not is_globally_allowed(gamma, w):
                    continue
                for i, j in itertools.combinations(range(len(w) + 1), 2):
                    assert is_globally_allowed(gamma, w[i:j])
                assert right_extensions(gamma, w)

    @given(st.randoms(use_true_random=False))
    def test_local_equals_global(self, rng) -> None:
        """Over the infinite alphabet, local and global admissibility agree on every short word."""
        gamma = random_basis(rng)
        tally = local_global_agreement(gamma, 3)
        a = len(enumeration_alphabet(gamma))
        assert tally.checked == sum(a ** n for n in range(4))
        assert tally.failures == 0


class TestGluing:
    def test_gluing_bounds(self, full, monotone, sft_010) -> None:
        """M = max(L-1, 0)."""
        assert gluing_bound(full) == 0
        assert gluing_bound(monotone) == 1
        assert gluing_bound(sft_010) == 2

    def test_monotone_instance(self, monotone) -> None:
        """5 3, 3 1 and 5 3 1 are all allowed."""
        assert verify_gluing(monotone, (5,), (3,), (1,))

    def test_full_shift_empty_middle(self, full) -> None:
        """The full shift glues across the empty word."""
        assert verify_gluing(full, (7,), (), (9,))

    def test_vacuous_instance(self, sft_010) -> None:
        """0 1 0 is itself forbidden, so the premise fails and the implication holds."""
        assert not is_globally_allowed(sft_010, (0, 1, 0))
        assert verify_gluing(sft_010, (0,), (1, 0), (1,))

    def test_short_middle_rejected(self, sft_010) -> None:
        """|w| below the bound is a precondition failure."""
        with pytest.raises(PreconditionError):
            verify_gluing(sft_010, (0,), (1,), (0,))

    @given(st.randoms(use_true_random=False))
    def test_random_gluing(self, rng) -> None:
        """No triple with |u|, |v| ≤ 1 and M ≤ |w| ≤ M+1 breaks the gluing implication."""
        gamma = random_basis(rng)
        assert gluing_instances(gamma, 1, 1)


class TestExhaustiveChecks:
    def test_enumeration_alphabet(self, sft_010, dichotomy) -> None:
        """The active alphabet plus one fresh symbol, or the declared alphabet."""
        assert enumeration_alphabet(sft_010) == (0, 1, 2)
        assert enumeration_alphabet(dichotomy) == (0, 1, 2)

    def test_words_up_to(self) -> None:
        """Shortest words come first and every length is complete."""
        words = list(words_up_to((0, 1), 2))
        assert words[:3] == [(), (0,), (1,)]
        assert len(words) == 7

    def test_gluing_count(self, sft_010) -> None:
        """|w| = 2 over three symbols with |u|, |v| ≤ 1 gives 9 · 4 · 4 triples."""
        tally = gluing_instances(sft_010, 1, 0)
        assert tally == Tally(144, 0)

    def test_dead_end_disagrees(self) -> None:
        """On a declared alphabet with a dead-end window, local and global answers differ."""
        gamma = validate_basis(ExplicitFinite(frozenset({(1, 0), (1, 1)}), frozenset({0, 1})))
        tally = local_global_agreement(gamma, 2)
        assert tally.failures > 0
        assert not tally

    def test_seeded_sample(self) -> None:
        """The leading bases of the pinned sample pass both exhaustive checks."""
        rng = random.Random(20240501)
        for _ in range(5):
            gamma = random_basis(rng)
            assert local_global_agreement(gamma, 5)
            assert gluing_instances(gamma, 1, 1)


class TestFreshSymbols:
    def test_full_shift(self, full) -> None:
        """Fresh symbols start above the avoided set."""
        assert fresh_symbols(full, 3, {0, 1}) == [2, 3, 4]

    def test_above_active_alphabet(self, sft_21) -> None:
        """Fresh symbols start above the basis symbols."""
        assert fresh_symbols(sft_21, 1) == [3]

    def test_rule_basis_has_none(self, monotone) -> None:
        """A rule constraining every pair has no fresh symbols."""
        with pytest.raises(PreconditionError):
            fresh_symbols(monotone, 1)

    def test_finite_alphabet_has_none(self, dichotomy) -> None:
        """A declared finite alphabet has no symbols to spare."""
        with pytest.raises(PreconditionError):
            fresh_symbols(dichotomy, 1)


class TestMembership:
    def test_monotone_descending(self, monotone) -> None:
        """3 2 1 0^ω never rises."""
        verdict = point_in_subshift(monotone, ep_point((3, 2, 1), (0,)), 8)
        assert verdict.ok and verdict.exact

    def test_monotone_rise(self, monotone) -> None:
        """0 1^ω rises at index 0."""
        verdict = point_in_subshift(monotone, ep_point((0,), (1,)), 8)
        assert not verdict.ok
        assert verdict.violation == 0

    def test_full_shift_scheme_point(self, full) -> None:
        """Scheme points are checked to the horizon."""
        verdict = point_in_subshift(full, Remark1(), 64)
        assert verdict.ok and not verdict.exact

    def test_periodic_scan_is_widened(self, sft_21) -> None:
        """A forbidden factor past a short horizon is still found for periodic points."""
        x = ep_point((0,) * 10, (2, 1))
        assert not point_in_subshift(sft_21, x, 2)
        assert point_in_subshift(sft_21, constant(2), 2)

    def test_horizon_below_L(self, sft_010) -> None:
        """The horizon must cover one basis word."""
        with pytest.raises(PreconditionError):
            point_in_subshift(sft_010, constant(0), 2)
