"""
Test suite: Shadowing
Tests the shadowing modulus, pseudo-orbit and shadow verification, the
diagonal shadow, back-extension, asymptotic shadows and expansivity, plus
randomized shadowing runs on small explicit bases.
"""
from __future__ import annotations

import pytest
from hypothesis import given, strategies as st

from shiftlab.core import ONE, ZERO, dyadic
from shiftlab.errors import PreconditionError
from shiftlab.points import (
    CyclicStream,
    OrbitStream,
    Remark1,
    constant,
    ep_point,
    shift_point,
)
from shiftlab.sampling import random_basis, random_pseudo_orbit
from shiftlab.shadowing import (
    AsymptoticPseudoOrbit,
    PseudoOrbit,
    back_extend,
    expansivity_witness,
    settling_index,
    shadowing_modulus,
    synthesize_asymptotic_shadow,
    synthesize_shadow,
    verify_pseudo_orbit,
    verify_shadow,
)
from shiftlab.subshift import point_in_subshift


# ── Helpers ──────────────────────────────────────────────────────────────────

def exact_orbit(x, n, delta):
    return PseudoOrbit(tuple(shift_point(x, i) for i in range(n)), delta)


def staircase():
    """[0 1 2^ω, 1 2 3^ω, 2 3 4^ω]: each image agrees with its successor on two symbols."""
    return PseudoOrbit(
        (ep_point((0, 1), (2,)), ep_point((1, 2), (3,)), ep_point((2, 3), (4,))),
        dyadic(1),
    )


# ── Tests ─────────────────────────────────────────────────────────────────────


class TestModulus:
    def test_full_shift(self, full) -> None:
        """ε = 1/4 needs three shared symbols: M=3, δ=1/4."""
        assert shadowing_modulus(full, dyadic(2)) == (3, dyadic(2))

    def test_monotone(self, monotone) -> None:
        """ε = 1 on an L=2 basis: M=1, δ=1."""
        assert shadowing_modulus(monotone, ONE) == (1, ONE)

    def test_length_three_basis(self, sft_010) -> None:
        """ε = 1/2 on an L=3 basis: M=2, δ=1/2."""
        assert shadowing_modulus(sft_010, dyadic(1)) == (2, dyadic(1))

    def test_zero_epsilon(self, full) -> None:
        """ε must be positive."""
        with pytest.raises(PreconditionError):
            shadowing_modulus(full, ZERO)


class TestVerifyPseudoOrbit:
    def test_exact_orbit(self) -> None:
        """Exact orbits have zero defects."""
        assert verify_pseudo_orbit(exact_orbit(Remark1(), 4, dyadic(5)), 64)

    def test_two_symbol_agreement(self) -> None:
        """σ(0 1 2^ω) = 1 2^ω shares two symbols with 1 2 3^ω."""
        po = PseudoOrbit((ep_point((0, 1), (2,)), ep_point((1, 2), (3,))), dyadic(1))
        verdict = verify_pseudo_orbit(po, 16)
        assert verdict.ok and verdict.exact

    def test_violation_index(self) -> None:
        """0^ω then 1^ω jumps by 1 at index 0."""
        verdict = verify_pseudo_orbit(PseudoOrbit((constant(0), constant(1)), dyadic(1)), 16)
        assert not verdict.ok
        assert verdict.violation == 0

    def test_empty_pseudo_orbit(self) -> None:
        """A pseudo-orbit has at least one point."""
        with pytest.raises(PreconditionError):
            PseudoOrbit((), ONE)


class TestSynthesizeShadow:
    def test_exact_orbit_reproduces_point(self, full) -> None:
        """Heads of an exact orbit re-spell its first point."""
        x = ep_point((0, 1, 2, 3), (0,))
        assert synthesize_shadow(full, exact_orbit(x, 4, dyadic(1))) == x

    def test_staircase(self, full) -> None:
        """z = 0 1 · 2 3 4^ω shadows the staircase within 1/4."""
        po = staircase()
        z = synthesize_shadow(full, po)
        assert z == ep_point((0, 1, 2, 3), (4,))
        assert verify_shadow(z, po, dyadic(1), 32)
        for i, x in enumerate(po.points):
            assert shift_point(z, i).prefix(2) == x.prefix(2)

    def test_monotone_orbit(self, monotone) -> None:
        """The orbit of 3 2 1^ω is shadowed by 3 2 1^ω inside the shift."""
        po = PseudoOrbit((ep_point((3, 2), (1,)), ep_point((2,), (1,)), constant(1)), ONE)
        z = synthesize_shadow(monotone, po)
        assert z == ep_point((3, 2), (1,))
        assert point_in_subshift(monotone, z, 8)

    def test_delta_too_coarse(self, sft_010) -> None:
        """δ = 1 cannot handle a basis word of length 3."""
        with pytest.raises(PreconditionError):
            synthesize_shadow(sft_010, PseudoOrbit((constant(0), constant(0)), ONE))

    def test_not_a_pseudo_orbit(self, full) -> None:
        """Inputs violating their claimed δ are rejected."""
        with pytest.raises(PreconditionError):
            synthesize_shadow(full, PseudoOrbit((constant(0), constant(1)), dyadic(1)))

    def test_point_outside_subshift(self, sft_21) -> None:
        """Every point must lie in the subshift."""
        with pytest.raises(PreconditionError):
            synthesize_shadow(sft_21, PseudoOrbit((ep_point((2,), (1,)),), dyadic(1)))


class TestVerifyShadow:
    def test_mismatch_at_zero(self) -> None:
        """0^ω does not shadow [1^ω]."""
        verdict = verify_shadow(constant(0), PseudoOrbit((constant(1),), dyadic(1)), dyadic(1), 16)
        assert not verdict.ok
        assert verdict.violation == 0

    def test_orbit_shadows_itself(self) -> None:
        """An exact orbit is shadowed by its first point."""
        x = ep_point((4, 0), (1, 2))
        assert verify_shadow(x, exact_orbit(x, 6, dyadic(3)), dyadic(9), 32)

    def test_asymptotic_needs_settling_index(self) -> None:
        """Asymptotic verification needs the settling function."""
        apo = AsymptoticPseudoOrbit(CyclicStream((constant(0),)), lambda m: 0)
        with pytest.raises(PreconditionError):
            verify_shadow(constant(0), apo, dyadic(2), 16)


class TestBackExtend:
    def test_fresh_prefix(self, full) -> None:
        """Two fresh symbols above 1 go in front of 1^ω."""
        assert back_extend(full, constant(1), 2) == ep_point((2, 3), (1,))

    def test_smallest_first_search(self, monotone) -> None:
        """0 may precede 0 in the non-increasing shift."""
        assert back_extend(monotone, constant(0), 1) == constant(0)

    def test_zero_steps(self, sft_21) -> None:
        """σ^0 needs no prefix."""
        x = ep_point((1,), (0,))
        assert back_extend(sft_21, x, 0) is x

    def test_shift_recovers_point(self, sft_21) -> None:
        """σ^steps of the extension is the original point."""
        x = ep_point((1, 1), (0, 2))
        y = back_extend(sft_21, x, 3)
        assert shift_point(y, 3) == x
        assert point_in_subshift(sft_21, y, 8)

    def test_finite_alphabet_search(self, dichotomy) -> None:
        """Over {0, 1} with 0 1 forbidden, only 1 precedes 1^ω."""
        assert back_extend(dichotomy, constant(1), 2) == constant(1)

    def test_point_outside_subshift(self, sft_21) -> None:
        """Only points of the subshift can be extended."""
        with pytest.raises(PreconditionError):
            back_extend(sft_21, ep_point((2, 1), (0,)), 1)


class TestAsymptoticShadow:
    def test_constant_stream(self, full) -> None:
        """A constant stream of 0^ω is shadowed by 0^ω."""
        apo = AsymptoticPseudoOrbit(CyclicStream((constant(0),)), lambda m: 0)
        z = synthesize_asymptotic_shadow(full, apo)
        assert z.prefix(32) == (0,) * 32

    def test_exact_scheme_orbit(self, full) -> None:
        """The diagonal of an exact orbit re-spells the point."""
        apo = AsymptoticPseudoOrbit(OrbitStream(Remark1()), lambda m: 0)
        z = synthesize_asymptotic_shadow(full, apo, horizon=64)
        assert z.prefix(64) == Remark1().prefix(64)

    def test_late_start_is_back_extended(self, sft_21) -> None:
        """A positive settling rate puts fresh symbols in front of the diagonal."""
        apo = AsymptoticPseudoOrbit(CyclicStream((constant(1),)), lambda m: 3)
        z = synthesize_asymptotic_shadow(sft_21, apo, horizon=32)
        assert z.prefix(5) == (3, 4, 5, 1, 1)

    def test_settling_index(self, sft_010) -> None:
        """N′(m) = max(rate(L), rate(m + L))."""
        apo = AsymptoticPseudoOrbit(CyclicStream((constant(0),)), lambda m: 10 * m)
        assert settling_index(sft_010, apo, 0) == 30
        assert settling_index(sft_010, apo, 2) == 50


class TestExpansivity:
    def test_first_difference(self) -> None:
        """0^ω and 0 0 1 0^ω first differ at index 2."""
        assert expansivity_witness(constant(0), ep_point((0, 0, 1), (0,)), 10) == 2

    def test_immediate_difference(self) -> None:
        """(01)^ω and (10)^ω differ at once."""
        assert expansivity_witness(ep_point((), (0, 1)), ep_point((), (1, 0)), 10) == 0

    def test_equal_points(self) -> None:
        """Equal points have no witness."""
        assert expansivity_witness(Remark1(), Remark1(), 10) is None


class TestRandomShadowing:
    @given(st.randoms(use_true_random=False), st.integers(min_value=0, max_value=3))
    def test_modulus_delivers_epsilon(self, rng, e) -> None:
        """Pseudo-orbits at the modulus δ are ε-shadowed inside the subshift."""
        gamma = random_basis(rng)
        eps = dyadic(e)
        M, delta = shadowing_modulus(gamma, eps)
        po = random_pseudo_orbit(gamma, rng, M, 5)
        assert po.delta == delta
        z = synthesize_shadow(gamma, po)
        assert point_in_subshift(gamma, z, 64)
        assert verify_shadow(z, po, eps, 64)
