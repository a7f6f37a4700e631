"""
Test suite: Catalog
Tests the named rules and families, spec conversion and caching, the JSON
loaders and the seeded samplers.
"""
from __future__ import annotations

import random

import pytest
from pydantic import ValidationError

from shiftlab import catalog
from shiftlab.core import dyadic
from shiftlab.errors import SpecError
from shiftlab.models import FamilySetSpec, RuleSpec, SftSpec
from shiftlab.points import constant, ep_point
from shiftlab.sampling import random_basis, random_point, random_pseudo_orbit
from shiftlab.shadowing import verify_pseudo_orbit
from shiftlab.subshift import is_locally_allowed, point_in_subshift
from shiftlab.transitivity import FiniteEP, Remark2Family


# ── Tests ─────────────────────────────────────────────────────────────────────


class TestRules:
    def test_directions(self) -> None:
        """non-increasing forbids rises, non-decreasing forbids falls."""
        down = catalog.subshift_from_spec(RuleSpec(kind="rule", name="monotone"))
        up = catalog.subshift_from_spec(RuleSpec(kind="rule", name="monotone", direction="non-decreasing"))
        assert not is_locally_allowed(down, (1, 2)) and is_locally_allowed(down, (2, 1))
        assert is_locally_allowed(up, (1, 2)) and not is_locally_allowed(up, (2, 1))
        assert up.describe()["basis"]["direction"] == "non-decreasing"

    def test_unknown_direction(self) -> None:
        """Only the two monotone directions exist."""
        with pytest.raises(SpecError):
            catalog.monotone_rule("sideways")

    def test_spec_cache(self) -> None:
        """Equal specs share one validated subshift until the catalog is reset."""
        spec = SftSpec(kind="sft", forbidden=[[2, 1]])
        first = catalog.subshift_from_spec(spec)
        assert catalog.subshift_from_spec(SftSpec(kind="sft", forbidden=[[2, 1]])) is first
        catalog.reset_catalog()
        assert catalog.subshift_from_spec(spec) is not first

    def test_dichotomy_symbols(self) -> None:
        """s0 and s1 must be distinct members of the alphabet."""
        with pytest.raises(SpecError):
            catalog.dichotomy_sft((0, 1), 0, 0)
        with pytest.raises(SpecError):
            catalog.dichotomy_sft((0, 1), 0, 5)


class TestSpecs:
    def test_duplicate_words_rejected(self) -> None:
        """Basis files must not repeat a word."""
        with pytest.raises(ValidationError):
            SftSpec(kind="sft", forbidden=[[1], [1]])

    def test_truncated_family(self) -> None:
        """A family with truncate becomes a finite presentation."""
        Z = catalog.set_from_spec(FamilySetSpec(kind="family", name="remark2", truncate=1))
        assert isinstance(Z, FiniteEP)
        assert set(Z.points) == {constant(0), constant(1), ep_point((0,), (1,))}
        assert isinstance(catalog.set_from_spec(FamilySetSpec(kind="family", name="remark2")), Remark2Family)

    def test_unknown_family(self) -> None:
        """Unknown family names are rejected."""
        with pytest.raises(SpecError):
            catalog.set_from_spec(FamilySetSpec(kind="family", name="remark9"))


class TestLoaders:
    def test_load_pseudo_orbit(self, write_json) -> None:
        """Pseudo-orbit files parse their literals and bound."""
        path = write_json("po.json", {"delta": "2^-1", "points": ["0 1|2", "1 2|3"]})
        po = catalog.load_pseudo_orbit(path)
        assert po.delta == dyadic(1)
        assert po.points[1] == ep_point((1, 2), (3,))

    def test_invalid_json(self, tmp_path) -> None:
        """Broken JSON is a SpecError naming the file."""
        path = tmp_path / "broken.json"
        path.write_text("{", encoding="utf-8")
        with pytest.raises(SpecError, match="broken.json"):
            catalog.load_subshift(path)

    def test_extra_fields(self, write_json) -> None:
        """Unknown keys are rejected."""
        path = write_json("sft.json", {"kind": "sft", "forbidden": [], "colour": "red"})
        with pytest.raises(SpecError):
            catalog.load_subshift(path)

    def test_set_members_must_be_periodic(self, write_json) -> None:
        """Finite sets take eventually periodic literals only."""
        path = write_json("set.json", {"kind": "finite", "points": ["remark1"]})
        with pytest.raises(SpecError):
            catalog.load_set(path)


class TestSampling:
    def test_random_points_belong(self, sft_010) -> None:
        """Sampled points lie in the subshift."""
        rng = random.Random(7)
        for _ in range(25):
            assert point_in_subshift(sft_010, random_point(sft_010, rng), 32)

    def test_random_pseudo_orbits(self) -> None:
        """Sampled pseudo-orbits meet their claimed bound."""
        rng = random.Random(11)
        for _ in range(25):
            gamma = random_basis(rng)
            po = random_pseudo_orbit(gamma, rng, 3, 6)
            assert po.delta == dyadic(2)
            assert verify_pseudo_orbit(po, 64)

    def test_seeded(self, sft_21) -> None:
        """Equal seeds give equal samples."""
        a = [random_point(sft_21, random.Random(3)) for _ in range(3)]
        b = [random_point(sft_21, random.Random(3)) for _ in range(3)]
        assert a == b
