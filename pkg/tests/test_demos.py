"""
Test suite: Demos
Runs every pinned demo bundle through the CLI and checks that each one
passes with its parameters recorded.
"""
from __future__ import annotations

import pytest

from shiftlab.commands.demo import DEMOS


# ── Helpers ──────────────────────────────────────────────────────────────────


@pytest.fixture
def few_cases(monkeypatch: pytest.MonkeyPatch) -> None:
    """Shrink the randomized and exhaustive suites; the reset fixture drops cached settings."""
    monkeypatch.setenv("SHIFTLAB_RANDOM_CASES", "20")
    monkeypatch.setenv("SHIFTLAB_EXHAUSTIVE_CASES", "3")
    monkeypatch.setenv("SHIFTLAB_EXHAUSTIVE_WORD_LENGTH", "4")
    monkeypatch.setenv("SHIFTLAB_GLUING_SIDE", "1")


def _failed(report: dict) -> list:
    return [a["name"] for a in report["assertions"] if not a["passed"]]


# ── Tests ─────────────────────────────────────────────────────────────────────


class TestDemos:
    @pytest.mark.parametrize("name", sorted(DEMOS))
    def test_demo_passes(self, run_cli, few_cases, name: str) -> None:
        """Every demo exits 0 with all assertions passing."""
        code, report = run_cli("demo", name)
        assert code == 0, _failed(report)
        assert report["passed"] is True
        assert report["assertions"]

    def test_remark1_assertions(self, run_cli) -> None:
        """remark1 asserts the depth-2 prefixes and the failure of ICT."""
        _, report = run_cli("demo", "remark1")
        names = {a["name"] for a in report["assertions"]}
        assert "remark1: ω-prefixes at depth 2" in names
        assert "{0^ω, 1^ω} is not ICT at 2^-1" in names
        assert report["outputs"]["omega"]["2"] == ["0 0", "1 1"]

    def test_provenance(self, run_cli) -> None:
        """Pinned ladders and the settings snapshot are recorded."""
        _, report = run_cli("demo", "dichotomy-finite")
        assert report["provenance"]["t0"] == 64
        assert report["provenance"]["levels"] == 4
        assert report["provenance"]["settings"]["seed"] == 20240501

    def test_seed_recorded(self, run_cli, few_cases) -> None:
        """The randomized suite records its seed, case count and exhaustive ranges."""
        _, report = run_cli("demo", "shadowing")
        outputs = report["outputs"]
        assert (outputs["seed"], outputs["cases"]) == (20240501, 20)
        exhaustive = outputs["exhaustive"]
        assert exhaustive["bases"] == 3
        assert (exhaustive["word_length"], exhaustive["gluing_side"], exhaustive["gluing_slack"]) == (4, 1, 1)
        assert exhaustive["words_checked"] > 0 and exhaustive["triples_checked"] > 0

    def test_monotone_runs_full_shadowing_suite(self, run_cli, few_cases) -> None:
        """The monotone demo shadows as many pseudo-orbits as the randomized suite."""
        _, report = run_cli("demo", "monotone")
        assert report["outputs"]["cases"] == 20
        shadowed = next(a for a in report["assertions"] if a["name"] == "every pseudo-orbit shadowed")
        assert shadowed["passed"] and shadowed["detail"] == "20/20"

    def test_unknown_demo(self, run_cli) -> None:
        """Unknown demo names are usage errors."""
        code, _ = run_cli("demo", "remark3")
        assert code == 2
