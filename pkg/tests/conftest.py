"""
Pytest configuration and fixtures for the shiftlab test suite.

Fixtures:
  reset      (autouse, function scope): clears settings and catalog caches before AND after each test.
  full      : the full shift over ω.
  monotone  : the non-increasing bounded-rule shift.
  sft_21    : forbidden {2 1} over ω.
  sft_010   : forbidden {0 1 0} over ω.
  dichotomy : finite alphabet {0, 1, 2}, forbidden {0 1, 2}.
  write_json: writes a JSON file into tmp_path and returns its path.
  run_cli   : runs shiftlab.main.run and returns (exit code, parsed report or None).

Hypothesis profiles: "ci" (derandomized, no deadline) is loaded by default.
"""

from __future__ import annotations

import json
import os
from pathlib import Path
from typing import Any, Callable, Optional, Tuple

import pytest
from hypothesis import settings as hypothesis_settings

from shiftlab import catalog
from shiftlab.config import reset_settings
from shiftlab.models import RuleSpec, SftSpec
from shiftlab.subshift import Subshift

hypothesis_settings.register_profile("ci", derandomize=True, deadline=None, max_examples=60)
hypothesis_settings.register_profile("dev", deadline=None, max_examples=200)
hypothesis_settings.load_profile(os.environ.get("HYPOTHESIS_PROFILE", "ci"))


@pytest.fixture(autouse=True)
def reset():
    """Reset cached settings and catalog state before and after every test."""
    reset_settings()
    catalog.reset_catalog()
    yield
    reset_settings()
    catalog.reset_catalog()


@pytest.fixture
def full() -> Subshift:
    return catalog.full_shift()


@pytest.fixture
def monotone() -> Subshift:
    return catalog.subshift_from_spec(RuleSpec(kind="rule", name="monotone"))


@pytest.fixture
def sft_21() -> Subshift:
    return catalog.subshift_from_spec(SftSpec(kind="sft", forbidden=[[2, 1]]))


@pytest.fixture
def sft_010() -> Subshift:
    return catalog.subshift_from_spec(SftSpec(kind="sft", forbidden=[[0, 1, 0]]))


@pytest.fixture
def dichotomy() -> Subshift:
    return catalog.dichotomy_sft((0, 1, 2))


@pytest.fixture
def write_json(tmp_path: Path) -> Callable[[str, Any], str]:
    def write(name: str, payload: Any) -> str:
        path = tmp_path / name
        path.write_text(json.dumps(payload), encoding="utf-8")
        return str(path)
    return write


@pytest.fixture
def run_cli(capsys: pytest.CaptureFixture) -> Callable[..., Tuple[int, Optional[dict]]]:
    """
    Invoke the CLI in-process.

    Returns the exit code and the JSON report printed on stdout (None when
    the command failed before producing a report).
    """
    from shiftlab.main import run

    def invoke(*argv: str) -> Tuple[int, Optional[dict]]:
        code = run(list(argv))
        out = capsys.readouterr().out
        return code, json.loads(out) if out.strip() else None
    return invoke
