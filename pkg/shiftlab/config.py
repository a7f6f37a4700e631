"""
Runtime settings for shiftlab.

All pinned horizons, ladders and seeds live here. Values can be overridden
through ``SHIFTLAB_<FIELD>`` environment variables, e.g.

    SHIFTLAB_HORIZON=512 python -m shiftlab omega --from remark1 --depth 2

Call reset_settings() after changing the environment (the test fixtures do).
"""

from __future__ import annotations

import os
from functools import lru_cache
from typing import Dict

from pydantic import BaseModel, ConfigDict, field_validator

_ENV_PREFIX = "SHIFTLAB_"


class Settings(BaseModel):
    """Pinned numeric parameters shared by the library, the CLI and the demos."""

    model_config = ConfigDict(frozen=True)

    horizon: int = 256                 # scan length for non-periodic points
    omega_t0: int = 64                 # first ω-ladder window start
    omega_levels: int = 4              # number of dyadic ladder windows
    attracting_horizon: int = 4096
    attracting_exponent: int = 6       # ε = 2^-6
    asymptotic_cap: int = 6            # largest m checked for asymptotic shadows
    ict_ladder_depth: int = 8          # δ-ladder 2^0 … 2^-depth
    chain_max_len: int = 64
    seed: int = 20240501
    random_cases: int = 500
    exhaustive_cases: int = 20         # leading bases of the sample enumerated exhaustively
    exhaustive_word_length: int = 6
    gluing_side: int = 2               # |u|, |v| ≤ gluing_side
    gluing_slack: int = 1              # M ≤ |w| ≤ M + gluing_slack

    @field_validator(
        "horizon", "omega_t0", "omega_levels", "attracting_horizon", "chain_max_len",
    )
    @classmethod
    def positive(cls, v: int) -> int:
        """Horizons, ladder sizes and chain bounds must be positive."""
        if v < 1:
            raise ValueError("must be a positive integer")
        return v

    @field_validator(
        "attracting_exponent", "asymptotic_cap", "ict_ladder_depth", "random_cases",
        "exhaustive_cases", "exhaustive_word_length", "gluing_side", "gluing_slack",
    )
    @classmethod
    def nonnegative(cls, v: int) -> int:
        """Exponents and counts must not be negative."""
        if v < 0:
            raise ValueError("must be a nonnegative integer")
        return v


def _from_environment() -> Dict[str, str]:
    overrides = {}
    for name in Settings.model_fields:
        raw = os.environ.get(_ENV_PREFIX + name.upper())
        if raw is not None:
            overrides[name] = raw
    return overrides


@lru_cache(maxsize=1)
def get_settings() -> Settings:
    """Return the process-wide settings (defaults overridden by the environment)."""
    return Settings.model_validate(_from_environment())


def reset_settings() -> None:
    """Drop the cached settings so the next get_settings() re-reads the environment."""
    get_settings.cache_clear()
