"""Configuration management for numerical solves."""

import os
from dataclasses import dataclass, replace
from pathlib import Path
from typing import Optional

from dotenv import load_dotenv


@dataclass(frozen=True)
class SolverConfig:
    """Numerical defaults shared by every solver module."""

    rtol: float = 1e-10
    atol: float = 1e-12
    r_max: float = 200.0
    grid_points: int = 2001
    phase_depth: int = 2
    points_per_decade: int = 600
    fit_window: float = 0.25
    fit_min_points: int = 20
    fit_tolerance: float = 0.05
    resonance_threshold: float = 1e-8
    cfl: float = 0.9
    threads: int = 1

    @classmethod
    def from_env(cls, env_file: Optional[Path] = None) -> "SolverConfig":
        """
        Load configuration overrides from environment variables.

        Args:
            env_file: Optional path to .env file. If None, searches in current
                      directory and parent directories.

        Returns:
            SolverConfig instance with defaults replaced by any values set in
            WARPSCATTER_THREADS, WARPSCATTER_RTOL, WARPSCATTER_ATOL and
            WARPSCATTER_RMAX.

        Raises:
            ValueError: If an environment variable is set but malformed.
        """
        if env_file:
            load_dotenv(env_file)
        else:
            load_dotenv()

        overrides: dict[str, float | int] = {}
        invalid = []

        threads = os.getenv("WARPSCATTER_THREADS")
        if threads:
            try:
                overrides["threads"] = int(threads)
                if overrides["threads"] < 1:
                    invalid.append("WARPSCATTER_THREADS")
            except ValueError:
                invalid.append("WARPSCATTER_THREADS")

        for name, field in (
            ("WARPSCATTER_RTOL", "rtol"),
            ("WARPSCATTER_ATOL", "atol"),
            ("WARPSCATTER_RMAX", "r_max"),
        ):
            value = os.getenv(name)
            if not value:
                continue
            try:
                overrides[field] = float(value)
                if overrides[field] <= 0:
                    invalid.append(name)
            except ValueError:
                invalid.append(name)

        if invalid:
            raise ValueError(f"Invalid environment variables: {', '.join(invalid)}")

        return cls(**overrides)

    def with_overrides(self, **changes) -> "SolverConfig":
        """Return a copy with the given fields replaced (None values are ignored)."""
        return replace(self, **{k: v for k, v in changes.items() if v is not None})


_default_config: Optional[SolverConfig] = None


def get_config() -> SolverConfig:
    """Process-wide configuration, loaded from the environment on first use."""
    global _default_config
    if _default_config is None:
        _default_config = SolverConfig.from_env()
    return _default_config


def set_config(config: Optional[SolverConfig]) -> None:
    """Install (or with None, reset) the process-wide configuration."""
    global _default_config
    _default_config = config
