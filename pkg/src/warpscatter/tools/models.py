"""
Data models for the command runners.

RunConfig is everything a command reads besides the manifold or metric file;
CommandResult is what a runner hands back for serialization.
"""

import math
from pathlib import Path
from typing import Any, Literal, Optional, get_args

import numpy as np
from pydantic import BaseModel, ConfigDict, Field, field_validator, model_validator

from warpscatter.inverse.constants import DEFAULT_EPSILON, DEFAULT_SIGMA
from warpscatter.wave.constants import DEFAULT_DR

from .constants import (
    DEFAULT_LAMBDA_MAX,
    DEFAULT_LAMBDAS,
    DEFAULT_OUT,
    DEFAULT_T,
    DEFAULT_TOL,
    ERROR_LAMBDA_GRID,
    ERROR_PAIR,
)

Command = Literal[
    "spectrum",
    "jost",
    "smatrix",
    "resolvent",
    "normalize-metric",
    "wave",
    "blago-check",
    "invert-volume",
    "invert-distance",
    "oracle-geodesic",
]

COMMANDS: tuple[str, ...] = get_args(Command)


def parse_lambda_grid(text: str) -> tuple[float, ...]:
    """`A:B:N` gives N equally spaced values from A to B; a bare number gives one value."""
    parts = text.split(":")
    try:
        if len(parts) == 1:
            return (float(parts[0]),)
        if len(parts) != 3:
            raise ValueError(text)
        lo, hi, count = float(parts[0]), float(parts[1]), int(parts[2])
    except ValueError as e:
        raise ValueError(ERROR_LAMBDA_GRID.format(text=text)) from e
    if count < 1:
        raise ValueError(ERROR_LAMBDA_GRID.format(text=text))
    return tuple(np.linspace(lo, hi, count).tolist())


def parse_pair(text: str, name: str) -> tuple[float, float]:
    try:
        lo, hi = (float(v) for v in text.split(":"))
    except ValueError as e:
        raise ValueError(ERROR_PAIR.format(name=name, text=text)) from e
    if not lo < hi:
        raise ValueError(ERROR_PAIR.format(name=name, text=text))
    return lo, hi


class RunConfig(BaseModel):
    """Command name, input file, numeric parameters and output directory of one run."""

    model_config = ConfigDict(frozen=True)

    command: Command = Field(..., description="Pipeline stage to run")
    config: Optional[Path] = Field(None, description="Manifold (or metric) JSON configuration")
    out: Path = Field(Path(DEFAULT_OUT), description="Output directory")

    lambdas: tuple[float, ...] = Field(DEFAULT_LAMBDAS, description="Spectral parameters λ", min_length=1)
    lambda_max: float = Field(DEFAULT_LAMBDA_MAX, description="Cross-section cutoff Λ_max", ge=0)
    r_max: Optional[float] = Field(None, description="Matching / truncation radius", gt=0)
    generalized: bool = Field(False, description="Include generalized cusp channels")
    ell: int = Field(0, description="Cross-section mode index", ge=0)
    end: int = Field(0, description="End id for per-end commands", ge=0, le=1)

    T: float = Field(DEFAULT_T, description="Time horizon", gt=0)
    dr: float = Field(DEFAULT_DR, description="Space step of wave grids", gt=0)
    sigma: float = Field(DEFAULT_SIGMA, description="Tikhonov parameter", gt=0)
    band: Optional[tuple[float, float]] = Field(None, description="Source band W")
    region: Optional[tuple[float, float]] = Field(None, description="Observation region O")

    q: float = Field(1.0, description="Start of the geodesic")
    psi: float = Field(0.0, description="Angle of the geodesic to ∂_r")
    r_tilde: float = Field(0.6, description="Length of the geodesic segment", gt=0)
    z: Optional[float] = Field(None, description="Target orbit radius")
    length: float = Field(2.0, description="Length of oracle geodesics", ge=0)
    epsilons: tuple[float, ...] = Field((DEFAULT_EPSILON, 0.5 * DEFAULT_EPSILON), min_length=1)

    tol: float = Field(DEFAULT_TOL, description="Acceptance tolerance of residual checks", gt=0)
    seed: int = Field(0, description="Seed of every random source", ge=0)

    @field_validator("epsilons")
    @classmethod
    def _positive(cls, value: tuple[float, ...]) -> tuple[float, ...]:
        if any(not e > 0 for e in value):
            raise ValueError("probe sizes must be positive")
        return value

    @model_validator(mode="after")
    def _check_pairs(self) -> "RunConfig":
        for name in ("band", "region"):
            pair = getattr(self, name)
            if pair is not None and not pair[0] < pair[1]:
                raise ValueError(f"{name} must be an increasing pair")
        if not all(math.isfinite(v) for v in self.lambdas):
            raise ValueError("λ values must be finite")
        return self

    def hashed(self) -> dict[str, Any]:
        """Fields entering the config hash; the output location does not."""
        return self.model_dump(mode="json", exclude={"out"})


class CommandResult(BaseModel):
    """JSON payload, plot-ready column series and summary lines of one command."""

    model_config = ConfigDict(frozen=True, arbitrary_types_allowed=True)

    command: Command
    payload: dict[str, Any] = Field(..., description="JSON-ready result")
    series: dict[str, dict[str, np.ndarray]] = Field(
        default_factory=dict, description="Plot data: file stem -> ordered columns"
    )
    summary: tuple[str, ...] = Field((), description="One-line findings for the terminal")
    passed: Optional[bool] = Field(None, description="Outcome of the command's residual check, if any")


class RunOutcome(BaseModel):
    """Exit status and artifacts of run()."""

    model_config = ConfigDict(frozen=True)

    exit_code: int
    artifacts: tuple[Path, ...] = ()
    error: Optional[dict[str, Any]] = None
    summary: tuple[str, ...] = ()
