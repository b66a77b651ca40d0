"""
Data models for warped-product manifolds.

The metric is dr² + ρ(r)² h_M on (0,∞) × M (half_line, Dirichlet wall at
r = 0) or ℝ × M (full_line, end 0 at r → +∞ and end 1 at r → −∞). End 1 is
analysed in the mirrored coordinate r̃ = −r, so every end is a tail r → +∞ of
some oriented profile.
"""

from typing import Any, Literal, Optional

import numpy as np
from pydantic import BaseModel, ConfigDict, Field, PrivateAttr, model_validator
from scipy.interpolate import CubicSpline, PchipInterpolator

from warpscatter.modes.models import CrossSection

from .constants import ERROR_END_COUNT, ERROR_HALF_LINE_ORIGIN

ProfileKind = Literal["exponential", "subexponential", "polynomial", "cosh", "bracket", "tabulated"]
Classification = Literal["regular", "cusp"]
Topology = Literal["half_line", "full_line"]


class RadialProfile(BaseModel):
    """
    Warp function ρ(r).

    exponential     ρ = scale · e^{c0 r} (1 + corr (r+shift)^{-gamma})
    subexponential  ρ = scale · exp(c1 (r+shift)^alpha), 0 < alpha < 1
    polynomial      ρ = scale · (r+shift)^beta
    cosh            ρ = scale · cosh(c0 r)
    bracket         ρ = scale · (1 + r²)^{beta/2}
    tabulated       spline through (table_r, table_rho), interpolated in log ρ

    With orientation = -1 the profile is read in the mirrored coordinate,
    i.e. the evaluated function is r ↦ ρ(-r).
    """

    model_config = ConfigDict(frozen=True)

    kind: ProfileKind = Field(..., description="Profile family")
    c0: float = Field(0.0, description="Exponential rate")
    c1: float = Field(0.0, description="Subexponential coefficient")
    alpha: float = Field(0.5, description="Subexponential power", gt=0, lt=1)
    beta: float = Field(0.0, description="Power-law exponent")
    corr: float = Field(0.0, description="Amplitude of the power correction")
    gamma: float = Field(1.0, description="Power of the correction", gt=0)
    shift: float = Field(0.0, description="Offset in (r + shift)")
    scale: float = Field(1.0, description="Overall constant factor", gt=0)
    table_r: Optional[tuple[float, ...]] = Field(None, description="Tabulated radii")
    table_rho: Optional[tuple[float, ...]] = Field(None, description="Tabulated ρ values")
    interpolation: Literal["cubic", "pchip"] = Field(
        "cubic", description="Interpolant for tabulated log ρ"
    )
    orientation: Literal[1, -1] = Field(1, description="+1 or -1 (mirrored coordinate)")

    _spline: Any = PrivateAttr(default=None)

    @model_validator(mode="after")
    def _check_params(self) -> "RadialProfile":
        if self.kind == "tabulated":
            if self.table_r is None or self.table_rho is None:
                raise ValueError("tabulated profile needs table_r and table_rho")
            r = np.asarray(self.table_r, dtype=float)
            rho = np.asarray(self.table_rho, dtype=float)
            if r.shape != rho.shape or r.size < 4:
                raise ValueError("table_r and table_rho need equal length >= 4")
            if np.any(np.diff(r) <= 0):
                raise ValueError("table_r must be strictly increasing")
            if np.any(rho <= 0):
                raise ValueError("table_rho must be positive")
        if self.kind == "exponential" and self.orientation == -1 and self.corr != 0:
            raise ValueError("mirrored exponential profile needs corr = 0")
        if self.kind in ("subexponential", "polynomial") and self.orientation == -1:
            raise ValueError(f"{self.kind} profile is one-sided and cannot be mirrored")
        return self

    def model_post_init(self, __context: Any) -> None:
        if self.kind == "tabulated":
            r = np.asarray(self.table_r, dtype=float)
            log_rho = np.log(np.asarray(self.table_rho, dtype=float))
            if self.interpolation == "pchip":
                self._spline = PchipInterpolator(r, log_rho, extrapolate=False)
            else:
                self._spline = CubicSpline(r, log_rho, extrapolate=False)

    def mirrored(self) -> "RadialProfile":
        """The same warp function read in r̃ = -r."""
        return self.model_copy(update={"orientation": -self.orientation})

    @property
    def domain(self) -> tuple[float, float]:
        """Interval of admissible r, in this profile's own orientation."""
        if self.kind == "tabulated":
            lo, hi = self.table_r[0], self.table_r[-1]
        elif self.kind in ("subexponential", "polynomial") or (
            self.kind == "exponential" and self.corr != 0
        ):
            lo, hi = -self.shift, np.inf
        else:
            lo, hi = -np.inf, np.inf
        if self.orientation == -1:
            lo, hi = -hi, -lo
        return float(lo), float(hi)


class EndConstants(BaseModel):
    """Asymptotic constants of one end; None means 'take the fitted value'."""

    model_config = ConfigDict(frozen=True)

    c0: Optional[float] = Field(None, description="Limit of ρ'/ρ")
    alpha0: Optional[float] = Field(None, description="Decay order of ρ'/ρ - c0")
    beta0: Optional[float] = Field(None, description="Growth exponent ρ ~ r^beta0")
    gamma0: Optional[float] = Field(None, description="Decay order of the cross-section perturbation")


class EndSpec(BaseModel):
    """Descriptor of one end; the profile defaults to the (oriented) global one."""

    model_config = ConfigDict(frozen=True)

    end_id: int = Field(..., description="0 for r → +∞, 1 for r → -∞", ge=0, le=1)
    classification: Optional[Classification] = Field(None, description="Declared end type")
    constants: EndConstants = Field(default_factory=EndConstants)
    profile: Optional[RadialProfile] = Field(None, description="End-specific profile override")


class ManifoldSpec(BaseModel):
    """Dimension, topology, global warp profile, ends and cross-section."""

    model_config = ConfigDict(frozen=True)

    n: int = Field(..., description="Manifold dimension", ge=2)
    topology: Topology = Field("half_line", description="half_line or full_line")
    profile: RadialProfile = Field(..., description="Global warp function")
    ends: tuple[EndSpec, ...] = Field((), description="Per-end descriptors")
    cross_section: CrossSection = Field(default_factory=CrossSection)

    @model_validator(mode="before")
    @classmethod
    def _default_ends(cls, data: Any) -> Any:
        if isinstance(data, dict) and not data.get("ends"):
            count = 2 if data.get("topology") == "full_line" else 1
            data = {**data, "ends": tuple({"end_id": j} for j in range(count))}
        return data

    @model_validator(mode="after")
    def _check_ends(self) -> "ManifoldSpec":
        need = 2 if self.topology == "full_line" else 1
        if len(self.ends) != need:
            raise ValueError(
                ERROR_END_COUNT.format(topology=self.topology, need=need, got=len(self.ends))
            )
        if sorted(e.end_id for e in self.ends) != list(range(need)):
            raise ValueError("end ids must be 0 (and 1 for full_line)")
        if self.topology == "half_line":
            lo, _ = self.profile.domain
            closed = self.profile.kind == "tabulated"
            if lo > 0 or (lo == 0 and not closed):
                raise ValueError(ERROR_HALF_LINE_ORIGIN)
        return self

    @property
    def end_count(self) -> int:
        return len(self.ends)

    def end(self, end_id: int) -> EndSpec:
        return next(e for e in self.ends if e.end_id == end_id)

    def end_profile(self, end_id: int) -> RadialProfile:
        """Profile whose r → +∞ tail is end `end_id`."""
        override = self.end(end_id).profile
        if override is not None:
            return override
        return self.profile if end_id == 0 else self.profile.mirrored()


class DecayFit(BaseModel):
    """Result of a log-log tail regression of |f| against r."""

    kappa: float = Field(..., description="Fitted slope of log|f| vs log r (-inf when f underflows)")
    residual: float = Field(..., description="RMS residual of the linear fit in log space", ge=0)
    faster_than_power: bool = Field(False, description="Slope steepens across the window")
    expected: Optional[float] = Field(None, description="Expected slope supplied by the caller")
    floored: int = Field(0, description="Number of samples floored at machine-tiny", ge=0)
    prefactor: float = Field(0.0, description="Fitted constant C in |f| ≈ C r^kappa")


class EndFit(BaseModel):
    """Fitted classification and constants of one end."""

    end_id: int
    classification: Classification
    c0: float
    alpha0: Optional[float] = Field(None, description="None when no power decay was measurable")
    beta0: float
    gamma0: Optional[float] = None
    E0: float = Field(..., description="((n-1) c0 / 2)^2", ge=0)
    bound_constant: float = Field(..., description="Fitted C in ρ <= C (1+r)^beta0 (reported only)")
    decay: Optional[DecayFit] = None
