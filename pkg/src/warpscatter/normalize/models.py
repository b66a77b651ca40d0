"""
Data models for metric normalization.

A general asymptotic metric on (t0, ∞) × V, V a bounded chart of the
cross-section, reads a dt² + 2 w b_i dt dz^i + w² c_ij dz^i dz^j. The
Hamilton flow of H = g^{ij} η_i η_j with data at infinity
(t - r, z - x, τ - 1/2, ζ) → 0 defines new coordinates (r, x) in which the
metric becomes dr² + w(r)² h̄(r, x, dx).
"""

from typing import Any, Optional

import numpy as np
from pydantic import BaseModel, ConfigDict, Field, PrivateAttr, model_validator

from warpscatter.manifold.models import DecayFit

from .constants import POINTS_PER_DECADE, R_MAX, R_MIN


class MetricTable(BaseModel):
    """Sampled coefficients for a one-dimensional chart, splined in (t, z)."""

    model_config = ConfigDict(frozen=True)

    t: tuple[float, ...] = Field(..., description="Increasing t nodes")
    z: tuple[float, ...] = Field(..., description="Increasing z nodes")
    w: tuple[float, ...] = Field(..., description="w(t), positive")
    a: tuple[tuple[float, ...], ...] = Field(..., description="a[t][z]")
    b: Optional[tuple[tuple[float, ...], ...]] = Field(None, description="b[t][z], zero when omitted")
    c: tuple[tuple[float, ...], ...] = Field(..., description="c[t][z]")
    h: tuple[float, ...] = Field(..., description="Limit metric h(z)")

    @model_validator(mode="after")
    def _check_shapes(self) -> "MetricTable":
        nt, nz = len(self.t), len(self.z)
        if nt < 4 or nz < 4:
            raise ValueError("metric table needs at least 4 t and 4 z nodes")
        if np.any(np.diff(self.t) <= 0) or np.any(np.diff(self.z) <= 0):
            raise ValueError("metric table nodes must be strictly increasing")
        if len(self.w) != nt or len(self.h) != nz:
            raise ValueError("w must match t and h must match z")
        for name in ("a", "b", "c"):
            block = getattr(self, name)
            if block is not None and np.shape(block) != (nt, nz):
                raise ValueError(f"{name} must have shape ({nt}, {nz})")
        if np.any(np.asarray(self.w) <= 0):
            raise ValueError("w must be positive")
        return self


class GeneralMetric(BaseModel):
    """
    Coefficients of a general asymptotic metric and their declared decay exponents.

    Expressions use t and z (one-dimensional chart) or t, z1, ..., zd. The
    exponents describe w^{-1} ∈ S^{-kappa}, a - 1 ∈ S^{-lam}, b ∈ S^{-mu} and
    c - h ∈ S^{-nu}.
    """

    model_config = ConfigDict(frozen=True, populate_by_name=True)

    w: str = Field("t", description="Warp w(t)")
    a: str = Field("1", description="dt² coefficient a(t, z)")
    b: Optional[tuple[str, ...]] = Field(None, description="Cross terms b_i(t, z), zero when omitted")
    c: Optional[tuple[tuple[str, ...], ...]] = Field(None, description="Cross-section block c_ij(t, z)")
    h: Optional[tuple[tuple[str, ...], ...]] = Field(None, description="Limit metric h_ij(z)")
    table: Optional[MetricTable] = Field(None, description="Sampled coefficients instead of expressions")
    kappa: float = Field(..., description="Decay exponent of 1/w")
    lam: float = Field(..., alias="lambda", description="Decay exponent of a - 1")
    mu: float = Field(..., description="Decay exponent of b")
    nu: float = Field(..., description="Decay exponent of c - h")

    _field: Any = PrivateAttr(default=None)

    @model_validator(mode="after")
    def _check_blocks(self) -> "GeneralMetric":
        if self.table is not None:
            return self
        if self.c is None or self.h is None:
            raise ValueError("expression metrics need both c and h")
        d = len(self.h)
        for name in ("c", "h"):
            block = getattr(self, name)
            if len(block) != d or any(len(row) != d for row in block):
                raise ValueError(f"{name} must be a {d}x{d} matrix")
        if self.b is not None and len(self.b) != d:
            raise ValueError(f"b must have {d} entries")
        return self

    @property
    def dim(self) -> int:
        """Dimension of the cross-section chart (n - 1)."""
        return 1 if self.table is not None else len(self.h)

    @property
    def epsilon0(self) -> float:
        """min(lam, kappa + mu, 2 kappa) - 1: decay order of the flow correction."""
        return min(self.lam, self.kappa + self.mu, 2.0 * self.kappa) - 1.0

    def strip_violations(self) -> list[str]:
        checks = (
            ("kappa > 1/2", self.kappa > 0.5),
            ("lambda > 1", self.lam > 1.0),
            ("mu > 0", self.mu > 0.0),
            ("nu > 0", self.nu > 0.0),
            ("kappa + mu > 1", self.kappa + self.mu > 1.0),
        )
        return [name for name, ok in checks if not ok]


class FlowGrid(BaseModel):
    """Geometric r grid on [r_min, r_max] times a tensor grid of chart points x."""

    model_config = ConfigDict(frozen=True)

    x: tuple[tuple[float, ...], ...] = Field(..., description="One increasing node list per chart axis")
    r_min: float = Field(R_MIN, description="Inner radius r0", gt=0)
    r_max: float = Field(R_MAX, description="Truncation radius R_∞", gt=0)
    points_per_decade: int = Field(POINTS_PER_DECADE, description="r nodes per decade", ge=20)

    @property
    def dim(self) -> int:
        return len(self.x)

    @property
    def shape(self) -> tuple[int, ...]:
        return tuple(len(axis) for axis in self.x)

    def radii(self) -> np.ndarray:
        decades = np.log10(self.r_max / self.r_min)
        return np.geomspace(self.r_min, self.r_max, int(np.ceil(decades * self.points_per_decade)) + 1)

    def points(self) -> np.ndarray:
        """Chart points, shape (P, d), in C order over the axes."""
        mesh = np.meshgrid(*(np.asarray(axis, dtype=float) for axis in self.x), indexing="ij")
        return np.stack([m.ravel() for m in mesh], axis=-1)


class HamiltonState(BaseModel):
    """
    Fixed point X(r, x) = (t - r, z - x, τ - 1/2, ζ) on a flow grid.

    X has shape (P, len(r), 2 + 2d), P running over grid.points().
    """

    model_config = ConfigDict(frozen=True, arbitrary_types_allowed=True)

    metric: GeneralMetric
    grid: FlowGrid
    r: np.ndarray
    x: np.ndarray
    X: np.ndarray
    iterations: int = Field(..., description="Picard iterations to the fixed point")
    contraction: float = Field(..., description="Largest measured ratio of successive Picard steps")
    residual: float = Field(..., description="sup |X - U(X_∞ + X)|")
    tail: float = Field(..., description="Largest estimated integral remainder beyond r_max")
    shooting_difference: Optional[float] = Field(None, description="sup |X_Picard - X_shooting|")
    energy_drift: Optional[float] = Field(None, description="Variation of H along the shooting trajectories")
    epsilon0: float
    decay: Optional[DecayFit] = Field(None, description="Tail fit of sup_x |X|; None when X vanishes")
    tau_decay: Optional[DecayFit] = Field(None, description="Tail fit of sup_x |τ - 1/2|")

    @property
    def dim(self) -> int:
        return self.x.shape[1]

    @property
    def t(self) -> np.ndarray:
        return self.r + self.X[..., 0]

    @property
    def z(self) -> np.ndarray:
        d = self.dim
        return self.x[:, None, :] + self.X[..., 1 : 1 + d]

    @property
    def tau(self) -> np.ndarray:
        return 0.5 + self.X[..., 1 + self.dim]

    @property
    def zeta(self) -> np.ndarray:
        return self.X[..., 2 + self.dim :]


class FlowDiagnostics(BaseModel):
    """Checks of the eikonal, the phase identity φ = r/2 and the closed 2-form."""

    energy: float = Field(..., description="max |H(t, z, τ, ζ) - 1/4|")
    phase: Optional[float] = Field(None, description="max |φ(t, z) - r/2| over recovered points")
    phase_points: int = Field(0, description="Points where z(r, x) = z0 was inverted inside the chart")
    bracket: float = Field(..., description="max |[η, y]_jk| over the grid")


class TransformedMetric(BaseModel):
    """h̄(r, x) of dr² + w(r)² h̄ and the checks of the pullback."""

    model_config = ConfigDict(frozen=True, arbitrary_types_allowed=True)

    r: np.ndarray
    x: np.ndarray
    hbar: np.ndarray = Field(..., description="Shape (P, len(r), d, d)")
    h: np.ndarray = Field(..., description="Limit metric h(x), shape (P, d, d)")
    inverse_00: float = Field(..., description="max |ḡ^00 - 1|")
    inverse_0k: float = Field(..., description="max |ḡ^0k|")
    min_rcond: float = Field(..., description="Smallest reciprocal condition number of the Jacobian")
    tail_condition: float = Field(..., description="Largest Jacobian condition number at r_max")
    decay: Optional[DecayFit] = Field(None, description="Tail fit of sup_x |h̄ - h|")
    target: float = Field(..., description="-min(nu, epsilon0)")
    within_tolerance: Optional[bool] = None

    def difference(self) -> np.ndarray:
        """sup over x and components of |h̄ - h| at each r."""
        return np.max(np.abs(self.hbar - self.h[:, None]), axis=(0, 2, 3))
