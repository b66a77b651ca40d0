"""
Data models for the inverse problem.

Recovery works in the rotation-invariant sector: sources are functions of
(t, r) only, so the data are the l = 0 kernel and a point of the radial line
stands for a whole orbit. A ball M(x, l) is then the band [x - l, x + l]
cut to the manifold.
"""

from typing import Optional

import numpy as np
from pydantic import BaseModel, ConfigDict, Field

from warpscatter.wave import TimeSourceToSolutionKernel

from .constants import DEFAULT_SIGMA


class InverseProblemData(BaseModel):
    """
    Everything a recovery routine may read: V over [0, 2T] on O and the metric on O.

    No manifold specification is stored; routines taking this object cannot
    evaluate the warp function outside O.
    """

    model_config = ConfigDict(frozen=True, arbitrary_types_allowed=True)

    kernel: TimeSourceToSolutionKernel = Field(..., description="l = 0 kernel over [0, 2T] on O")
    region: tuple[float, float] = Field(..., description="Observation region O = [a, b]")
    n: int = Field(..., description="Manifold dimension", ge=2)
    cross_section_vol: float = Field(..., description="Volume of the cross-section", gt=0)
    log_rho: np.ndarray = Field(..., description="log ρ at the nodes of O")
    dlog_rho: np.ndarray = Field(..., description="ρ'/ρ at the nodes of O")
    sigma: float = Field(DEFAULT_SIGMA, description="Tikhonov parameter relative to the Gram scale", gt=0)

    @property
    def T(self) -> float:
        return self.kernel.T

    @property
    def r(self) -> np.ndarray:
        return self.kernel.r

    @property
    def dr(self) -> float:
        return self.kernel.grid.dr

    @property
    def dt(self) -> float:
        return self.kernel.dt

    def density(self) -> np.ndarray:
        """ρ^{n-1} at the nodes of O."""
        return np.exp((self.n - 1) * self.log_rho)

    def contains(self, lo: float, hi: float) -> bool:
        """Whether [lo, hi] lies between the first and last node of O."""
        return self.r[0] - 1e-9 <= lo and hi <= self.r[-1] + 1e-9


class DomainOfInfluence(BaseModel):
    """Characteristic function of M(W, T) = {x : d(x, W) < T} on a radial grid."""

    model_config = ConfigDict(frozen=True, arbitrary_types_allowed=True)

    band: tuple[float, float] = Field(..., description="Source band W")
    T: float
    extent: tuple[float, float] = Field(..., description="M(W, T) as a radial interval")
    r: np.ndarray
    inside: np.ndarray = Field(..., description="Boolean mask of the grid nodes in M(W, T)")
    volume: float = Field(..., description="Riemannian volume of M(W, T)")


class VolumeReport(BaseModel):
    """Vol(M(W, T)) from the minimization of I_T over a source basis, with σ-continuation."""

    model_config = ConfigDict(frozen=True, arbitrary_types_allowed=True)

    band: tuple[float, float]
    T: float = Field(..., description="Time actually used (a whole number of steps)")
    volume: float = Field(..., description="Recovered volume at the smallest σ reached")
    sigmas: tuple[float, ...] = Field(..., description="Continuation sequence of σ")
    volumes: tuple[float, ...] = Field(..., description="Recovered volume for each σ")
    coefficients: np.ndarray = Field(..., description="Minimizer at the smallest σ")
    sources: int = Field(..., description="Size of the source basis")
    self_consistency: float = Field(..., description="Relative asymmetry of the data-side Gram matrix")
    exact: Optional[float] = Field(None, description="Closed-form volume, when a manifold was supplied")
    relative_error: Optional[float] = None

    @property
    def monotone(self) -> bool:
        v = np.asarray(self.volumes)
        return bool(np.all(np.diff(v) >= -1e-12 * max(1.0, float(np.max(np.abs(v))))))


class CrossingResult(BaseModel):
    """Data-side decision of M(p, l_p) ⊂ closure(M(y, l_y) ∪ M(z, l_z))."""

    model_config = ConfigDict(frozen=True, arbitrary_types_allowed=True)

    p: float
    y: float
    z: Optional[float]
    ell_p: float
    ell_y: float
    ell_z: Optional[float]
    epsilon: float
    inclusion: Optional[bool] = Field(..., description="None when the residual falls between the thresholds")
    residual: float = Field(..., description="Volume gain from adding the probes, in units of Vol B(p, ε)")
    union_volume: float = Field(..., description="Recovered volume reached by probes and cover together")
    cover_volume: float = Field(..., description="Recovered volume reached by the cover alone")
    reference_volume: float = Field(..., description="Vol B(p, ε) from the metric on O")
    threshold_true: float
    threshold_false: float
    self_consistency: float
    probes: int
    basis: int

    @property
    def indeterminate(self) -> bool:
        return self.inclusion is None


class DistanceReport(BaseModel):
    """t* ≈ d(p, z) for p at distance r̃ from q along a normal geodesic."""

    q: float
    direction: float = Field(..., description="Angle ψ of the initial direction to ∂_r")
    r_tilde: float
    z: float
    epsilons: tuple[float, ...]
    t_stars: tuple[float, ...] = Field(..., description="Smallest t with a detected inclusion, per ε")
    brackets: tuple[tuple[float, float], ...] = Field(..., description="Last rejected and first accepted t, per ε")
    indeterminate: int = Field(..., description="Number of indeterminate tests met during the scans")
    distance: float = Field(..., description="t* extrapolated to ε → 0")
    tolerance: float
    cut_bound: Optional[float] = None


class CutLocusReport(BaseModel):
    """Smallest s + r with B(γ(s), r + ε) ⊂ closure B(q, s + r) detected from data."""

    q: float
    direction: float
    R: float = Field(..., description="Probed range of s + r")
    epsilons: tuple[float, ...]
    bounds: tuple[float, ...] = Field(..., description="Detected s + r per ε, R where nothing was detected")
    detected: tuple[bool, ...]
    density: int
    bound: float = Field(..., description="Bound extrapolated to ε → 0, or R when nothing was detected")


class GeodesicSamples(BaseModel):
    """A unit-speed geodesic of dr² + ρ(r)² dθ² by the Clairaut integral and by the geodesic equations."""

    model_config = ConfigDict(frozen=True, arbitrary_types_allowed=True)

    q: float
    direction: float
    clairaut: float = Field(..., description="c = ρ² dθ/ds")
    s: np.ndarray
    r: np.ndarray
    theta: np.ndarray
    direct_r: np.ndarray
    direct_theta: np.ndarray
    turning_points: tuple[float, ...] = Field((), description="Arclengths where dr/ds changes sign")
    agreement: float = Field(..., description="max distance in (r, θ) between the two routes")

    @property
    def length(self) -> float:
        return float(self.s[-1])

    @property
    def endpoint(self) -> tuple[float, float]:
        return float(self.r[-1]), float(self.theta[-1])
