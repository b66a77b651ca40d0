"""
Data models for per-mode radial problems.

The radial equation is -u'' - (n-1)(ρ'/ρ) u' + (E/ρ²) u = λ u with weight
g = ρ^{n-1}. Solutions are stored as log-scaled samples
u = mantissa · exp(log_scale), u' = dmantissa · exp(log_scale), so exponentially
growing or decaying solutions survive on long grids.
"""

import cmath
from typing import Any, Literal, Optional

import numpy as np
from pydantic import BaseModel, ConfigDict, Field, PrivateAttr
from scipy.interpolate import CubicSpline

from warpscatter.manifold.fitting import fit_tail
from warpscatter.manifold.models import EndFit, RadialProfile

Direction = Literal["+", "-"]


class ModeProblem(BaseModel):
    """One radial mode: dimension, warp profile, cross-section eigenvalue E and λ."""

    model_config = ConfigDict(frozen=True)

    n: int = Field(..., description="Manifold dimension", ge=2)
    profile: RadialProfile = Field(..., description="Oriented warp profile of the end")
    E: float = Field(0.0, description="Cross-section eigenvalue λ_ℓ", ge=0)
    lam: complex = Field(..., description="Spectral parameter λ (Im λ >= 0)")
    r_lo: float = Field(0.0, description="Start of the radial domain")

    _tail: Any = PrivateAttr(default=None)

    def tail(self) -> EndFit:
        """Asymptotic constants of the profile's r → +∞ end (fitted once, then cached)."""
        if self._tail is None:
            self._tail = fit_tail(self.profile, self.n)
        return self._tail

    @property
    def E0(self) -> float:
        return self.tail().E0

    @property
    def k(self) -> complex:
        """√(λ - E0) on the branch with Im ≥ 0 (Re ≥ 0 on the real axis)."""
        k = cmath.sqrt(complex(self.lam) - self.E0)
        if k.imag < 0 or (k.imag == 0 and k.real < 0):
            k = -k
        return k

    @property
    def is_open(self) -> bool:
        lam = complex(self.lam)
        return lam.imag == 0 and lam.real > self.E0

    def with_lam(self, lam: complex) -> "ModeProblem":
        return self.model_copy(update={"lam": lam})


class SampledSolution(BaseModel):
    """A radial solution sampled on a grid in log-scaled form."""

    model_config = ConfigDict(frozen=True, arbitrary_types_allowed=True)

    r: np.ndarray
    mantissa: np.ndarray
    dmantissa: np.ndarray
    log_scale: np.ndarray

    @property
    def values(self) -> np.ndarray:
        return self.mantissa * np.exp(self.log_scale)

    @property
    def derivatives(self) -> np.ndarray:
        return self.dmantissa * np.exp(self.log_scale)

    @property
    def log_abs(self) -> np.ndarray:
        with np.errstate(divide="ignore"):
            return np.log(np.abs(self.mantissa)) + self.log_scale

    def conj(self) -> "SampledSolution":
        return self.model_copy(
            update={"mantissa": np.conj(self.mantissa), "dmantissa": np.conj(self.dmantissa)}
        )

    def scaled(self, factor: complex) -> "SampledSolution":
        """Multiply by a constant, keeping |mantissa| near 1."""
        factor = complex(factor)
        if factor == 0:
            return self.model_copy(update={"mantissa": 0 * self.mantissa, "dmantissa": 0 * self.dmantissa})
        unit = factor / abs(factor)
        return self.model_copy(
            update={
                "mantissa": unit * self.mantissa,
                "dmantissa": unit * self.dmantissa,
                "log_scale": self.log_scale + np.log(abs(factor)),
            }
        )

    def mirrored(self) -> "SampledSolution":
        """Re-express a solution computed in r̃ = -r in the original coordinate."""
        return SampledSolution(
            r=-self.r[::-1],
            mantissa=self.mantissa[::-1],
            dmantissa=-self.dmantissa[::-1],
            log_scale=self.log_scale[::-1],
        )

    def restricted(self, mask: np.ndarray) -> "SampledSolution":
        return SampledSolution(
            r=self.r[mask],
            mantissa=self.mantissa[mask],
            dmantissa=self.dmantissa[mask],
            log_scale=self.log_scale[mask],
        )


class WKBData(BaseModel):
    """Onset radius, local wavenumber α, phase φ and amplitudes a± of an open channel."""

    model_config = ConfigDict(frozen=True, arbitrary_types_allowed=True)

    r0: float = Field(..., description="Onset radius r0(λ, E)")
    k: float = Field(..., description="√(λ - E0)")
    epsilon: float = Field(..., description="Decay order used for r0")
    C: float = Field(..., description="Measured constant in the onset inequality")
    grid: np.ndarray = Field(..., description="Geometric grid starting at r0")
    alpha_samples: np.ndarray
    phi_samples: np.ndarray = Field(..., description="∫_{r0}^r α")
    amp_phase: np.ndarray = Field(..., description="∫_r^∞ P'/(4α)")

    _splines: Any = PrivateAttr(default=None)

    def _eval(self, which: int, r) -> np.ndarray:
        if self._splines is None:
            x = np.log(self.grid)
            self._splines = tuple(
                CubicSpline(x, y) for y in (self.alpha_samples, self.phi_samples, self.amp_phase)
            )
        r = np.asarray(r, dtype=float)
        if np.any(r < self.r0 * (1 - 1e-12)) or np.any(r > self.grid[-1] * (1 + 1e-12)):
            raise ValueError(f"WKB data covers [{self.r0}, {self.grid[-1]}] only")
        return self._splines[which](np.log(r))

    def alpha(self, r):
        return self._eval(0, r)

    def phi(self, r):
        return self._eval(1, r)

    def a_plus(self, r):
        return np.sqrt(self.k / self.alpha(r)) * np.exp(1j * self._eval(2, r))

    def a_minus(self, r):
        return np.conj(self.a_plus(r))


class PhaseFamily(BaseModel):
    """Phases ψ_0..ψ_m on a geometric grid; ψ_j = 0 below R_j."""

    model_config = ConfigDict(frozen=True, arbitrary_types_allowed=True)

    k: complex
    depth: int = Field(..., ge=0)
    onsets: tuple[float, ...] = Field(..., description="R_0, ..., R_m")
    r: np.ndarray
    psi: np.ndarray = Field(..., description="Shape (depth + 1, len(r))")
    dpsi: np.ndarray
    Q: np.ndarray = Field(..., description="Q - E0 on the grid")

    @property
    def top(self) -> np.ndarray:
        return self.psi[-1]

    def residual(self, level: Optional[int] = None) -> np.ndarray:
        """-iψ_j' + ψ_j² + Q - k² on the grid."""
        j = self.depth if level is None else level
        return -1j * self.dpsi[j] + self.psi[j] ** 2 + self.Q - self.k**2

    def at(self, r, level: Optional[int] = None) -> np.ndarray:
        """ψ_j at arbitrary r (0 below the grid)."""
        j = self.depth if level is None else level
        r = np.asarray(r, dtype=float)
        out = np.zeros(r.shape, dtype=complex)
        inside = r >= self.r[0]
        out[inside] = CubicSpline(np.log(self.r), self.psi[j])(np.log(r[inside]))
        return out


class JostSolution(BaseModel):
    """Exact solution with outgoing (+) or incoming (-) asymptotics."""

    model_config = ConfigDict(frozen=True, arbitrary_types_allowed=True)

    problem: ModeProblem
    direction: Direction
    solution: SampledSolution
    r_max: float
    open_channel: bool
    phase: Optional[PhaseFamily] = None
    r0: Optional[float] = None
    tail_contraction: Optional[float] = Field(None, description="Contraction bound of the tail remainder beyond R_max")

    @property
    def r(self) -> np.ndarray:
        return self.solution.r


class RegularSolution(BaseModel):
    """Solution with Ψ0(0) = 0, Ψ0'(0) = slope."""

    model_config = ConfigDict(frozen=True, arbitrary_types_allowed=True)

    problem: ModeProblem
    solution: SampledSolution
    slope: complex = 1.0


class GreenKernel(BaseModel):
    """Half-line Green operator data: Ψ0, Ψ^(±) on a common grid and the Wronskian."""

    model_config = ConfigDict(frozen=True, arbitrary_types_allowed=True)

    problem: ModeProblem
    sign: Direction
    regular: RegularSolution
    jost: JostSolution
    weighted_wronskian: complex = Field(..., description="ρ^{n-1}(Ψ0 Ψ' - Ψ0' Ψ), constant in r")
    wronskian_spread: float = Field(..., description="Relative variation of the weighted Wronskian")

    @property
    def r(self) -> np.ndarray:
        return self.regular.solution.r


class RadiationDefect(BaseModel):
    """Dyadic averages R ↦ (1/R)∫_0^R |D(k)u|² ρ^{n-1} dr."""

    model_config = ConfigDict(frozen=True, arbitrary_types_allowed=True)

    radii: np.ndarray
    defect: np.ndarray
    slope: float = Field(..., description="Log-log slope of the defect over the last radii")
    decaying: bool = Field(..., description="Defect decreases toward 0 (outgoing proxy)")
