"""
Data models for cusp ends.

With t = √B ∫_0^r dτ/ρ(τ) and u = ρ^{-(n-2)/2} w(t), the radial equation of
a cusp mode becomes -w'' + (1 + V(t)) w = 0 with

    V = (ρ²/B)(-λ + (n²-2n)/4 (ρ'/ρ)² + (n-2)/2 (ρ'/ρ)').
"""

from typing import Any

import numpy as np
from pydantic import BaseModel, ConfigDict, Field, PrivateAttr
from scipy.interpolate import CubicHermiteSpline

from warpscatter.core.errors import DomainError
from warpscatter.manifold.models import RadialProfile
from warpscatter.radial.models import SampledSolution

from .constants import ERROR_OUTSIDE_CHANGE


class CuspChange(BaseModel):
    """s(r) = ∫_0^r dτ/ρ sampled on a fine grid, with Hermite interpolation both ways."""

    model_config = ConfigDict(frozen=True, arbitrary_types_allowed=True)

    profile: RadialProfile
    B: float = Field(..., description="Cross-section eigenvalue", gt=0)
    r: np.ndarray = Field(..., description="Increasing grid starting at 0")
    s: np.ndarray = Field(..., description="s(r) on the grid")
    inv_rho: np.ndarray = Field(..., description="1/ρ on the grid, ds/dr")

    _forward: Any = PrivateAttr(default=None)
    _inverse: Any = PrivateAttr(default=None)

    @property
    def t(self) -> np.ndarray:
        return np.sqrt(self.B) * self.s

    def _check(self, r: np.ndarray) -> None:
        lo, hi = self.r[0], self.r[-1]
        bad = (r < lo - 1e-12) | (r > hi * (1 + 1e-12))
        if np.any(bad):
            raise DomainError(ERROR_OUTSIDE_CHANGE.format(r=float(r[bad].flat[0]), lo=lo, hi=hi))

    def s_at(self, r) -> np.ndarray:
        r = np.asarray(r, dtype=float)
        self._check(r)
        if self._forward is None:
            self._forward = CubicHermiteSpline(self.r, self.s, self.inv_rho)
        return self._forward(r)

    def t_at(self, r) -> np.ndarray:
        return np.sqrt(self.B) * self.s_at(r)

    def r_at_s(self, s) -> np.ndarray:
        if self._inverse is None:
            self._inverse = CubicHermiteSpline(self.s, self.r, 1.0 / self.inv_rho)
        s = np.asarray(s, dtype=float)
        return np.clip(self._inverse(s), self.r[0], self.r[-1])

    def r_at_t(self, t) -> np.ndarray:
        return self.r_at_s(np.asarray(t, dtype=float) / np.sqrt(self.B))


class CuspPotential(BaseModel):
    """V on the change grid and the threshold t0 beyond which |V| <= 1/2."""

    model_config = ConfigDict(frozen=True, arbitrary_types_allowed=True)

    change: CuspChange
    lam: float = Field(..., description="Spectral parameter λ")
    n: int = Field(..., description="Manifold dimension", ge=2)
    V: np.ndarray = Field(..., description="V on change.r")
    t0: float = Field(..., description="Smallest grid t with |V| <= 1/2 beyond it")
    r0: float = Field(..., description="r(t0)")

    @property
    def B(self) -> float:
        return self.change.B


class CuspSolutionPair(BaseModel):
    """Growing u0^(+) and decaying u0^(-) solutions of one cusp mode on a common r-grid."""

    model_config = ConfigDict(frozen=True, arbitrary_types_allowed=True)

    potential: CuspPotential
    growing: SampledSolution
    decaying: SampledSolution
    t: np.ndarray = Field(..., description="t(r) on the solution grid")
    psi: np.ndarray = Field(..., description="ψ on the grid; NaN below r0")
    weighted_wronskian: float = Field(..., description="ρ^{n-1}(u+ u-' - u+' u-), expected -2√B")
    wronskian_spread: float = Field(..., description="Relative variation of the weighted Wronskian")
    quadrature_mismatch: float = Field(
        ..., description="Max |log w- (backward) - log w- (quadrature)| on the tail"
    )

    @property
    def r(self) -> np.ndarray:
        return self.growing.r
