"""
Flux-form discretization of the per-mode wave operator.

    (A u)_i = -[g_{i+½}(u_{i+1} - u_i) - g_{i-½}(u_i - u_{i-1})] / (g_i dr²) + (λ_ℓ/ρ_i²) u_i

with g = ρ^{n-1}. A is symmetric in the weighted product Σ g_i dr u_i v̄_i,
which is what makes the leapfrog energy exactly conserved.
"""

import logging
import math
from dataclasses import dataclass

import numpy as np
from scipy import sparse

from warpscatter.core.errors import SpecError, StepError
from warpscatter.manifold import ManifoldSpec, log_profile

from .constants import ERROR_CFL, ERROR_GRID_DOMAIN, ERROR_TIME_GRID, ERROR_WEIGHT_RANGE, MAX_LOG_WEIGHT
from .models import WaveGrid

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class WaveOperator:
    """A on the interior nodes of a WaveGrid; vectors always carry the two Dirichlet ends."""

    r: np.ndarray
    dr: float
    eigenvalue: float
    weights: np.ndarray
    matrix: sparse.csr_matrix
    spectral_bound: float

    @property
    def dt_max(self) -> float:
        """Leapfrog stability limit 2 / √(bound on the spectrum of A)."""
        return 2.0 / math.sqrt(self.spectral_bound)

    def apply(self, u: np.ndarray) -> np.ndarray:
        out = np.zeros_like(u)
        out[1:-1] = self.matrix @ u[1:-1]
        return out

    def inner(self, u: np.ndarray, v: np.ndarray) -> complex:
        """Σ g_i dr u_i conj(v_i)."""
        return complex(np.sum(self.weights * u * np.conj(v)))

    def norm2(self, u: np.ndarray) -> float:
        return float(np.sum(self.weights * np.abs(u) ** 2))


def check_grid(spec: ManifoldSpec, grid: WaveGrid) -> None:
    """
    Raises:
        SpecError: The grid leaves the manifold (a half-line starts at the wall r = 0).
    """
    lo, hi = spec.profile.domain
    if spec.topology == "half_line":
        lo = 0.0
    r = grid.nodes()
    if r[0] < lo - 1e-12 or r[-1] > hi or (spec.topology == "full_line" and r[0] <= lo):
        raise SpecError(ERROR_GRID_DOMAIN.format(lo=r[0], hi=r[-1], d_lo=lo, d_hi=hi))


def build_operator(spec: ManifoldSpec, eigenvalue: float, grid: WaveGrid) -> WaveOperator:
    """
    Assemble A for one mode on `grid`.

    Raises:
        SpecError: The grid leaves the manifold or ρ^{n-1} over- or underflows on it.
    """
    check_grid(spec, grid)
    r = grid.nodes()
    dr = grid.dr
    m = spec.n - 1
    lp = log_profile(spec.profile, r)
    log_g = m * lp.log_rho
    log_g_half = m * log_profile(spec.profile, r[:-1] + 0.5 * dr).log_rho
    peak = float(np.max(np.abs(log_g)))
    if peak > MAX_LOG_WEIGHT:
        raise SpecError(ERROR_WEIGHT_RANGE.format(log_g=peak), log_g=peak)

    inner = slice(1, -1)
    up = np.exp(log_g_half[1:] - log_g[inner]) / dr**2
    down = np.exp(log_g_half[:-1] - log_g[inner]) / dr**2
    potential = eigenvalue * np.exp(-2.0 * lp.log_rho[inner]) if eigenvalue else np.zeros(r.size - 2)
    diag = up + down + potential
    matrix = sparse.diags([-down[1:], diag, -up[:-1]], offsets=[-1, 0, 1], format="csr")
    bound = float(np.max(diag + up + down))
    weights = np.exp(log_g) * dr
    logger.debug("wave operator: %d nodes, λ_ℓ = %.4g, dt_max = %.4g", r.size, eigenvalue, 2 / math.sqrt(bound))
    return WaveOperator(r=r, dr=dr, eigenvalue=eigenvalue, weights=weights, matrix=matrix, spectral_bound=bound)


def time_step(op: WaveOperator, T: float, cfl: float, dt=None) -> tuple[float, int]:
    """
    Step and step count reaching T exactly.

    Without dt the step is the largest dt <= cfl · dt_max dividing T.

    Raises:
        StepError: dt exceeds the stability bound.
        SpecError: T is not a whole number of steps dt.
    """
    dt_max = op.dt_max
    if dt is None:
        if T <= 0:
            return cfl * dt_max, 0
        steps = int(math.ceil(T / (cfl * dt_max) - 1e-12))
        return T / steps, steps
    if dt > dt_max * (1.0 + 1e-12):
        raise StepError(ERROR_CFL.format(dt=dt, dt_max=dt_max, ratio=dt / dt_max), dt=dt, dt_max=dt_max)
    steps = int(round(T / dt))
    if abs(steps * dt - T) > 1e-9 * max(T, 1.0):
        raise SpecError(ERROR_TIME_GRID.format(T=T, dt=dt))
    return float(dt), steps
