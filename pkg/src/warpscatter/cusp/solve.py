"""Growing and decaying solutions of cusp modes.

On the tail t >= t0 the Riccati variable η = w'/w of -w'' + (1 + V) w = 0 is
integrated in t: forward from t0 on the growing branch η ≈ +√(1+V), backward
from beyond the last node on the decaying branch η ≈ -√(1+V). Both are
normalised by the WKB limit w ≈ (1+V)^{-1/4} e^{±ψ}. Below t0 the radial
equation itself is integrated backward.
"""

import logging
from typing import NamedTuple, Optional

import numpy as np
from scipy.integrate import cumulative_simpson, solve_ivp
from scipy.interpolate import CubicHermiteSpline

from warpscatter.core.config import SolverConfig, get_config
from warpscatter.core.errors import ConvergenceError, GridExtensionError
from warpscatter.core.numerics import log_tail_integral
from warpscatter.manifold.models import RadialProfile
from warpscatter.manifold.profiles import log_profile
from warpscatter.radial.liouville import weighted_wronskian
from warpscatter.radial.models import ModeProblem, SampledSolution
from warpscatter.radial.regular import continue_down

from .change import cusp_change, cusp_potential, potential_samples
from .constants import (
    DEFAULT_R_MAX,
    ERROR_RICCATI,
    ERROR_T0_NOT_FOUND,
    QUADRATURE_TOLERANCE,
    TAIL_T,
)
from .models import CuspChange, CuspPotential, CuspSolutionPair

logger = logging.getLogger(__name__)


class PsiTable(NamedTuple):
    r: np.ndarray
    psi: np.ndarray
    dpsi: np.ndarray


def _psi_table(pot: CuspPotential, r0: float) -> PsiTable:
    """ψ = ∫_{r0}^r √(B/ρ²)(1+V)^{1/2} on the change nodes beyond r0."""
    ch = pot.change
    nodes = ch.r[ch.r > r0 * (1 + 1e-14) + 1e-300]
    r = np.concatenate([[r0], nodes])
    V = potential_samples(ch, pot.lam, pot.n, r)
    inv_rho = np.exp(-log_profile(ch.profile, r).log_rho)
    dpsi = np.sqrt(ch.B) * inv_rho * np.sqrt(np.maximum(1.0 + V, 0.0))
    return PsiTable(r, cumulative_simpson(dpsi, x=r, initial=0.0), dpsi)


def _first_admissible(pot: CuspPotential, r0: float, r_hi: float) -> float:
    """Raise r0 past the last node in [r0, r_hi] where 1 + V < 0."""
    ch = pot.change
    mask = (ch.r >= r0) & (ch.r <= r_hi)
    negative = np.nonzero(mask & (1.0 + pot.V < 0))[0]
    if negative.size == 0:
        return r0
    j = int(negative[-1]) + 1
    if j >= ch.r.size:
        raise GridExtensionError(ERROR_T0_NOT_FOUND.format(r_end=float(ch.r[-1])))
    logger.warning("psi_eval: integrand negative up to r = %.4g; r0 raised from %.4g", ch.r[j - 1], r0)
    return float(ch.r[j])


def psi_eval(
    profile: RadialProfile,
    B: float,
    lam: float,
    n: int,
    r,
    r0: Optional[float] = None,
    potential: Optional[CuspPotential] = None,
):
    """
    ψ(r) = ∫_{r0}^r √(B/ρ² - λ + (n²-2n)/4 (ρ'/ρ)² + (n-2)/2 (ρ'/ρ)') dτ.

    Args:
        profile: Cusp profile.
        B: Cross-section eigenvalue.
        lam: Spectral parameter.
        n: Manifold dimension.
        r: Scalar or array of radii; values below r0 give NaN.
        r0: Lower limit; defaults to r(t0), the |V| <= 1/2 threshold.
        potential: Precomputed potential covering max(r).

    Returns:
        ψ at r (float for scalar input).
    """
    r_arr = np.asarray(r, dtype=float)
    r_hi = float(np.max(r_arr))
    pot = potential or cusp_potential(profile, B, lam, n, r_max=max(DEFAULT_R_MAX, r_hi))
    start = pot.r0 if r0 is None else _first_admissible(pot, r0, r_hi)
    table = _psi_table(pot, start)
    spline = CubicHermiteSpline(table.r, table.psi, table.dpsi)
    out = np.where(r_arr >= start, spline(np.maximum(r_arr, start)), np.nan)
    if np.ndim(r) == 0:
        return float(out)
    return out


def _extended_change(profile: RadialProfile, B: float, r_max: float) -> CuspChange:
    """Change of variable reaching at least TAIL_T beyond t(r_max) where the domain allows."""
    extra = 1.0
    hi = profile.domain[1]
    for _ in range(12):
        ch = cusp_change(profile, B, r_max + extra)
        if ch.t[-1] >= float(ch.t_at(r_max)) + TAIL_T or ch.r[-1] >= hi:
            return ch
        extra *= 2.0
    return ch


def _riccati(pot: CuspPotential, t_from: float, t_to: float, sign: float, config: SolverConfig):
    """η' = 1 + V - η², σ' = η - sign √(1+V), from t_from towards t_to."""
    ch = pot.change

    def V(t):
        return potential_samples(ch, pot.lam, pot.n, ch.r_at_t(t))

    def f(t, y):
        v = float(V(t))
        return [1.0 + v - y[0] * y[0], y[0] - sign * np.sqrt(max(1.0 + v, 0.0))]

    eta0 = sign * np.sqrt(1.0 + float(V(t_from)))
    sol = solve_ivp(
        f, (t_from, t_to), [eta0, 0.0], method="LSODA", dense_output=True,
        rtol=config.rtol, atol=config.atol,
    )
    if not sol.success:
        raise ConvergenceError(
            ERROR_RICCATI.format(t_lo=min(t_from, t_to), t_hi=max(t_from, t_to), message=sol.message)
        )
    return sol


def _tail_solution(mp, r, log_w, eta, B) -> SampledSolution:
    lp = log_profile(mp.profile, r)
    m = 0.5 * (mp.n - 2)
    return SampledSolution(
        r=r,
        mantissa=np.ones(r.size, dtype=complex),
        dmantissa=(-m * lp.p + eta * np.sqrt(B) * np.exp(-lp.log_rho)).astype(complex),
        log_scale=-m * lp.log_rho + log_w,
    )


def cusp_solve(
    profile: RadialProfile,
    B: float,
    lam: float,
    n: int,
    r_max: float = DEFAULT_R_MAX,
    grid: Optional[np.ndarray] = None,
    config: Optional[SolverConfig] = None,
) -> CuspSolutionPair:
    """
    Growing u0^(+) and decaying u0^(-) with u0^(±) ρ^{(n-2)/2} e^{∓ψ} → 1.

    Args:
        profile: Oriented cusp profile, defined at r = 0.
        B: Cross-section eigenvalue, B > 0.
        lam: Real spectral parameter.
        n: Manifold dimension.
        r_max: End of the solution grid.
        grid: Increasing grid in [0, r_max]; config.grid_points nodes by default.
        config: Solver configuration.

    Raises:
        DomainError: B <= 0.
        GridExtensionError: |V| > 1/2 up to the end of the grid.
        ConvergenceError: A Riccati integration failed.
    """
    config = config or get_config()
    if grid is None:
        grid = np.linspace(0.0, r_max, config.grid_points)
    grid = np.asarray(grid, dtype=float)
    ch = _extended_change(profile, B, float(grid[-1]))
    pot = cusp_potential(profile, B, lam, n, r_max=float(ch.r[-1]), change=ch)
    tail = grid >= pot.r0
    if not np.any(tail):
        raise GridExtensionError(ERROR_T0_NOT_FOUND.format(r_end=float(grid[-1])))
    r_tail = grid[tail]
    t_grid = ch.t_at(grid)
    t_start, t_far = float(t_grid[tail][0]), float(ch.t[-1])

    table = _psi_table(pot, pot.r0)
    psi_spline = CubicHermiteSpline(table.r, table.psi, table.dpsi)
    psi = np.full(grid.size, np.nan)
    psi[tail] = psi_spline(r_tail)
    V_far = float(pot.V[-1])
    end_shift = 0.25 * np.log1p(V_far)

    up = _riccati(pot, t_start, t_far, +1.0, config)
    down = _riccati(pot, t_far, t_start, -1.0, config)
    y_up = up.sol(t_grid[tail])
    y_down = down.sol(t_grid[tail])
    sigma_up_far = float(up.sol(t_far)[1])
    log_w_plus = psi[tail] + y_up[1] - sigma_up_far - end_shift
    log_w_minus = -psi[tail] + y_down[1] - end_shift

    mp = ModeProblem(n=n, profile=profile, E=B, lam=lam, r_lo=float(grid[0]))
    growing = continue_down(mp, grid, _tail_solution(mp, r_tail, log_w_plus, y_up[0], B), config)
    decaying = continue_down(
        mp, grid, _tail_solution(mp, r_tail, log_w_minus, y_down[0], B), config
    )

    W = np.real(weighted_wronskian(mp, growing, decaying))
    spread = float(np.max(np.abs(W - W[0])) / abs(W[0]))

    # decaying solution by reduction of order, w- = 2 w+ ∫_t^∞ w+^{-2}, on the fine nodes
    fine = (ch.r >= r_tail[0]) & (ch.t >= t_start)
    t_fine = ch.t[fine]
    log_wp_fine = psi_spline(ch.r[fine]) + up.sol(t_fine)[1] - sigma_up_far - end_shift
    quad = np.log(2.0) + log_wp_fine + log_tail_integral(t_fine, -2.0 * log_wp_fine)
    direct = -psi_spline(ch.r[fine]) + down.sol(t_fine)[1] - end_shift
    inside = ch.r[fine] <= grid[-1]
    mismatch = float(np.max(np.abs(quad[inside] - direct[inside])))
    if mismatch > QUADRATURE_TOLERANCE:
        logger.warning("cusp_solve: decaying solutions disagree by %.2e in log", mismatch)

    logger.info(
        "cusp solve: B=%.4g lam=%.4g t0=%.4g W=%.6g spread=%.2e", B, lam, pot.t0, W[0], spread
    )
    return CuspSolutionPair(
        potential=pot,
        growing=growing,
        decaying=decaying,
        t=t_grid,
        psi=psi,
        weighted_wronskian=float(W[0]),
        wronskian_spread=spread,
        quadrature_mismatch=mismatch,
    )
