"""Exact Jost solutions Ψ^(±) of a regular end.

Open channels integrate the Riccati equation ψ' = -i(ψ² + Q - E0 - k²) for
v'/v = iψ (v = ρ^{(n-1)/2}u) backward from R_max, starting on the phase
recursion ψ_m. The phase S = ∫ψ is normalised so that Ψ^(+) ρ^{(n-1)/2} e^{-iφ} → 1.
Closed channels use the same construction with k = iκ for the decaying
solution; the growing one is fixed by forward propagation from r_lo and is not
unique.
"""

import logging
from typing import Optional

import numpy as np
from scipy.integrate import solve_ivp, trapezoid

from warpscatter.core.config import SolverConfig, get_config
from warpscatter.core.errors import ConvergenceError, SpecError
from warpscatter.core.numerics import complex_cumulative_simpson, tail_remainder

from .constants import (
    ERROR_COMPLEX_LAMBDA,
    ERROR_R_MAX,
    ERROR_TAIL_CONTRACTION,
    RICCATI_GUARD,
    TAIL_CONTRACTION_MAX,
)
from .liouville import coefficients
from .models import Direction, JostSolution, ModeProblem, PhaseFamily, SampledSolution
from .phase import phase_recursion
from .regular import continue_down, propagate
from .wkb import wkb_data

logger = logging.getLogger(__name__)


def _tail_phase_correction(mp: ModeProblem, phase: PhaseFamily, r_max: float, ref) -> complex:
    """∫_{R_max}^∞ (ψ_m - ref(r)) dr on the phase grid plus a power-tail remainder."""
    mask = phase.r >= r_max * (1 - 1e-12)
    r = phase.r[mask]
    integrand = phase.top[mask] - ref(r)
    if r.size < 3:
        return 0.0
    partial = complex_cumulative_simpson(integrand, r)
    return complex(partial[-1] + tail_remainder(r, integrand))


def tail_contraction(phase: PhaseFamily, r_max: float) -> float:
    """
    (1/|k|)∫_{R_max}^∞ |ψ_m residual| dr.

    Bounds the contraction of the remainder iteration v = ∫_r^∞ K(r, s) res(s) v(s) ds
    behind the tail construction; the Jost solution is only accepted below
    TAIL_CONTRACTION_MAX.
    """
    mask = phase.r >= r_max * (1 - 1e-12)
    r = phase.r[mask]
    if r.size < 2:
        return 0.0
    density = np.abs(phase.residual()[mask]) / abs(phase.k)
    return float(trapezoid(density, r) + abs(tail_remainder(r, density)))


def _checked_contraction(phase: PhaseFamily, r_max: float) -> float:
    bound = tail_contraction(phase, r_max)
    if bound >= TAIL_CONTRACTION_MAX:
        raise ConvergenceError(
            ERROR_TAIL_CONTRACTION.format(r_max=r_max, bound=bound, limit=TAIL_CONTRACTION_MAX),
            suggested=2.0 * r_max,
        )
    return bound


def _riccati(mp: ModeProblem, k: complex, grid: np.ndarray, r_max: float, psi_R: complex, config):
    """Backward Riccati solve; returns (ψ, σ) on the grid part reached and the stop radius."""
    lam = complex(mp.lam)
    E0 = mp.E0
    guard = RICCATI_GUARD * (1.0 + abs(k))

    def f(r, y):
        c = coefficients(mp, r)
        psi = y[0]
        return np.array([-1j * (psi * psi + c.Q - E0 - (lam - E0)), psi - k])

    def blowup(r, y):
        return guard - abs(y[0])

    blowup.terminal = True
    lo = float(grid[0])
    sol = solve_ivp(
        f, (r_max, lo), np.array([psi_R, 0.0], dtype=complex), method="DOP853",
        dense_output=True, events=blowup, rtol=config.rtol, atol=config.atol,
    )
    if sol.status == -1:
        raise ConvergenceError(f"Riccati integration failed: {sol.message}")
    r_stop = float(sol.t[-1])
    return sol, r_stop


def jost_solve(
    mp: ModeProblem,
    direction: Direction = "+",
    r_max: Optional[float] = None,
    grid: Optional[np.ndarray] = None,
    depth: Optional[int] = None,
    config: Optional[SolverConfig] = None,
) -> JostSolution:
    """
    Jost solution Ψ^(direction) of a regular end on [r_lo, R_max].

    Args:
        mp: Mode problem with real λ.
        direction: "+" outgoing (decaying on closed channels), "-" incoming
            (growing on closed channels).
        r_max: Matching radius where the phase recursion hands over.
        grid: Increasing sample grid inside [r_lo, R_max]; defaults to
            config.grid_points uniform nodes.
        depth: Phase recursion depth (config.phase_depth by default).
        config: Solver configuration.

    Raises:
        SpecError: Complex λ.
        ConvergenceError: R_max too small for the tail construction.
    """
    config = config or get_config()
    lam = complex(mp.lam)
    if lam.imag != 0:
        raise SpecError(ERROR_COMPLEX_LAMBDA.format(lam=lam))
    r_max = r_max or config.r_max
    if grid is None:
        grid = np.linspace(mp.r_lo, r_max, config.grid_points)
    grid = np.asarray(grid, dtype=float)
    if grid[-1] > r_max * (1 + 1e-12):
        raise SpecError(f"grid extends beyond R_max = {r_max}")

    if mp.is_open:
        return _open_solution(mp, direction, r_max, grid, depth, config)
    return _closed_solution(mp, direction, r_max, grid, depth, config)


def _from_phase(mp, grid, S, psi) -> SampledSolution:
    c = coefficients(mp, grid)
    log_abs = -0.5 * c.log_g - np.imag(S)
    mant = np.exp(1j * np.real(S))
    return SampledSolution(
        r=grid,
        mantissa=mant,
        dmantissa=mant * (-0.5 * c.P + 1j * psi),
        log_scale=log_abs,
    )


def _solve_with_phase(mp, k, grid, r_max, phase, S_R, config) -> SampledSolution:
    psi_R = complex(phase.at(np.array([r_max]))[0])
    sol, r_stop = _riccati(mp, k, grid, r_max, psi_R, config)
    reached = grid >= r_stop - 1e-12 * max(1.0, abs(r_stop))
    y = sol.sol(grid[reached])
    S = S_R + k * (grid[reached] - r_max) + y[1]
    upper = _from_phase(mp, grid[reached], S, y[0])
    if np.all(reached):
        return upper

    logger.info("Riccati guard hit at r = %.4g; continuing with the linear equation", r_stop)
    return continue_down(mp, grid, upper, config)


def _open_solution(mp, direction, r_max, grid, depth, config) -> JostSolution:
    wkb = wkb_data(mp, config=config)
    if r_max < 2.0 * wkb.r0:
        raise ConvergenceError(ERROR_R_MAX.format(r_max=r_max, need=2 * wkb.r0), suggested=2 * wkb.r0)
    k = complex(wkb.k)
    phase = phase_recursion(mp, k, depth, r_max, config)
    bound = _checked_contraction(phase, r_max)

    lam = complex(mp.lam).real

    def alpha(r):
        c = coefficients(mp, r)
        return np.sqrt(lam - 0.25 * c.P**2 - c.E_over_rho2)

    S_R = float(wkb.phi(r_max)) - _tail_phase_correction(mp, phase, r_max, alpha)
    solution = _solve_with_phase(mp, k, grid, r_max, phase, S_R, config)
    if direction == "-":
        solution = solution.conj()
    logger.debug(
        "jost(%s): k=%.6g r0=%.4g onsets=%s tail contraction %.2e", direction, wkb.k, wkb.r0, phase.onsets, bound
    )
    return JostSolution(
        problem=mp, direction=direction, solution=solution, r_max=r_max,
        open_channel=True, phase=phase, r0=wkb.r0, tail_contraction=bound,
    )


def _closed_solution(mp, direction, r_max, grid, depth, config) -> JostSolution:
    k = mp.k
    kappa = k.imag
    if direction == "+":
        phase = phase_recursion(mp, k, depth, r_max, config)
        bound = _checked_contraction(phase, r_max)
        S_R = k * r_max - _tail_phase_correction(mp, phase, r_max, lambda r: k)
        solution = _solve_with_phase(mp, k, grid, r_max, phase, S_R, config)
        return JostSolution(
            problem=mp, direction="+", solution=solution, r_max=r_max,
            open_channel=False, phase=phase, tail_contraction=bound,
        )
    # growing solution: forward from r_lo, normalised to ρ^{-(n-1)/2} e^{κ r} at R_max
    raw = propagate(mp, grid, 1.0, kappa, config=config)
    log_g_R = float(coefficients(mp, np.array([grid[-1]])).log_g[0])
    target = -0.5 * log_g_R + kappa * grid[-1]
    m_end = raw.mantissa[-1]
    shift = target - (np.log(abs(m_end)) + raw.log_scale[-1])
    unit = np.conj(m_end) / abs(m_end)
    solution = SampledSolution(
        r=grid, mantissa=raw.mantissa * unit, dmantissa=raw.dmantissa * unit,
        log_scale=raw.log_scale + shift,
    )
    return JostSolution(
        problem=mp, direction="-", solution=solution, r_max=r_max, open_channel=False,
    )
