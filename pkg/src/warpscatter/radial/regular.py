"""Linear propagation of the radial equation and the regular solution Ψ0."""

import logging
from typing import Optional

import numpy as np
from scipy.integrate import solve_ivp

from warpscatter.core.config import SolverConfig, get_config
from warpscatter.core.errors import ConvergenceError, SpecError

from .constants import CHUNK, ERROR_HALF_LINE
from .liouville import coefficients
from .models import ModeProblem, RegularSolution, SampledSolution

logger = logging.getLogger(__name__)


def _rhs(mp: ModeProblem):
    lam = complex(mp.lam)

    def f(r, y):
        c = coefficients(mp, r)
        return np.array([y[1], -c.P * y[1] + (c.E_over_rho2 - lam) * y[0]])

    return f


def propagate(
    mp: ModeProblem,
    grid: np.ndarray,
    u0: complex,
    du0: complex,
    log0: float = 0.0,
    config: Optional[SolverConfig] = None,
) -> SampledSolution:
    """
    Integrate u'' = -P u' + (E/ρ² - λ) u along `grid` (increasing or decreasing).

    The state is renormalised after every CHUNK nodes; the accumulated scale
    goes into `log_scale`, so growth over the grid cannot overflow.

    Raises:
        ConvergenceError: The integrator fails on a chunk.
    """
    config = config or get_config()
    f = _rhs(mp)
    n = grid.size
    mant = np.empty(n, dtype=complex)
    dmant = np.empty(n, dtype=complex)
    logs = np.empty(n)
    y = np.array([u0, du0], dtype=complex)
    L = log0
    start = 0
    while start < n - 1:
        stop = min(start + CHUNK, n - 1)
        nodes = grid[start : stop + 1]
        sol = solve_ivp(
            f, (nodes[0], nodes[-1]), y, method="DOP853", t_eval=nodes,
            rtol=config.rtol, atol=config.atol * max(1.0, float(np.max(np.abs(y)))),
        )
        if not sol.success:
            raise ConvergenceError(f"linear propagation failed near r = {nodes[0]}: {sol.message}")
        mant[start : stop + 1] = sol.y[0]
        dmant[start : stop + 1] = sol.y[1]
        logs[start : stop + 1] = L
        y = sol.y[:, -1]
        size = float(np.max(np.abs(y)))
        if size > 0 and np.isfinite(size):
            y = y / size
            L += np.log(size)
        start = stop
    if n == 1:
        mant[0], dmant[0], logs[0] = y[0], y[1], L
    if L > 230:
        logger.debug("propagate: solution grew by e^%.1f, log-scaled representation in use", L)
    return SampledSolution(r=grid, mantissa=mant, dmantissa=dmant, log_scale=logs)


def regular_solve(
    mp: ModeProblem,
    r_max: Optional[float] = None,
    grid: Optional[np.ndarray] = None,
    slope: complex = 1.0,
    config: Optional[SolverConfig] = None,
) -> RegularSolution:
    """
    Solution with Ψ0(0) = 0, Ψ0'(0) = slope on [0, R_max].

    Args:
        mp: Mode problem on a half-line (r_lo = 0); λ may be complex.
        r_max: End of the grid (config.r_max by default).
        grid: Increasing grid starting at 0; overrides r_max.
        slope: Initial derivative.
        config: Solver configuration.

    Raises:
        SpecError: The problem does not start at the Dirichlet wall.
    """
    config = config or get_config()
    if mp.r_lo != 0:
        raise SpecError(ERROR_HALF_LINE.format(r_lo=mp.r_lo))
    if grid is None:
        grid = np.linspace(0.0, r_max or config.r_max, config.grid_points)
    if grid[0] != 0:
        raise SpecError(ERROR_HALF_LINE.format(r_lo=grid[0]))
    sol = propagate(mp, np.asarray(grid, dtype=float), 0.0, slope, config=config)
    return RegularSolution(problem=mp, solution=sol, slope=slope)


def continue_down(
    mp: ModeProblem,
    grid: np.ndarray,
    upper: SampledSolution,
    config: Optional[SolverConfig] = None,
) -> SampledSolution:
    """
    Extend a solution known on the top part of `grid` down to grid[0].

    `upper.r` must equal grid[j:] for some j; the linear equation is
    integrated backward from grid[j].
    """
    j = grid.size - upper.r.size
    if j == 0:
        return upper
    lower = propagate(
        mp, grid[: j + 1][::-1], upper.mantissa[0], upper.dmantissa[0],
        float(upper.log_scale[0]), config,
    )
    return SampledSolution(
        r=grid,
        mantissa=np.concatenate([lower.mantissa[::-1][:-1], upper.mantissa]),
        dmantissa=np.concatenate([lower.dmantissa[::-1][:-1], upper.dmantissa]),
        log_scale=np.concatenate([lower.log_scale[::-1][:-1], upper.log_scale]),
    )
