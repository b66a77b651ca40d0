"""Hamilton flow with data at infinity: Picard iteration of X = U(X_∞ + X) and a shooting cross-check."""

import logging
from concurrent.futures import ThreadPoolExecutor
from typing import NamedTuple, Optional

import numpy as np
from scipy.integrate import cumulative_simpson, solve_ivp

from warpscatter.core.config import SolverConfig, get_config
from warpscatter.core.errors import ConvergenceError, NonAdmissibleError, SpecError
from warpscatter.core.numerics import tail_remainder
from warpscatter.manifold.fitting import symbol_decay_fit

from .constants import (
    ERROR_GRID,
    ERROR_NO_CONTRACTION,
    ERROR_NOT_CONVERGED,
    ERROR_STRIP,
    ERROR_TABLE_RANGE,
    FIT_MIN_POINTS,
    MIN_X_NODES,
    PICARD_MAX_ITER,
    PICARD_RESIDUAL_TOL,
    PICARD_STEP_TOL,
)
from .field import TableField, metric_field
from .hamiltonian import hamiltonian
from .models import FlowGrid, GeneralMetric, HamiltonState

logger = logging.getLogger(__name__)


class LineResult(NamedTuple):
    X: np.ndarray
    iterations: int
    ratios: list[float]
    residual: float
    tail: float


def integral_to_infinity(r: np.ndarray, f: np.ndarray) -> tuple[np.ndarray, float]:
    """
    ∫_{r_i}^∞ f dr for every column of f (shape (len(r), m)).

    Simpson quadrature on the grid plus a remainder beyond r[-1] extrapolated
    from the decay of the last samples. Returns the integrals and the largest
    remainder.
    """
    c = cumulative_simpson(f, x=r, axis=0, initial=0)
    tails = np.array([float(np.real(tail_remainder(r, f[:, j]))) for j in range(f.shape[1])])
    return c[-1] - c + tails, float(np.max(np.abs(tails), initial=0.0))


def _state(r: np.ndarray, x: np.ndarray, X: np.ndarray, d: int):
    return r + X[:, 0], x + X[:, 1 : 1 + d], 0.5 + X[:, 1 + d], X[:, 2 + d :]


def apply_u(gm: GeneralMetric, r: np.ndarray, x: np.ndarray, X: np.ndarray) -> tuple[np.ndarray, float]:
    """
    One application of U on a single x line.

    U(X) = ∫_r^∞ (-U0, -H_ζ, H_t, H_z) dr' evaluated at X_∞ + X, with
    U0 = 2 ∫_r^∞ H_t dr' + K_τ and K_τ = H_τ - 2τ.
    """
    d = x.size
    t, z, tau, zeta = _state(r, x, X, d)
    hv = hamiltonian(gm, t, z, tau, zeta)
    I_t, tail_t = integral_to_infinity(r, hv.H_t[:, None])
    I_t = I_t[:, 0]
    U0 = 2.0 * I_t + hv.H_tau - 2.0 * tau
    rest, tail_rest = integral_to_infinity(r, np.column_stack([U0, hv.H_zeta, hv.H_z]))
    out = np.empty_like(X)
    out[:, 0] = -rest[:, 0]
    out[:, 1 : 1 + d] = -rest[:, 1 : 1 + d]
    out[:, 1 + d] = I_t
    out[:, 2 + d :] = rest[:, 1 + d :]
    return out, max(tail_t, tail_rest)


def _picard_line(gm: GeneralMetric, r: np.ndarray, x: np.ndarray, r_min: float) -> LineResult:
    X = np.zeros((r.size, 2 + 2 * x.size))
    steps: list[float] = []
    for _ in range(PICARD_MAX_ITER):
        new, tail = apply_u(gm, r, x, X)
        steps.append(float(np.max(np.abs(new - X))))
        X = new
        if steps[-1] < PICARD_STEP_TOL:
            break
        if len(steps) >= 3 and steps[-3] > PICARD_STEP_TOL and steps[-1] >= steps[-2] >= steps[-3]:
            ratios = [steps[-2] / steps[-3], steps[-1] / steps[-2]]
            raise NonAdmissibleError(
                ERROR_NO_CONTRACTION.format(ratios=", ".join(f"{q:.3g}" for q in ratios), r_min=r_min),
                x=x.tolist(),
            )
    ratios = [b / a for a, b in zip(steps, steps[1:]) if a > PICARD_STEP_TOL]
    if steps[-1] == 0.0:
        residual = 0.0
    else:
        check, _ = apply_u(gm, r, x, X)
        residual = float(np.max(np.abs(check - X)))
    if residual > PICARD_RESIDUAL_TOL:
        raise ConvergenceError(
            ERROR_NOT_CONVERGED.format(iterations=len(steps), residual=residual),
            suggested=2.0 * r_min,
        )
    return LineResult(X=X, iterations=len(steps), ratios=ratios, residual=residual, tail=tail)


def _shoot_line(gm: GeneralMetric, r: np.ndarray, x: np.ndarray, config: SolverConfig):
    """Backward integration of Hamilton's equations from r_max; returns X on the grid and the H drift."""
    d = x.size
    # asymptotic terminal data: the remainders of U at X_∞, i.e. the first Picard iterate at r_max
    terminal = apply_u(gm, r, x, np.zeros((r.size, 2 + 2 * d)))[0][-1]

    def rhs(s, y):
        hv = hamiltonian(gm, s + y[0], x + y[1 : 1 + d], 0.5 + y[1 + d], y[2 + d :])
        return np.concatenate([[hv.H_tau - 1.0], hv.H_zeta, [-hv.H_t], -hv.H_z])

    sol = solve_ivp(
        rhs, (r[-1], r[0]), terminal, method="DOP853", t_eval=r[::-1],
        rtol=config.rtol, atol=config.atol,
    )
    if not sol.success:
        raise ConvergenceError(f"shooting from r = {r[-1]:g} failed: {sol.message}")
    Y = sol.y.T[::-1]
    H = hamiltonian(gm, *_state(r, x, Y, d)).H
    return Y, float(np.max(np.abs(H - H[-1])))


def _check_grid(gm: GeneralMetric, grid: FlowGrid) -> None:
    if grid.dim != gm.dim:
        raise SpecError(f"flow grid has {grid.dim} chart axes, metric needs {gm.dim}")
    if not grid.r_min < grid.r_max or any(len(axis) < MIN_X_NODES for axis in grid.x):
        raise SpecError(ERROR_GRID.format(need=MIN_X_NODES))
    if any(np.any(np.diff(axis) <= 0) for axis in grid.x):
        raise SpecError(ERROR_GRID.format(need=MIN_X_NODES))
    field = metric_field(gm)
    if isinstance(field, TableField):
        lo, hi = field.t_range
        if lo > 0.5 * grid.r_min or hi < 1.1 * grid.r_max:
            raise SpecError(ERROR_TABLE_RANGE.format(t_max=hi, needed=1.1 * grid.r_max))
        span = grid.x[0][-1] - grid.x[0][0]
        if field.z_range[0] > grid.x[0][0] - 0.1 * span or field.z_range[1] < grid.x[0][-1] + 0.1 * span:
            raise SpecError(f"metric table z range {field.z_range} does not cover the chart with margin")


def _tail_fit(r: np.ndarray, f: np.ndarray, expected: float):
    """Decay fit over the last decade of r, starting at the last node <= r[-1]/10."""
    start = max(int(np.searchsorted(r, r[-1] / 10.0, side="right")) - 1, 0)
    window = np.arange(r.size) >= start
    if np.max(np.abs(f[window])) == 0.0 or np.count_nonzero(window) < FIT_MIN_POINTS:
        return None
    return symbol_decay_fit(r[window], f[window], expected=expected, min_points=FIT_MIN_POINTS)


def solve_fixed_point(
    gm: GeneralMetric,
    grid: FlowGrid,
    shoot: bool = True,
    config: Optional[SolverConfig] = None,
) -> HamiltonState:
    """
    Solve the Hamilton flow with conditions at infinity on every x line of the grid.

    Args:
        gm: Metric with exponents in the admissibility strip.
        grid: r range [r0, R_∞] and chart nodes.
        shoot: Cross-check every line by backward ODE integration from R_∞.
        config: Solver configuration (tolerances for shooting, worker count).

    Returns:
        HamiltonState with the fixed point, contraction, residual, tail
        remainder, shooting comparison and tail decay fits.

    Raises:
        NonAdmissibleError: Exponents outside the strip, or the Picard steps
            stop shrinking (start the grid at a larger r).
        ConvergenceError: No fixed point within PICARD_MAX_ITER iterations.
        SpecError: Inconsistent grid, or a metric that is not positive.
    """
    config = config or get_config()
    failed = gm.strip_violations()
    if failed:
        raise NonAdmissibleError(ERROR_STRIP.format(failed=", ".join(failed)))
    _check_grid(gm, grid)

    r = grid.radii()
    points = grid.points()
    logger.info("fixed point: %d lines x %d radii on [%g, %g]", len(points), r.size, r[0], r[-1])

    with ThreadPoolExecutor(max_workers=config.threads) as pool:
        lines = list(pool.map(lambda x: _picard_line(gm, r, x, grid.r_min), points))
        shots = list(pool.map(lambda x: _shoot_line(gm, r, x, config), points)) if shoot else None

    X = np.stack([line.X for line in lines])
    ratios = [q for line in lines for q in line.ratios]
    contraction = max(ratios, default=0.0)
    shooting_difference = energy_drift = None
    if shots is not None:
        shooting_difference = float(max(np.max(np.abs(Y - line.X)) for (Y, _), line in zip(shots, lines)))
        energy_drift = float(max(drift for _, drift in shots))

    d = gm.dim
    eps0 = gm.epsilon0
    state = HamiltonState(
        metric=gm,
        grid=grid,
        r=r,
        x=points,
        X=X,
        iterations=max(line.iterations for line in lines),
        contraction=contraction,
        residual=max(line.residual for line in lines),
        tail=max(line.tail for line in lines),
        shooting_difference=shooting_difference,
        energy_drift=energy_drift,
        epsilon0=eps0,
        decay=_tail_fit(r, np.max(np.abs(X), axis=(0, 2)), -eps0),
        tau_decay=_tail_fit(r, np.max(np.abs(X[..., 1 + d]), axis=0), -1.0 - eps0),
    )
    logger.info(
        "fixed point: %d iterations, contraction %.3g, residual %.3g, shooting difference %s",
        state.iterations, contraction, state.residual,
        "n/a" if shooting_difference is None else f"{shooting_difference:.3g}",
    )
    return state
