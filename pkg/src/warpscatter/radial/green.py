"""Half-line Green operator G^(±)(λ, E) and far-field coefficients.

    G(r, s) = Ψ0(min(r, s)) Ψ^(±)(max(r, s)) / (ρ(0)^{n-1} Ψ^(±)(0))

is the kernel with respect to the measure ρ^{n-1} dr, so u = G f solves
(L(E) - λ) u = f with u(0) = 0 and the ± radiation behaviour beyond supp f.
All integrals use trapezoid weights on the kernel grid.
"""

import logging
from typing import Optional

import numpy as np
from scipy.integrate import cumulative_trapezoid

from warpscatter.core.config import SolverConfig, get_config
from warpscatter.core.errors import ResonanceError, SpecError
from warpscatter.core.numerics import cumulative_to_end, trapezoid_weights

from .constants import ERROR_NEAR_EXCEPTIONAL, ERROR_SOURCE_SHAPE
from .jost import jost_solve
from .liouville import coefficients, weighted_wronskian
from .models import Direction, GreenKernel, ModeProblem
from .regular import regular_solve

logger = logging.getLogger(__name__)


def green_kernel(
    mp: ModeProblem,
    sign: Direction = "+",
    r_max: Optional[float] = None,
    grid: Optional[np.ndarray] = None,
    config: Optional[SolverConfig] = None,
) -> GreenKernel:
    """
    Solve Ψ0 and Ψ^(sign) on a common grid starting at the Dirichlet wall.

    Raises:
        SpecError: The problem is not a half-line problem.
        ResonanceError: Ψ^(sign)(0) is numerically zero.
    """
    config = config or get_config()
    r_max = r_max or config.r_max
    if grid is None:
        grid = np.linspace(0.0, r_max, config.grid_points)
    grid = np.asarray(grid, dtype=float)
    regular = regular_solve(mp, grid=grid, config=config)
    jost = jost_solve(mp, sign, r_max=r_max, grid=grid, config=config)

    log_abs = jost.solution.log_abs
    if log_abs[0] - np.max(log_abs) < np.log(config.resonance_threshold):
        value = float(np.exp(log_abs[0] - np.max(log_abs)))
        raise ResonanceError(ERROR_NEAR_EXCEPTIONAL.format(lam=mp.lam, value=value), lam=str(mp.lam))

    W = weighted_wronskian(mp, regular.solution, jost.solution)
    spread = float(np.max(np.abs(W - W[0])) / abs(W[0]))
    if spread > 1e-6:
        logger.warning("green kernel: weighted Wronskian varies by %.2e across the grid", spread)
    return GreenKernel(
        problem=mp,
        sign=sign,
        regular=regular,
        jost=jost,
        weighted_wronskian=complex(W[0]),
        wronskian_spread=spread,
    )


def _normaliser(gk: GreenKernel) -> complex:
    """ρ(0)^{n-1} Ψ0'(0) Ψ^(±)(0), i.e. minus the weighted Wronskian at the wall."""
    log_g0 = float(coefficients(gk.problem, gk.r[:1]).log_g[0])
    psi0 = gk.jost.solution.values[0]
    return complex(np.exp(log_g0) * gk.regular.slope * psi0)


def _source(gk: GreenKernel, f) -> np.ndarray:
    f = np.asarray(f, dtype=complex)
    if f.shape != gk.r.shape:
        raise SpecError(ERROR_SOURCE_SHAPE.format(got=f.shape[0] if f.ndim else 0, need=gk.r.size))
    return f


def green_apply(gk: GreenKernel, f) -> np.ndarray:
    """
    u = G^(±) f sampled on the kernel grid.

    Args:
        gk: Green kernel.
        f: Source samples on the kernel grid.

    Returns:
        Complex samples of u.
    """
    f = _source(gk, f)
    r = gk.r
    g = np.exp(coefficients(gk.problem, r).log_g)
    psi0 = gk.regular.solution.values
    psi = gk.jost.solution.values
    inner = cumulative_trapezoid(psi0 * f * g, r, initial=0)
    outer = cumulative_to_end(psi * f * g, r)
    return (psi * inner + psi0 * outer) / _normaliser(gk)


def far_field_coeff(gk: GreenKernel, f) -> tuple[complex, complex]:
    """
    Far-field coefficient f̃^(±) and F^(±) f = (k/π)^{1/2} f̃^(±).

    Beyond supp f, G^(±) f = Ψ^(±) f̃^(±). For c0 = 0 ends k = √λ.
    """
    f = _source(gk, f)
    r = gk.r
    g = np.exp(coefficients(gk.problem, r).log_g)
    w = trapezoid_weights(r)
    tilde = complex(np.sum(w * gk.regular.solution.values * f * g) / _normaliser(gk))
    k = gk.problem.k
    return tilde, complex(np.sqrt(k / np.pi) * tilde)


def kernel_entry(gk: GreenKernel, i: int, j: int) -> complex:
    """G(r_i, r_j) on the kernel grid."""
    lo, hi = min(i, j), max(i, j)
    psi0 = gk.regular.solution.values[lo]
    psi = gk.jost.solution.values[hi]
    return complex(psi0 * psi / _normaliser(gk))


def resolvent_pairing(gk_plus: GreenKernel, gk_minus: GreenKernel, f) -> complex:
    """(1/2πi)([G^(+) - G^(-)] f, f) in L²(ρ^{n-1} dr)."""
    f = _source(gk_plus, f)
    r = gk_plus.r
    g = np.exp(coefficients(gk_plus.problem, r).log_g)
    w = trapezoid_weights(r)
    diff = green_apply(gk_plus, f) - green_apply(gk_minus, f)
    return complex(np.sum(w * diff * np.conj(f) * g) / (2j * np.pi))
