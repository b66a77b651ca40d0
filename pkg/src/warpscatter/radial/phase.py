"""Phase recursion ψ_m = χ(r/R_m) √(k² - Q + i ψ_{m-1}')."""

import logging
from typing import Optional

import numpy as np

from warpscatter.core.config import SolverConfig, get_config
from warpscatter.core.errors import ConvergenceError, SpecError
from warpscatter.core.numerics import branch_sqrt, log_grid, log_grid_derivative, smoothstep

from .constants import ERROR_K_ZERO, ERROR_R_MAX, TAIL_FACTOR
from .liouville import coefficients
from .models import ModeProblem, PhaseFamily

logger = logging.getLogger(__name__)

# Square-root arguments within this angle of the branch cut are rejected
_CUT_ANGLE = 0.75 * np.pi


def _near_cut(w: np.ndarray, k: complex) -> np.ndarray:
    ref = np.angle(complex(k) ** 2)
    gap = np.angle(w * np.exp(-1j * ref))
    return (np.abs(gap) > _CUT_ANGLE) | (w == 0)


def recurse(
    r: np.ndarray,
    Q: np.ndarray,
    k: complex,
    depth: int,
    R0: float,
) -> PhaseFamily:
    """
    Run the recursion on a geometric grid for given samples Q = Q_full - E0.

    Each onset R_j starts at 2^j R0 and is doubled while the square-root
    argument comes near the branch cut inside the cutoff's support.
    """
    if k == 0:
        raise SpecError(ERROR_K_ZERO)
    k = complex(k)
    psis, dpsis, onsets = [], [], []
    prev_d = np.zeros_like(r, dtype=complex)
    R = R0
    for j in range(depth + 1):
        if j > 0:
            R = 2.0 * onsets[-1]
        w = k * k - Q + 1j * prev_d
        while True:
            bad = _near_cut(w, k) & (r > R)
            if not np.any(bad):
                break
            R_new = 2.0 * float(np.max(r[bad]))
            logger.warning("phase level %d: onset raised from %.4g to %.4g (branch cut)", j, R, R_new)
            R = R_new
        psi = smoothstep(r / R) * branch_sqrt(w, k)
        dpsi = log_grid_derivative(psi, r)
        psis.append(psi)
        dpsis.append(dpsi)
        onsets.append(R)
        prev_d = dpsi
    return PhaseFamily(
        k=k,
        depth=depth,
        onsets=tuple(onsets),
        r=r,
        psi=np.array(psis),
        dpsi=np.array(dpsis),
        Q=Q,
    )


def phase_onset(mp: ModeProblem, k: complex, r_far: float) -> float:
    """R0 >= 1: beyond it |Q - E0| <= |k|²/4 on a geometric scan."""
    lo, hi = mp.profile.domain
    start = max(1.0, lo + 1.0) if np.isfinite(lo) else 1.0
    r = np.geomspace(start, min(r_far, hi), 2000)
    Q = coefficients(mp, r).Q - mp.E0
    big = np.abs(Q) > 0.25 * abs(k) ** 2
    if not np.any(big):
        return start
    return float(r[np.max(np.nonzero(big))])


def phase_recursion(
    mp: ModeProblem,
    k: Optional[complex] = None,
    depth: Optional[int] = None,
    r_max: Optional[float] = None,
    config: Optional[SolverConfig] = None,
) -> PhaseFamily:
    """
    Phases ψ_0, ..., ψ_m of the mode problem at wavenumber k.

    The grid is uniform in log r, contains r_max as an exact node and extends
    to TAIL_FACTOR · r_max so tail integrals beyond r_max can be taken on it.

    Raises:
        SpecError: k = 0.
        ConvergenceError: r_max < 2 R_m; `suggested` carries the needed value.
    """
    config = config or get_config()
    k = mp.k if k is None else complex(k)
    depth = config.phase_depth if depth is None else depth
    r_max = config.r_max if r_max is None else r_max
    r_far = TAIL_FACTOR * r_max

    R0 = phase_onset(mp, k, r_far)
    r_lo = min(R0, r_max) / 2.0
    r = log_grid(r_lo, r_far, config.points_per_decade, anchor=r_max)
    lo, hi = mp.profile.domain
    r = r[(r > 0) & (r > lo) & (r <= hi)]
    Q = coefficients(mp, r).Q - mp.E0
    family = recurse(r, Q, k, depth, R0)

    need = 2.0 * family.onsets[-1]
    if need > r_max:
        raise ConvergenceError(ERROR_R_MAX.format(r_max=r_max, need=need), suggested=need)
    logger.debug("phase recursion: k=%s onsets=%s", k, family.onsets)
    return family
