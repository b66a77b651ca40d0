"""WKB data of an open radial channel: onset radius, α, φ and a±."""

import logging
from typing import Optional

import numpy as np
from scipy.integrate import cumulative_simpson

from warpscatter.core.config import SolverConfig, get_config
from warpscatter.core.errors import ClosedChannelError, SpecError
from warpscatter.core.numerics import log_grid, tail_remainder

from .constants import (
    ERROR_CLOSED_CHANNEL,
    ERROR_NOT_REGULAR,
    ONSET_SCAN_MAX,
    ONSET_SCAN_POINTS,
    TAIL_FACTOR,
)
from .liouville import coefficients
from .models import ModeProblem, WKBData

logger = logging.getLogger(__name__)


def decay_order(mp: ModeProblem) -> float:
    """ε = min(2α0, 2|β0|), capped at 2."""
    tail = mp.tail()
    alpha0 = tail.alpha0 if tail.alpha0 is not None else np.inf
    eps = min(2.0 * alpha0, 2.0 * abs(tail.beta0), 2.0)
    return float(eps)


def _scan_start(mp: ModeProblem) -> float:
    lo, _ = mp.profile.domain
    return max(1.0, lo + 1.0) if np.isfinite(lo) else 1.0


def onset_constant(mp: ModeProblem, eps: float) -> float:
    """C = sup_{r>=1} r^ε (|P²/4 - E0| + E/ρ²) / (1 + E), measured on a geometric scan."""
    r = np.geomspace(_scan_start(mp), min(ONSET_SCAN_MAX, mp.profile.domain[1]), ONSET_SCAN_POINTS)
    c = coefficients(mp, r)
    excess = np.abs(0.25 * c.P**2 - mp.E0) + c.E_over_rho2
    return float(np.max(r**eps * excess) / (1.0 + mp.E))


def onset_radius(mp: ModeProblem, eps: float, C: float) -> float:
    """Smallest r0 >= 1 with C r^{-ε}(1 + E) < (λ - E0)/2 for all r > r0."""
    k2 = complex(mp.lam).real - mp.E0
    r0 = (2.0 * C * (1.0 + mp.E) / k2) ** (1.0 / eps) if C > 0 else 1.0
    return float(max(r0, _scan_start(mp)))


def wkb_data(
    mp: ModeProblem,
    r_far: Optional[float] = None,
    config: Optional[SolverConfig] = None,
) -> WKBData:
    """
    Onset radius, phase speed α, phase φ and amplitudes a± of an open channel.

    Args:
        mp: Mode problem with real λ above the channel bottom.
        r_far: Largest radius the returned data must cover. Defaults to
            TAIL_FACTOR x max(config.r_max, 10 r0).
        config: Solver configuration.

    Returns:
        WKBData sampled on a geometric grid from r0.

    Raises:
        ClosedChannelError: λ is complex or at/below E0.
    """
    config = config or get_config()
    if not mp.is_open:
        raise ClosedChannelError(ERROR_CLOSED_CHANNEL.format(lam=mp.lam, E0=mp.E0), lam=str(mp.lam))
    lam = complex(mp.lam).real
    k = float(np.sqrt(lam - mp.E0))

    eps = decay_order(mp)
    if eps <= 0:
        raise SpecError(ERROR_NOT_REGULAR.format(eps=eps))
    C = onset_constant(mp, eps)
    r0 = onset_radius(mp, eps, C)

    if r_far is None:
        r_far = TAIL_FACTOR * max(config.r_max, 10.0 * r0)
    r_far = min(r_far, mp.profile.domain[1])
    grid = log_grid(r0, r_far, config.points_per_decade)
    grid[0] = r0
    c = coefficients(mp, grid)
    alpha = np.sqrt(lam - 0.25 * c.P**2 - c.E_over_rho2)
    phi = cumulative_simpson(alpha, x=grid, initial=0.0)

    integrand = c.dP / (4.0 * alpha)
    partial = cumulative_simpson(integrand, x=grid, initial=0.0)
    amp_phase = partial[-1] - partial + tail_remainder(grid, integrand)

    logger.debug("wkb: k=%.6g eps=%.3g C=%.4g r0=%.4g", k, eps, C, r0)
    return WKBData(
        r0=r0,
        k=k,
        epsilon=eps,
        C=C,
        grid=grid,
        alpha_samples=alpha,
        phi_samples=phi,
        amp_phase=np.real(amp_phase),
    )
