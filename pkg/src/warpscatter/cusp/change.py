"""Change of variable t = √B ∫_0^r dτ/ρ and the transformed potential V(t)."""

import logging
from typing import Optional

import numpy as np
from scipy.integrate import cumulative_simpson

from warpscatter.core.errors import DomainError, GridExtensionError, SpecError
from warpscatter.manifold.fitting import fit_tail
from warpscatter.manifold.models import RadialProfile
from warpscatter.manifold.profiles import log_profile

from .constants import (
    CHANGE_POINTS,
    ERROR_B_NONPOSITIVE,
    ERROR_NO_ORIGIN,
    ERROR_NOT_CUSP,
    ERROR_T0_NOT_FOUND,
    V_BOUND,
)
from .models import CuspChange, CuspPotential

logger = logging.getLogger(__name__)


def _check_origin(profile: RadialProfile) -> None:
    lo, _ = profile.domain
    if lo > 0 or (lo == 0 and profile.kind != "tabulated"):
        raise SpecError(ERROR_NO_ORIGIN.format(kind=profile.kind))


def cusp_change(
    profile: RadialProfile,
    B: float,
    r_max: float,
    points: int = CHANGE_POINTS,
) -> CuspChange:
    """
    Sample s(r) = ∫_0^r dτ/ρ(τ) on [0, r_max].

    Args:
        profile: Oriented profile whose r → +∞ tail is a cusp.
        B: Cross-section eigenvalue, B > 0.
        r_max: End of the sampled range.
        points: Number of uniform nodes.

    Raises:
        DomainError: B <= 0.
        SpecError: The profile tail is not a cusp or ρ(0) is undefined.
    """
    if B <= 0:
        raise DomainError(ERROR_B_NONPOSITIVE.format(B=B), B=B)
    _check_origin(profile)
    tail = fit_tail(profile, 2)
    if tail.classification != "cusp":
        raise SpecError(ERROR_NOT_CUSP.format(classification=tail.classification))
    hi = profile.domain[1]
    r = np.linspace(0.0, min(r_max, hi), points)
    inv_rho = np.exp(-log_profile(profile, r).log_rho)
    s = cumulative_simpson(inv_rho, x=r, initial=0.0)
    logger.debug("cusp change: B=%.4g r_max=%.4g s_max=%.4g", B, r[-1], s[-1])
    return CuspChange(profile=profile, B=B, r=r, s=s, inv_rho=inv_rho)


def potential_samples(change: CuspChange, lam: float, n: int, r) -> np.ndarray:
    """V at r for the given change, λ and n."""
    lp = log_profile(change.profile, np.asarray(r, dtype=float))
    bracket = -lam + 0.25 * (n * n - 2 * n) * lp.p**2 + 0.5 * (n - 2) * lp.dp
    return np.exp(2.0 * lp.log_rho) / change.B * bracket


def cusp_potential(
    profile: RadialProfile,
    B: float,
    lam: float,
    n: int,
    r_max: float,
    change: Optional[CuspChange] = None,
) -> CuspPotential:
    """
    V(t) on the change grid and t0(B), the smallest grid t with |V| <= 1/2 beyond it.

    Raises:
        GridExtensionError: |V| exceeds 1/2 at the end of the grid.
    """
    change = change or cusp_change(profile, B, r_max)
    V = potential_samples(change, lam, n, change.r)
    big = np.nonzero(np.abs(V) > V_BOUND)[0]
    if big.size and big[-1] == V.size - 1:
        raise GridExtensionError(ERROR_T0_NOT_FOUND.format(r_end=float(change.r[-1])))
    j0 = int(big[-1]) + 1 if big.size else 0
    t0 = float(change.t[j0])
    r0 = float(change.r[j0])
    logger.debug("cusp potential: B=%.4g lam=%.4g t0=%.4g r0=%.4g", B, lam, t0, r0)
    return CuspPotential(change=change, lam=lam, n=n, V=V, t0=t0, r0=r0)
