"""Geometric oracles for the rotation-invariant sector: domains of influence and band inclusions."""

import math
from typing import Optional, Sequence

import numpy as np
from scipy import integrate

from warpscatter.core.errors import SpecError
from warpscatter.manifold import ManifoldSpec, log_profile

from .constants import ERROR_BAND
from .geodesic import manifold_bounds
from .models import DomainOfInfluence


def band_ball(spec: ManifoldSpec, center: float, radius: float) -> tuple[float, float]:
    """M(x, l) for the orbit of radius x: the band [x - l, x + l] cut to the manifold."""
    lo, hi = manifold_bounds(spec)
    return max(center - radius, lo), min(center + radius, hi)


def domain_of_influence(
    spec: ManifoldSpec,
    band: tuple[float, float],
    T: float,
    r: Optional[np.ndarray] = None,
) -> DomainOfInfluence:
    """
    M(W, T) = {x : d(x, W) < T} for a band W; on a warped product the distance
    to a band is the radial gap.

    Args:
        spec: Manifold.
        band: W = (r1, r2).
        T: Time (radius of the neighbourhood), T >= 0.
        r: Grid for the characteristic function (a fine grid over the extent by default).
    """
    a, b = band
    if not b > a or T < 0:
        raise SpecError(ERROR_BAND.format(lo=a, hi=b))
    lo, hi = manifold_bounds(spec)
    extent = (max(a - T, lo), min(b + T, hi))
    if r is None:
        r = np.linspace(extent[0], extent[1], 2001)
    r = np.asarray(r, dtype=float)
    inside = (r > a - T) & (r < b + T) if T > 0 else (r >= a) & (r <= b)
    inside &= (r >= lo) & (r <= hi)

    def density(x: float) -> float:
        return math.exp((spec.n - 1) * float(log_profile(spec.profile, x).log_rho))

    volume = spec.cross_section.vol * integrate.quad(density, *extent, limit=200, epsabs=0, epsrel=1e-12)[0]
    return DomainOfInfluence(band=(float(a), float(b)), T=float(T), extent=extent, r=r, inside=inside, volume=volume)


def volume_oracle(spec: ManifoldSpec, band: tuple[float, float], T: float) -> float:
    """vol(M) ∫ ρ^{n-1} dr over [r1 - T, r2 + T] cut to the manifold."""
    return domain_of_influence(spec, band, T, r=np.zeros(0)).volume


def ball_inclusion(
    spec: ManifoldSpec,
    ball: tuple[float, float],
    cover: Sequence[tuple[float, float]],
    tol: float = 1e-12,
) -> bool:
    """Whether M(p, l_p) ⊂ closure of the union of the M(x, l) in `cover`; balls are (center, radius)."""
    lo, hi = band_ball(spec, *ball)
    pieces = sorted(band_ball(spec, *c) for c in cover)
    reach = lo
    for a, b in pieces:
        if a > reach + tol:
            break
        reach = max(reach, b)
    return reach >= hi - tol
