"""
Distances and cut-distance bounds from crossing-ball tests.

Let x = γ(s) on the normal geodesic from q, r = r̃ - s and p = γ(r̃). The ball
M(x, r + ε) sticks out of M(q, r̃) only near p, so

    M(x, r + ε) ⊂ closure(M(q, r̃) ∪ M(z, t))

first holds at t = d(p, z) + O(ε). With probes of size ε the detected t
carries a bias proportional to ε, removed by extrapolating in ε to zero.
The same scan over s + r with the single ball M(q, s + r) bounds the cut
distance of the geodesic.
"""

import logging
from typing import Callable, Optional, Sequence

import numpy as np

from warpscatter.core.errors import ConvergenceError, SpecError

from .constants import (
    BISECTION_STEPS,
    DEFAULT_EPSILON,
    ERROR_BEYOND_CUT,
    ERROR_NO_INCLUSION,
    ERROR_SEGMENT,
    SEGMENT_FACTOR,
)
from .crossing import _check_ball, decide, inclusion_residual, reference_volume
from .geodesic import local_geodesic, normal_sign
from .models import CutLocusReport, DistanceReport, InverseProblemData
from .sources import SourceBank, SourceFamily

logger = logging.getLogger(__name__)

Predicate = Callable[[float], Optional[bool]]


class _Scan:
    """First accepted value of a predicate over an increasing lattice, refined by bisection."""

    def __init__(self, predicate: Predicate, tol: float) -> None:
        self.predicate = predicate
        self.tol = tol
        self.rejected = -np.inf
        self.indeterminate = 0

    def test(self, value: float) -> bool:
        outcome = self.predicate(value)
        if outcome is None:
            self.indeterminate += 1
        elif not outcome:
            self.rejected = max(self.rejected, value)
        return bool(outcome)

    def run(self, values: Sequence[float]) -> Optional[float]:
        previous = None
        for v in values:
            if self.test(v):
                if previous is None:
                    return v
                lo, hi = previous, v
                while hi - lo > self.tol:
                    mid = 0.5 * (lo + hi)
                    if self.test(mid):
                        hi = mid
                    else:
                        lo = mid
                return hi
            previous = v
        return None


def _lattice(bank: SourceBank, eps: float, start: float, stop: float) -> np.ndarray:
    """Radii l for which the window (T - (l - ε), T) starts on the time lattice of size-ε balls."""
    half = 0.5 * eps
    h = bank.lattice_steps(half) * bank.kernel.dt
    first = eps + 2 * half
    values = first + h * np.arange(int(np.floor((stop - first) / h + 1e-9)) + 1)
    return values[values > start + 1e-12]


def _extrapolate(eps: Sequence[float], values: Sequence[float]) -> float:
    if len(eps) == 1:
        return float(values[0])
    slope, intercept = np.polyfit(np.asarray(eps), np.asarray(values), 1)
    return float(intercept)


def _segment(data: InverseProblemData, q: float, direction: float, eps: float) -> tuple[float, float]:
    s = SEGMENT_FACTOR * eps
    x, _ = local_geodesic(data, q, direction, s)
    return s, x


def _default_epsilons(epsilons: Optional[Sequence[float]]) -> tuple[float, ...]:
    if epsilons is None:
        return DEFAULT_EPSILON, 0.5 * DEFAULT_EPSILON
    eps = tuple(float(e) for e in epsilons)
    if not eps or min(eps) <= 0:
        raise SpecError(f"probe sizes must be positive, got {eps}")
    return eps


def cut_locus_bound(
    data: InverseProblemData,
    q: float,
    direction: float,
    R: float,
    epsilons: Optional[Sequence[float]] = None,
    density: int = 1,
    bank: Optional[SourceBank] = None,
) -> CutLocusReport:
    """
    Smallest s + r at which M(γ(s), r + ε) ⊂ closure M(q, s + r) is detected from data.

    Such an inclusion means the geodesic stops minimizing by s + r. Per ε the
    scan runs over the time lattice up to min(R, T) and is refined by
    bisection; the bound is extrapolated to ε → 0 when every ε detects,
    otherwise it is the probed range.

    Args:
        data: Inverse problem data.
        q: Starting orbit radius in O.
        direction: ψ = 0 (outward) or π (inward).
        R: Probed range of s + r.
        epsilons: Probe sizes (ε and ε/2 by default).
        density: Probe refinement; the per-ε bounds never decrease as it grows.
        bank: Source bank shared between calls.
    """
    normal_sign(direction)
    eps_all = _default_epsilons(epsilons)
    bank = bank or SourceBank(data.kernel)
    R_eff = min(float(R), data.T)
    bounds, detected = [], []
    for eps in eps_all:
        s, x = _segment(data, q, direction, eps)
        if not s < R_eff:
            raise SpecError(ERROR_SEGMENT.format(r_tilde=R_eff, s=s, T=data.T))
        _check_ball(data, q, R_eff, eps)
        _check_ball(data, x, R_eff - s + eps, eps)

        reference = reference_volume(data, x, eps)

        def predicate(L: float, eps=eps, s=s, x=x, reference=reference) -> Optional[bool]:
            probes = bank.ball_family(x, L - s + eps, eps, density)
            cover = [bank.ball_family(q, L, eps)]
            residual, _, _, consistency = inclusion_residual(data, bank, probes, cover, reference)
            return decide(residual, consistency)[0]

        scan = _Scan(predicate, BISECTION_STEPS * data.dt)
        found = scan.run(_lattice(bank, eps, s + 2 * bank.kernel.dt, R_eff))
        bounds.append(R_eff if found is None else found)
        detected.append(found is not None)
        logger.info("cut bound q=%.4g ψ=%.3g ε=%.3g: %s", q, direction, eps, found)

    bound = _extrapolate(eps_all, bounds) if all(detected) else R_eff
    return CutLocusReport(
        q=q,
        direction=direction,
        R=R_eff,
        epsilons=eps_all,
        bounds=tuple(bounds),
        detected=tuple(detected),
        density=density,
        bound=bound,
    )


def distance_recover(
    data: InverseProblemData,
    q: float,
    direction: float,
    r_tilde: float,
    z: float,
    epsilons: Optional[Sequence[float]] = None,
    cut_bound: Optional[float] = None,
    check_cut: bool = True,
    bank: Optional[SourceBank] = None,
) -> DistanceReport:
    """
    t* ≈ d(p, z) for p = γ_{q,ψ}(r̃), from crossing-ball tests alone.

    The measured kernel lives in the rotation-invariant ℓ = 0 sector, so every
    ball is a band of orbits: z names the orbit {r = z} and t* recovers the
    radial gap from p to that orbit, not the distance to a single point of it.

    For each ε the point x = γ(s), s = 1.5ε, is placed with the metric on O;
    t runs over the time lattice and the first accepted t is refined by
    bisection to one time step. The result is extrapolated to ε → 0.

    Args:
        data: Inverse problem data.
        q: Starting orbit radius in O.
        direction: ψ = 0 (outward) or π (inward).
        r_tilde: Length r̃ of the geodesic segment, at most T.
        z: Target orbit radius in O.
        epsilons: Probe sizes (ε and ε/2 by default).
        cut_bound: Known bound on the cut distance; computed from data when
            None and `check_cut` is set.
        bank: Source bank shared between calls.

    Raises:
        SpecError: r̃ is out of range or not below the cut-distance bound.
        ConvergenceError: No inclusion is detected up to t = T.
    """
    normal_sign(direction)
    eps_all = _default_epsilons(epsilons)
    bank = bank or SourceBank(data.kernel)
    if cut_bound is None and check_cut:
        cut = cut_locus_bound(data, q, direction, r_tilde, eps_all, bank=bank)
        cut_bound = cut.bound if all(cut.detected) else None
    if cut_bound is not None and r_tilde >= cut_bound:
        raise SpecError(ERROR_BEYOND_CUT.format(r_tilde=r_tilde, bound=cut_bound))

    t_stars, brackets, indeterminate = [], [], 0
    for eps in eps_all:
        s, x = _segment(data, q, direction, eps)
        if not s < r_tilde <= data.T + 0.5 * data.dt:
            raise SpecError(ERROR_SEGMENT.format(r_tilde=r_tilde, s=s, T=data.T))
        ell_p = r_tilde - s + eps
        for center, ell in ((x, ell_p), (q, r_tilde)):
            _check_ball(data, center, ell, eps)
        _check_ball(data, z, data.T, eps)
        probes = bank.ball_family(x, ell_p, eps)
        ball_q = bank.ball_family(q, r_tilde, eps)

        reference = reference_volume(data, x, eps)

        def predicate(t: float, eps=eps, probes=probes, ball_q=ball_q, reference=reference) -> Optional[bool]:
            cover: list[SourceFamily] = [ball_q, bank.ball_family(z, t, eps)]
            residual, _, _, consistency = inclusion_residual(data, bank, probes, cover, reference)
            return decide(residual, consistency)[0]

        scan = _Scan(predicate, BISECTION_STEPS * data.dt)
        found = scan.run(_lattice(bank, eps, eps, data.T + 0.5 * data.dt))
        if found is None:
            raise ConvergenceError(ERROR_NO_INCLUSION.format(t_max=data.T), epsilon=eps)
        lower = scan.rejected if np.isfinite(scan.rejected) and scan.rejected < found else 0.0
        t_stars.append(found)
        brackets.append((float(lower), float(found)))
        indeterminate += scan.indeterminate
        logger.info(
            "distance q=%.4g r̃=%.4g z=%.4g ε=%.3g: t* = %.5g (bracket %.4g)", q, r_tilde, z, eps, found, lower
        )

    distance = max(_extrapolate(eps_all, t_stars), 0.0)
    widths = [hi - lo for lo, hi in brackets]
    tolerance = max(max(widths), BISECTION_STEPS * data.dt) + (min(eps_all) if len(eps_all) == 1 else 0.0)
    if indeterminate:
        logger.warning("distance scan met %d indeterminate crossing tests; bracket widened", indeterminate)
    return DistanceReport(
        q=q,
        direction=direction,
        r_tilde=r_tilde,
        z=z,
        epsilons=eps_all,
        t_stars=tuple(t_stars),
        brackets=tuple(brackets),
        indeterminate=indeterminate,
        distance=distance,
        tolerance=tolerance,
        cut_bound=cut_bound,
    )
