"""
Crossing-ball test.

M(p, l_p) ⊂ closure(M(y, l_y) ∪ M(z, l_z)) holds exactly when every wave
u^f(T) with f supported in S_ε(p, l_p) is approximated by waves from sources
in S_ε(y, l_y) ∪ S_ε(z, l_z). The probing wave is the minimizer of I_T over
S_ε(p, l_p), which tends to the indicator of M(p, l_p); its defect against
the cover span is the part of M(p, l_p) the cover misses, so the residual is

    Vol(M(p) ∪ M(y) ∪ M(z)) - Vol(M(y) ∪ M(z)),

both volumes recovered from the kernel alone.
"""

import logging
from concurrent.futures import ThreadPoolExecutor
from typing import Optional, Sequence

from warpscatter.core.config import SolverConfig, get_config
from warpscatter.core.errors import ConditioningError, SpecError

from .constants import (
    CONSISTENCY_FACTOR,
    DEFAULT_EPSILON,
    ERROR_CONSISTENCY,
    ERROR_OUTSIDE_REGION,
    ERROR_RADIUS,
    INCLUSION_FALSE,
    INCLUSION_TRUE,
)
from .models import CrossingResult, InverseProblemData
from .sources import SourceBank, SourceFamily
from .volume import Minimization, band_volume, minimize_functional

logger = logging.getLogger(__name__)


def reference_volume(data: InverseProblemData, center: float, eps: float) -> float:
    """Vol B(x, ε), the unit in which residuals are measured."""
    return band_volume(data, (center - eps, center + eps))


def inclusion_residual(
    data: InverseProblemData,
    bank: SourceBank,
    probes: SourceFamily,
    cover: Sequence[SourceFamily],
    reference: float,
) -> tuple[float, Minimization, Minimization, float]:
    """
    Volume gain from adding `probes` to `cover`, divided by `reference`.

    Returns:
        Residual, the two minimizations (union, cover) and the self-consistency error.
    """
    vol_m = data.cross_section_vol
    cover_min = minimize_functional(bank, SourceFamily.join(list(cover)), vol_m, data.sigma)
    union_min = minimize_functional(bank, SourceFamily.join([probes, *cover]), vol_m, data.sigma)
    consistency = max(cover_min.consistency, union_min.consistency, bank.kernel.reciprocity_error)
    residual = max(union_min.volume - cover_min.volume, 0.0) / reference
    return residual, union_min, cover_min, consistency


def thresholds(consistency: float) -> tuple[float, float]:
    """
    Acceptance and rejection levels of the residual.

    Raises:
        ConditioningError: The self-consistency error closes the gap between them.
    """
    lo = max(INCLUSION_TRUE, CONSISTENCY_FACTOR * consistency)
    if lo >= INCLUSION_FALSE:
        raise ConditioningError(ERROR_CONSISTENCY.format(defect=consistency, lo=lo, hi=INCLUSION_FALSE))
    return lo, INCLUSION_FALSE


def decide(residual: float, consistency: float) -> tuple[Optional[bool], float, float]:
    lo, hi = thresholds(consistency)
    if residual <= lo:
        return True, lo, hi
    if residual >= hi:
        return False, lo, hi
    return None, lo, hi


def _check_ball(data: InverseProblemData, center: float, ell: float, eps: float) -> None:
    if not data.contains(center - eps, center + eps):
        raise SpecError(
            ERROR_OUTSIDE_REGION.format(what="Probe band", lo=center - eps, hi=center + eps, a=data.r[0], b=data.r[-1])
        )
    if not eps < ell <= data.T + 0.5 * data.dt:
        raise SpecError(ERROR_RADIUS.format(radius=ell, eps=eps, T=data.T))


def crossing_ball_test(
    data: InverseProblemData,
    p: float,
    y: float,
    z: Optional[float],
    ell_p: float,
    ell_y: float,
    ell_z: Optional[float],
    eps: float = DEFAULT_EPSILON,
    density: int = 1,
    bank: Optional[SourceBank] = None,
) -> CrossingResult:
    """
    Decide M(p, l_p) ⊂ closure(M(y, l_y) ∪ M(z, l_z)) from the data.

    Args:
        data: Inverse problem data.
        p, y, z: Centers in O; z = None tests the single ball M(y, l_y).
        ell_p, ell_y, ell_z: Radii in (ε, T].
        eps: Probe size ε; sources live within ε of the centers.
        density: Probe refinement (1, 2 or 4); the cover keeps density 1.
        bank: Source bank to share kernel applications between calls.

    Returns:
        CrossingResult whose `inclusion` is True, False or None (indeterminate).

    Raises:
        SpecError: A probe band leaves O or a radius is out of range.
        ConditioningError: A Gram matrix cannot be regularized.
    """
    bank = bank or SourceBank(data.kernel)
    balls = [(p, ell_p), (y, ell_y)] + ([] if z is None else [(z, ell_z)])
    for center, ell in balls:
        _check_ball(data, center, ell, eps)

    probes = bank.ball_family(p, ell_p, eps, density)
    cover = [bank.ball_family(c, ell, eps) for c, ell in balls[1:]]
    reference = reference_volume(data, p, eps)
    residual, union_min, cover_min, consistency = inclusion_residual(data, bank, probes, cover, reference)
    inclusion, lo, hi = decide(residual, consistency)
    logger.debug(
        "crossing p=%.4g l=%.4g vs (%.4g, %.4g) (%s, %s): residual %.3g -> %s",
        p, ell_p, y, ell_y, z, ell_z, residual, inclusion,
    )
    return CrossingResult(
        p=p,
        y=y,
        z=z,
        ell_p=ell_p,
        ell_y=ell_y,
        ell_z=ell_z,
        epsilon=eps,
        inclusion=inclusion,
        residual=residual,
        union_volume=union_min.volume,
        cover_volume=cover_min.volume,
        reference_volume=reference,
        threshold_true=lo,
        threshold_false=hi,
        self_consistency=consistency,
        probes=probes.count,
        basis=sum(f.count for f in cover),
    )


def crossing_ball_tests(
    data: InverseProblemData,
    queries: Sequence[tuple],
    eps: float = DEFAULT_EPSILON,
    config: Optional[SolverConfig] = None,
) -> list[CrossingResult]:
    """crossing_ball_test for each (p, y, z, l_p, l_y, l_z); queries share one source bank and run concurrently."""
    config = config or get_config()
    bank = SourceBank(data.kernel)

    def run(query: tuple) -> CrossingResult:
        return crossing_ball_test(data, *query, eps=eps, bank=bank)

    with ThreadPoolExecutor(max_workers=config.threads) as pool:
        return list(pool.map(run, queries))
