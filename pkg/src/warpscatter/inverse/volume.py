"""
Volumes of domains of influence from data.

For f supported in W × (0, T) the functional

    I_T(f) = ‖u^f(T)‖² - 2⟨u^f(T), 1⟩

is bounded below by -Vol(M(W, T)), and the bound is approached because waves
from W × (0, T) are dense in L²(M(W, T)). Both terms are data: the norm
through the Blagovestchenskii identity, the pairing with 1 through the double
time integral of the source. The same minimization over sources in a union
of space-time sets gives the volume of the union of their domains of
influence.
"""

import logging
import math
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from typing import Optional, Sequence

import numpy as np
from scipy import linalg

from warpscatter.core.config import SolverConfig, get_config
from warpscatter.core.errors import ConditioningError, SpecError
from warpscatter.core.numerics import trapezoid_weights
from warpscatter.wave import source_moment

from .constants import (
    CONDITIONING_FLOOR,
    CONTINUATION_STEPS,
    CONTINUATION_TOL,
    ERROR_BAND,
    ERROR_CONDITIONING,
    ERROR_OUTSIDE_REGION,
    ERROR_VOLUME_T,
    VOLUME_BUMP_CELLS,
)
from .models import InverseProblemData, VolumeReport
from .sources import SourceBank, SourceFamily

logger = logging.getLogger(__name__)


def asymmetry(G: np.ndarray) -> float:
    """max |G - G^H| / max |G|."""
    scale = float(np.max(np.abs(G))) if G.size else 0.0
    return float(np.max(np.abs(G - G.conj().T)) / scale) if scale > 0 else 0.0


@dataclass(frozen=True)
class Minimization:
    """-min I_T over one source family along the σ-continuation."""

    volume: float
    sigmas: tuple[float, ...]
    volumes: tuple[float, ...]
    coefficients: np.ndarray
    consistency: float
    sources: int


def minimize_functional(bank: SourceBank, family: SourceFamily, vol_m: float, sigma: float) -> Minimization:
    """
    Minimize I_T over the span of `family` with Tikhonov term σ s ‖c‖², halving σ until the value settles.

    With G the data-side Gram matrix, β_a = ⟨u^{f_a}(T), 1⟩/√vol(M) and s
    its mean diagonal, the minimizer is c = √vol(M) (G + σs)^{-1} β and the
    estimate -I_T(c) grows as σ decreases.

    Raises:
        ConditioningError: The Gram matrix is not positive or σ is below its round-off floor.
    """
    G = np.real_if_close(bank.gram(family, family))
    consistency = asymmetry(G)
    G = 0.5 * (G + G.conj().T)
    beta = np.real_if_close(source_moment(bank.kernel, family.F))

    g, U = linalg.eigh(G)
    g = np.clip(g, 0.0, None)
    top = float(g[-1]) if g.size else 0.0
    scale = float(np.mean(np.diag(G).real)) if g.size else 0.0
    floor = CONDITIONING_FLOOR * np.finfo(float).eps * top
    if top <= 0 or sigma * scale < floor:
        raise ConditioningError(ERROR_CONDITIONING.format(count=family.count, sigma=sigma, top=top), suggested=sigma)
    b = U.conj().T @ beta

    sigmas, volumes, coefficients = [], [], None
    for k in range(CONTINUATION_STEPS + 1):
        s = sigma * 0.5**k
        reg = s * scale
        if reg < floor:
            logger.warning("σ-continuation stopped at σ = %.3g: round-off floor of the Gram matrix", sigmas[-1])
            break
        estimate = vol_m * float(np.sum(np.abs(b) ** 2 * (g + 2 * reg) / (g + reg) ** 2))
        coefficients = math.sqrt(vol_m) * (U @ (b / (g + reg)))
        sigmas.append(s)
        volumes.append(estimate)
        if k and abs(estimate - volumes[-2]) <= CONTINUATION_TOL * abs(estimate):
            break
    return Minimization(
        volume=volumes[-1],
        sigmas=tuple(sigmas),
        volumes=tuple(volumes),
        coefficients=np.asarray(coefficients),
        consistency=consistency,
        sources=family.count,
    )


def band_volume(data: InverseProblemData, band: tuple[float, float]) -> float:
    """Vol(W) = vol(M) ∫_W ρ^{n-1} dr from the metric on O."""
    lo, hi = band
    r = data.r
    inner = r[(r > lo) & (r < hi)]
    x = np.concatenate([[lo], inner, [hi]])
    g = np.interp(x, r, data.density())
    return data.cross_section_vol * float(np.dot(trapezoid_weights(x), g))


def _check_band(data: InverseProblemData, band: tuple[float, float]) -> None:
    lo, hi = band
    if not hi > lo:
        raise SpecError(ERROR_BAND.format(lo=lo, hi=hi))
    if not data.contains(lo, hi):
        raise SpecError(ERROR_OUTSIDE_REGION.format(what="Band", lo=lo, hi=hi, a=data.r[0], b=data.r[-1]))


def volume_recover(
    data: InverseProblemData,
    band: tuple[float, float],
    T: float,
    sigma: Optional[float] = None,
    exact: Optional[float] = None,
) -> VolumeReport:
    """
    Recover Vol(M(W, T)) for a band W ⊂ O by minimizing I_T over a source basis.

    The basis is a tiling of W × (0, T) by bumps; σ is halved until the
    estimate settles or reaches the round-off floor.

    Args:
        data: Inverse problem data.
        band: W = (r1, r2) inside O.
        T: Time, at most the data horizon; rounded to a whole number of steps.
        sigma: Initial Tikhonov parameter (data.sigma by default).
        exact: Reference volume to report the relative error against.

    Raises:
        SpecError: W leaves O or T is outside [0, data.T].
        ConditioningError: The Gram matrix is not positive or σ is below its round-off floor.
    """
    _check_band(data, band)
    if not 0 <= T <= data.T + 0.5 * data.dt:
        raise SpecError(ERROR_VOLUME_T.format(T=T, T_max=data.T))
    sigma = data.sigma if sigma is None else sigma

    if int(round(T / data.dt)) == 0:
        volume = band_volume(data, band)
        return _report(band, 0.0, volume, (), (volume,), np.zeros(0), 0, 0.0, exact)

    kernel = data.kernel.restricted(T)
    bank = SourceBank(kernel)
    family = bank.tiled_family(band, VOLUME_BUMP_CELLS * data.dr, VOLUME_BUMP_CELLS * data.dt)
    result = minimize_functional(bank, family, data.cross_section_vol, sigma)

    logger.info(
        "Vol(M([%g, %g], %.4g)) = %.6g from %d sources (σ %.3g -> %.3g, asymmetry %.2e)",
        *band, kernel.T, result.volume, family.count, result.sigmas[0], result.sigmas[-1], result.consistency,
    )
    return _report(
        band, kernel.T, result.volume, result.sigmas, result.volumes, result.coefficients,
        family.count, result.consistency, exact,
    )


def _report(band, T, volume, sigmas, volumes, coefficients, sources, consistency, exact) -> VolumeReport:
    relative = None if exact is None else abs(volume - exact) / abs(exact)
    return VolumeReport(
        band=(float(band[0]), float(band[1])),
        T=float(T),
        volume=float(volume),
        sigmas=sigmas,
        volumes=volumes,
        coefficients=np.asarray(coefficients),
        sources=sources,
        self_consistency=consistency,
        exact=exact,
        relative_error=relative,
    )


def recover_volumes(
    data: InverseProblemData,
    queries: Sequence[tuple[tuple[float, float], float]],
    config: Optional[SolverConfig] = None,
) -> list[VolumeReport]:
    """volume_recover for each (W, T); queries share the read-only data and run concurrently."""
    config = config or get_config()
    with ThreadPoolExecutor(max_workers=config.threads) as pool:
        return list(pool.map(lambda q: volume_recover(data, q[0], q[1]), queries))
