"""
Bridge from the time domain to the stationary resolvent.

A source F = b(t) a(r) drives u with damped transform
û(z) = ∫ e^{izt} u dt = b̂(z) R(z²) a for z = k + iε, so û/b̂ tends to
R(k² + i0) a as ε → 0. Harmonic forcing e^{-ikt} a leaves, after the
transients, the profile e^{-ikt} R(k² + i0) a.
"""

import logging
import math
from typing import Optional, Sequence

import numpy as np

from warpscatter.core.config import SolverConfig, get_config
from warpscatter.core.errors import ConvergenceError, SpecError
from warpscatter.core.numerics import trapezoid_weights
from warpscatter.manifold import ManifoldSpec
from warpscatter.modes import eigen_list
from warpscatter.scattering import resolvent_apply

from .constants import (
    ERROR_AMPLITUDE_WINDOW,
    ERROR_EPSILONS,
    ERROR_HISTORY,
    ERROR_SEPARABLE,
    ERROR_TRUNCATION,
    TRUNCATION_TOL,
)
from .models import LimitingAmplitudeReport, StationaryReport, TimeSource, WaveField

logger = logging.getLogger(__name__)


def damped_transform(values: np.ndarray, t: np.ndarray, z: complex) -> np.ndarray:
    """∫_0^T e^{izt} v(t) dt by the trapezoid rule along axis 0."""
    w = trapezoid_weights(t) * np.exp(1j * z * t)
    return np.tensordot(w, values, axes=([0], [0]))


def _full_history(wf: WaveField) -> None:
    if wf.stride != 1:
        raise SpecError(ERROR_HISTORY.format(stride=wf.stride))


def _band(wf: WaveField, source: TimeSource) -> np.ndarray:
    a, b = source.r_support
    inside = (wf.r > a) & (wf.r < b)
    return inside if np.any(inside) else np.ones(wf.r.size, dtype=bool)


def _relative(values: np.ndarray, reference: np.ndarray, mask: np.ndarray) -> float:
    scale = float(np.max(np.abs(reference[mask]))) or 1.0
    return float(np.max(np.abs(values[mask] - reference[mask])) / scale)


def resolvent_reference(
    spec: ManifoldSpec,
    wf: WaveField,
    source: TimeSource,
    k: float,
    config: Optional[SolverConfig] = None,
) -> np.ndarray:
    """R(k² + i0) applied to the source's radial profile, on the stored nodes of `wf`."""
    r = wf.r
    if spec.topology == "half_line" and r[0] > 0:
        head = np.linspace(0.0, r[0], int(math.ceil(r[0] / wf.grid.dr)), endpoint=False)
        r_res = np.concatenate([head, r])
    else:
        r_res = r
    spectrum = eigen_list(spec.cross_section, wf.eigenvalue)
    row = next(j for j, c in enumerate(spectrum.channels) if c.index == wf.ell)
    f = np.zeros((len(spectrum.channels), r_res.size))
    f[row] = source.spatial(r_res)
    field = resolvent_apply(spec, k * k, "+", f, r_res, wf.eigenvalue, config=config)
    return field.values[row, r_res.size - r.size :]


def stationary_from_time(
    spec: ManifoldSpec,
    wf: WaveField,
    source: TimeSource,
    k: float,
    epsilons: Sequence[float] = (0.2, 0.1, 0.05),
    compare: bool = True,
    config: Optional[SolverConfig] = None,
) -> StationaryReport:
    """
    û(k + iε)/b̂(k + iε) on the stored nodes for each ε, extrapolated to ε = 0.

    Args:
        spec: Manifold (read only for the resolvent comparison).
        wf: Full-history response of one mode to `source`.
        source: The bump source b(t) a(r) that produced `wf`.
        k: Real frequency; the comparison is at λ = k².
        epsilons: Positive damping values.
        compare: Also evaluate R(k² + i0) a with the stationary solver.
        config: Solver configuration.

    Raises:
        SpecError: The source is not a bump, the history is thinned or ε is invalid.
        ConvergenceError: e^{-ε_min T_final} exceeds the truncation tolerance.
    """
    if source.kind != "bump":
        raise SpecError(ERROR_SEPARABLE.format(kind=source.kind))
    _full_history(wf)
    eps = tuple(float(e) for e in epsilons)
    if not eps or min(eps) <= 0 or len(set(eps)) != len(eps):
        raise SpecError(ERROR_EPSILONS.format(eps=eps))
    truncation = math.exp(-min(eps) * wf.T_final)
    if truncation > TRUNCATION_TOL:
        need = math.log(1.0 / TRUNCATION_TOL) / min(eps)
        raise ConvergenceError(
            ERROR_TRUNCATION.format(T=wf.T_final, tail=truncation, tol=TRUNCATION_TOL),
            suggested=need,
        )

    b = source.temporal(wf.t)
    values = np.stack(
        [damped_transform(wf.u, wf.t, k + 1j * e) / damped_transform(b, wf.t, k + 1j * e) for e in eps]
    )
    degree = min(len(eps) - 1, 2)
    vander = np.vander(np.asarray(eps), degree + 1)
    coeffs, *_ = np.linalg.lstsq(vander.astype(complex), values, rcond=None)
    extrapolated = coeffs[-1]

    reference, errors, extrapolated_error = None, (), None
    if compare:
        reference = resolvent_reference(spec, wf, source, k, config or get_config())
        mask = _band(wf, source)
        errors = tuple(_relative(v, reference, mask) for v in values)
        extrapolated_error = _relative(extrapolated, reference, mask)
        logger.info(
            "stationary bridge k=%.4g: errors %s, extrapolated %.2e",
            k, ", ".join(f"{e:.2e}" for e in errors), extrapolated_error,
        )
    return StationaryReport(
        k=float(k),
        epsilons=eps,
        r=wf.r,
        values=values,
        extrapolated=extrapolated,
        truncation=truncation,
        reference=reference,
        errors=errors,
        extrapolated_error=extrapolated_error,
    )


def limiting_amplitude(
    spec: ManifoldSpec,
    wf: WaveField,
    source: TimeSource,
    window: tuple[float, float],
    config: Optional[SolverConfig] = None,
) -> LimitingAmplitudeReport:
    """
    Windowed average of e^{iωt} u(t) against amplitude · R(ω² + i0) a.

    Raises:
        SpecError: The source is not harmonic or the window lies outside the run.
    """
    if source.kind != "harmonic":
        raise SpecError(ERROR_SEPARABLE.format(kind=source.kind))
    _full_history(wf)
    lo, hi = window
    if not (0 <= lo < hi <= wf.T_final + 1e-12):
        raise SpecError(ERROR_AMPLITUDE_WINDOW.format(lo=lo, hi=hi, T=wf.T_final))
    inside = (wf.t >= lo - 1e-12) & (wf.t <= hi + 1e-12)
    t = wf.t[inside]
    w = trapezoid_weights(t) / (t[-1] - t[0])
    profile = np.tensordot(w * np.exp(1j * source.frequency * t), wf.u[inside], axes=([0], [0]))
    reference = source.amplitude * resolvent_reference(spec, wf, source, source.frequency, config)
    error = _relative(profile, reference, _band(wf, source))
    logger.info("limiting amplitude ω=%.4g on [%.4g, %.4g]: relative error %.2e", source.frequency, lo, hi, error)
    return LimitingAmplitudeReport(
        frequency=source.frequency,
        window=(float(lo), float(hi)),
        r=wf.r,
        profile=profile,
        reference=reference,
        relative_error=error,
    )
