"""Tail fits: power-decay regression, end classification, spectral thresholds."""

import logging
from typing import Optional

import numpy as np

from warpscatter.core.config import SolverConfig, get_config
from warpscatter.core.errors import InconsistentSpecError, SpecError

from .constants import (
    ERROR_FIT_SAMPLES,
    ERROR_INCONSISTENT,
    FASTER_MIN_SLOPE,
    FASTER_RATIO,
    TAIL_R_MAX,
    TAIL_R_MIN,
    TAIL_SAMPLES,
    TINY,
)
from .models import DecayFit, EndConstants, EndFit, ManifoldSpec, RadialProfile
from .profiles import asymptotic_constants, log_profile

logger = logging.getLogger(__name__)


def symbol_decay_fit(
    r,
    f,
    expected: Optional[float] = None,
    min_points: int = 20,
) -> DecayFit:
    """
    Fit log|f| = log C + kappa log r over the given samples.

    Args:
        r: Increasing positive radii, spanning at least one decade.
        f: Samples of the (real or complex) symbol at r.
        expected: Expected slope, echoed in the result.
        min_points: Minimum sample count.

    Returns:
        DecayFit with slope, RMS residual and the faster-than-power flag.

    Raises:
        SpecError: Too few samples or too short a span.
    """
    r = np.asarray(r, dtype=float)
    mag = np.abs(np.asarray(f))
    ratio = float(r[-1] / r[0]) if r.size else 0.0
    if r.size < min_points or ratio < 10.0 * (1 - 1e-9):
        raise SpecError(ERROR_FIT_SAMPLES.format(need=min_points, got=r.size, ratio=ratio))

    low = ~(mag > TINY)
    floored = int(np.count_nonzero(low))
    if floored:
        logger.warning("symbol_decay_fit: %d of %d samples floored at %g", floored, r.size, TINY)
    if floored == r.size:
        return DecayFit(
            kappa=-np.inf, residual=0.0, faster_than_power=True,
            expected=expected, floored=floored,
        )
    mag = np.where(low, TINY, mag)

    x, y = np.log(r), np.log(mag)
    coef, res, *_ = np.polyfit(x, y, 1, full=True)
    kappa, log_c = float(coef[0]), float(coef[1])
    residual = float(np.sqrt(res[0] / r.size)) if res.size else 0.0

    half = r.size // 2
    k1 = float(np.polyfit(x[:half], y[:half], 1)[0])
    k2 = float(np.polyfit(x[half:], y[half:], 1)[0])
    faster = bool(floored > 0 or (k2 < FASTER_MIN_SLOPE and k1 < 0 and k2 / k1 > FASTER_RATIO))

    logger.debug("decay fit: kappa=%.4g residual=%.3g halves=(%.4g, %.4g)", kappa, residual, k1, k2)
    return DecayFit(
        kappa=kappa, residual=residual, faster_than_power=faster,
        expected=expected, floored=floored, prefactor=float(np.exp(log_c)),
    )


def tail_samples(profile: RadialProfile, points: int = TAIL_SAMPLES) -> np.ndarray:
    """Geometric sample radii covering the r → +∞ tail available for a profile."""
    lo, hi = profile.domain
    r_hi = hi if np.isfinite(hi) else TAIL_R_MAX
    r_lo = max(TAIL_R_MIN, lo + TAIL_R_MIN) if np.isfinite(lo) else TAIL_R_MIN
    return np.geomspace(r_lo, r_hi, points)


def _window(r: np.ndarray, config: SolverConfig) -> slice:
    """Last fit_window share of the log range, at least a decade and fit_min_points samples."""
    logs = np.log10(r)
    span = max(config.fit_window * (logs[-1] - logs[0]), 1.0)
    start = int(np.searchsorted(logs, logs[-1] - span, side="right")) - 1
    start = max(min(start, r.size - config.fit_min_points), 0)
    return slice(start, None)


def _mismatch(declared: float, fitted: float, tol: float) -> bool:
    if np.isinf(declared) or np.isinf(fitted):
        return bool(np.sign(declared) != np.sign(fitted)) or np.isinf(declared) != np.isinf(fitted)
    return abs(declared - fitted) > tol * max(1.0, abs(declared))


def fit_tail(
    profile: RadialProfile,
    n: int,
    end_id: int = 0,
    declared: Optional[EndConstants] = None,
    declared_class: Optional[str] = None,
    config: Optional[SolverConfig] = None,
) -> EndFit:
    """
    Fit the r → +∞ tail of one oriented profile.

    Raises:
        InconsistentSpecError: A declared constant disagrees with the tail fit.
    """
    config = config or get_config()
    declared = declared or EndConstants()
    r = tail_samples(profile)
    lp = log_profile(profile, r)
    w = _window(r, config)
    rw, log_rho, p, dp = r[w], lp.log_rho[w], lp.p[w], lp.dp[w]

    c0_fit = float(np.mean(p))
    beta_fit = float(np.polyfit(np.log(rw), log_rho, 1)[0])
    analytic = asymptotic_constants(profile)

    c0_ref = declared.c0 if declared.c0 is not None else (analytic.c0 if analytic else None)
    if c0_ref is not None:
        decay = symbol_decay_fit(rw, p - c0_ref, min_points=config.fit_min_points)
        alpha_fit = np.inf if decay.faster_than_power else -decay.kappa
    else:
        decay = symbol_decay_fit(rw, dp, min_points=config.fit_min_points)
        alpha_fit = np.inf if decay.faster_than_power else -decay.kappa - 1.0

    problems = []
    tol = config.fit_tolerance
    if declared.c0 is not None and _mismatch(declared.c0, c0_fit, tol):
        problems.append(("c0", declared.c0, c0_fit))
    if declared.alpha0 is not None and np.isfinite(alpha_fit) and _mismatch(declared.alpha0, alpha_fit, tol):
        problems.append(("alpha0", declared.alpha0, alpha_fit))

    exponential = abs(c0_fit) > tol
    beta0 = float(np.inf * np.sign(c0_fit)) if exponential else beta_fit
    if declared.beta0 is not None and not exponential and _mismatch(declared.beta0, beta_fit, tol):
        problems.append(("beta0", declared.beta0, beta_fit))
    classification = "regular" if beta0 > 0 else "cusp"
    if declared_class is not None and declared_class != classification:
        problems.append(("classification", declared_class, classification))
    if problems:
        name, dec, fit = problems[0]
        raise InconsistentSpecError(
            ERROR_INCONSISTENT.format(end=end_id, name=name, declared=dec, fitted=fit),
            end=end_id, mismatches=[{"name": a, "declared": b, "fitted": c} for a, b, c in problems],
        )

    c0 = declared.c0 if declared.c0 is not None else (analytic.c0 if analytic else c0_fit)
    alpha0 = declared.alpha0 if declared.alpha0 is not None else alpha_fit
    if declared.beta0 is not None:
        beta0 = declared.beta0
    elif analytic is not None and not (np.isinf(analytic.beta0) and not exponential):
        beta0 = analytic.beta0
    bound = float(np.max(log_rho - (beta_fit if not exponential else 0.0) * np.log1p(rw)))
    fit = EndFit(
        end_id=end_id,
        classification=classification,
        c0=float(c0),
        alpha0=float(alpha0),
        beta0=float(beta0),
        gamma0=declared.gamma0,
        E0=((n - 1) * c0 / 2.0) ** 2,
        bound_constant=float(np.exp(min(bound, 700.0))),
        decay=decay,
    )
    logger.info(
        "end %d: %s c0=%.6g alpha0=%.4g beta0=%.4g E0=%.6g",
        end_id, classification, fit.c0, fit.alpha0, fit.beta0, fit.E0,
    )
    return fit


def classify_ends(spec: ManifoldSpec, config: Optional[SolverConfig] = None) -> list[EndFit]:
    """
    Classify every end of `spec` and fit its asymptotic constants.

    Declared constants take precedence over fitted ones in the result, but
    each declared value must agree with the fit within config.fit_tolerance.

    Raises:
        InconsistentSpecError: A declared constant disagrees with the tail fit.
    """
    config = config or get_config()
    return [
        fit_tail(
            spec.end_profile(e.end_id), spec.n, e.end_id, e.constants, e.classification, config
        )
        for e in sorted(spec.ends, key=lambda e: e.end_id)
    ]


def end_threshold(spec: ManifoldSpec, end_id: int) -> float:
    """E0 of one end without fitting when a closed form or declaration exists."""
    declared = spec.end(end_id).constants.c0
    if declared is None:
        analytic = asymptotic_constants(spec.end_profile(end_id))
        if analytic is None:
            return next(f.E0 for f in classify_ends(spec) if f.end_id == end_id)
        declared = analytic.c0
    return ((spec.n - 1) * declared / 2.0) ** 2


def essential_spectrum_bottom(spec: ManifoldSpec) -> float:
    """Bottom of the essential spectrum: min over ends of E0."""
    return min(end_threshold(spec, e.end_id) for e in spec.ends)
