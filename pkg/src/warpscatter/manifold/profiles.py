"""Evaluation of warp profiles.

Solvers work with the logarithmic form (log ρ, p = ρ'/ρ, p'), which stays
finite where ρ itself over- or underflows; `eval_profile` converts back.
"""

import logging
from typing import NamedTuple, Optional

import numpy as np

from warpscatter.core.errors import DomainError

from .constants import ERROR_OUT_OF_DOMAIN
from .models import RadialProfile

logger = logging.getLogger(__name__)

_LOG2 = np.log(2.0)


class LogProfile(NamedTuple):
    log_rho: np.ndarray
    p: np.ndarray
    dp: np.ndarray


class AsymptoticConstants(NamedTuple):
    c0: float
    alpha0: float
    beta0: float


def _check_domain(profile: RadialProfile, r: np.ndarray) -> None:
    lo, hi = profile.domain
    closed = profile.kind == "tabulated"
    slack = 1e-12 * max(1.0, abs(lo), abs(hi) if np.isfinite(hi) else 1.0)
    if closed:
        bad = (r < lo - slack) | (r > hi + slack)
    else:
        bad = (r <= lo) | (r >= hi)
    if np.any(bad):
        raise DomainError(
            ERROR_OUT_OF_DOMAIN.format(
                r=float(r[bad].flat[0]), kind=profile.kind, domain=f"[{lo}, {hi}]"
            ),
            r=float(r[bad].flat[0]),
        )


def _log_cosh(y: np.ndarray) -> np.ndarray:
    a = np.abs(y)
    return a + np.log1p(np.exp(-2.0 * a)) - _LOG2


def _unoriented(profile: RadialProfile, x: np.ndarray) -> LogProfile:
    log_scale = np.log(profile.scale)
    kind = profile.kind
    if kind == "exponential":
        log_rho = log_scale + profile.c0 * x
        p = np.full_like(x, profile.c0)
        dp = np.zeros_like(x)
        if profile.corr != 0:
            s = x + profile.shift
            g = profile.corr * s ** (-profile.gamma)
            if np.any(1.0 + g <= 0):
                raise DomainError("exponential profile: 1 + corr s^-gamma must stay positive")
            g1 = -profile.gamma * g / s
            g2 = profile.gamma * (profile.gamma + 1.0) * g / (s * s)
            q = g1 / (1.0 + g)
            log_rho = log_rho + np.log1p(g)
            p = p + q
            dp = g2 / (1.0 + g) - q * q
        return LogProfile(log_rho, p, dp)
    if kind == "subexponential":
        s = x + profile.shift
        a = profile.alpha
        return LogProfile(
            log_scale + profile.c1 * s**a,
            profile.c1 * a * s ** (a - 1.0),
            profile.c1 * a * (a - 1.0) * s ** (a - 2.0),
        )
    if kind == "polynomial":
        s = x + profile.shift
        return LogProfile(log_scale + profile.beta * np.log(s), profile.beta / s, -profile.beta / (s * s))
    if kind == "cosh":
        y = profile.c0 * x
        th = np.tanh(y)
        return LogProfile(log_scale + _log_cosh(y), profile.c0 * th, profile.c0**2 * (1.0 - th * th))
    if kind == "bracket":
        q = 1.0 + x * x
        return LogProfile(
            log_scale + 0.5 * profile.beta * np.log(q),
            profile.beta * x / q,
            profile.beta * (1.0 - x * x) / (q * q),
        )
    spline = profile._spline
    return LogProfile(spline(x), spline(x, 1), spline(x, 2))


def log_profile(profile: RadialProfile, r) -> LogProfile:
    """
    Logarithmic derivatives of ρ at r.

    Args:
        profile: Warp profile (its orientation is applied).
        r: Scalar or array of radii inside the profile domain.

    Returns:
        LogProfile(log ρ, ρ'/ρ, (ρ'/ρ)') as float arrays shaped like r.

    Raises:
        DomainError: If any r lies outside the profile domain.
    """
    r = np.asarray(r, dtype=float)
    _check_domain(profile, r)
    o = profile.orientation
    x = o * r
    out = _unoriented(profile, np.atleast_1d(x))
    shape = r.shape
    return LogProfile(
        np.reshape(out.log_rho, shape),
        np.reshape(o * out.p, shape),
        np.reshape(out.dp, shape),
    )


def eval_profile(profile: RadialProfile, r):
    """
    Evaluate (ρ, ρ', ρ'') at r.

    Raises:
        DomainError: If r lies outside the profile domain.
    """
    lp = log_profile(profile, r)
    rho = np.exp(lp.log_rho)
    d1 = rho * lp.p
    d2 = rho * (lp.dp + lp.p * lp.p)
    if np.ndim(r) == 0:
        return float(rho), float(d1), float(d2)
    return rho, d1, d2


def asymptotic_constants(profile: RadialProfile) -> Optional[AsymptoticConstants]:
    """
    Closed-form tail constants of the r → +∞ end of an analytic profile.

    Returns None for tabulated profiles; those are fitted only. Exponential
    growth or decay reports beta0 = ±inf.
    """
    kind, o = profile.kind, profile.orientation
    inf = float("inf")
    if kind == "exponential":
        c0 = o * profile.c0
        alpha0 = profile.gamma + 1.0 if profile.corr != 0 else inf
        beta0 = inf * np.sign(c0) if c0 != 0 else 0.0
        return AsymptoticConstants(c0, alpha0, beta0)
    if kind == "subexponential":
        return AsymptoticConstants(0.0, 1.0 - profile.alpha, inf * np.sign(profile.c1))
    if kind == "polynomial":
        return AsymptoticConstants(0.0, 1.0, profile.beta)
    if kind == "cosh":
        c0 = abs(profile.c0)
        return AsymptoticConstants(c0, inf, inf if c0 > 0 else 0.0)
    if kind == "bracket":
        return AsymptoticConstants(0.0, 1.0, profile.beta)
    return None


def central_difference_check(profile: RadialProfile, r: float, h: float = 1e-4) -> float:
    """Largest relative mismatch between (ρ', ρ'') and central differences of ρ."""
    rho_m, _, _ = eval_profile(profile, r - h)
    rho_0, d1, d2 = eval_profile(profile, r)
    rho_p, _, _ = eval_profile(profile, r + h)
    fd1 = (rho_p - rho_m) / (2 * h)
    fd2 = (rho_p - 2 * rho_0 + rho_m) / (h * h)
    scale = max(abs(rho_0), abs(d1), abs(d2), 1e-300)
    return max(abs(fd1 - d1), abs(fd2 - d2)) / scale
