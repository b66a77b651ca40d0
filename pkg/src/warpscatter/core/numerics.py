"""Grid, quadrature and differentiation helpers used across the solvers."""

import logging
from typing import Optional

import numpy as np
from scipy.integrate import cumulative_simpson, cumulative_trapezoid

logger = logging.getLogger(__name__)


def smoothstep(x):
    """C² cutoff: 0 for x <= 1, 1 for x >= 2, quintic in between."""
    y = np.clip(np.asarray(x, dtype=float) - 1.0, 0.0, 1.0)
    return y * y * y * (10.0 - 15.0 * y + 6.0 * y * y)


def log_grid(
    r_lo: float,
    r_hi: float,
    points_per_decade: int,
    anchor: Optional[float] = None,
) -> np.ndarray:
    """
    Geometric grid covering [r_lo, r_hi], uniform in log r.

    When `anchor` is given it is an exact node; the grid may then overshoot the
    interval ends by less than one step.
    """
    if r_lo <= 0 or r_hi <= r_lo:
        raise ValueError(f"log_grid needs 0 < r_lo < r_hi, got {r_lo}, {r_hi}")
    h = np.log(10.0) / points_per_decade
    if anchor is None:
        n = max(int(np.ceil(np.log(r_hi / r_lo) / h)), 4)
        return np.exp(np.linspace(np.log(r_lo), np.log(r_hi), n + 1))
    j_lo = int(np.floor(np.log(r_lo / anchor) / h))
    j_hi = int(np.ceil(np.log(r_hi / anchor) / h))
    return anchor * np.exp(h * np.arange(j_lo, j_hi + 1))


def fd4(f: np.ndarray, h: float, axis: int = 0) -> np.ndarray:
    """Fourth-order finite-difference derivative on a uniform grid (needs >= 5 points)."""
    f = np.moveaxis(np.asarray(f), axis, 0)
    if f.shape[0] < 5:
        raise ValueError("fd4 needs at least 5 samples along the axis")
    d = np.empty_like(f)
    d[2:-2] = (f[:-4] - 8.0 * f[1:-3] + 8.0 * f[3:-1] - f[4:]) / (12.0 * h)
    d[0] = (-25.0 * f[0] + 48.0 * f[1] - 36.0 * f[2] + 16.0 * f[3] - 3.0 * f[4]) / (12.0 * h)
    d[1] = (-3.0 * f[0] - 10.0 * f[1] + 18.0 * f[2] - 6.0 * f[3] + f[4]) / (12.0 * h)
    d[-1] = (25.0 * f[-1] - 48.0 * f[-2] + 36.0 * f[-3] - 16.0 * f[-4] + 3.0 * f[-5]) / (
        12.0 * h
    )
    d[-2] = (3.0 * f[-1] + 10.0 * f[-2] - 18.0 * f[-3] + 6.0 * f[-4] - f[-5]) / (12.0 * h)
    return np.moveaxis(d, 0, axis)


def log_grid_derivative(f: np.ndarray, r: np.ndarray) -> np.ndarray:
    """d/dr of samples on a geometric grid, via fd4 in x = log r."""
    hx = float(np.log(r[1] / r[0]))
    return fd4(f, hx) / r


def trapezoid_weights(x: np.ndarray) -> np.ndarray:
    """Composite trapezoid weights for (possibly nonuniform) nodes."""
    dx = np.diff(x)
    w = np.zeros_like(x, dtype=float)
    w[:-1] += 0.5 * dx
    w[1:] += 0.5 * dx
    return w


def complex_cumulative_simpson(y: np.ndarray, x: np.ndarray, axis: int = -1) -> np.ndarray:
    """cumulative_simpson (initial 0) that keeps the imaginary part of complex samples."""
    y = np.asarray(y)
    if not np.iscomplexobj(y):
        return cumulative_simpson(y, x=x, axis=axis, initial=0.0)
    re = cumulative_simpson(y.real, x=x, axis=axis, initial=0.0)
    im = cumulative_simpson(y.imag, x=x, axis=axis, initial=0.0)
    return re + 1j * im


def cumulative_to_end(y: np.ndarray, x: np.ndarray) -> np.ndarray:
    """I[..., i] = trapezoid integral of y over [x_i, x_end] along the last axis."""
    c = cumulative_trapezoid(y, x, axis=-1, initial=0)
    return c[..., -1:] - c


def tail_remainder(r: np.ndarray, f: np.ndarray, decay: Optional[float] = None) -> complex:
    """
    Estimate of ∫_{r[-1]}^∞ f from the last samples.

    A known power decay `decay` (f ~ r^{-decay}, decay > 1) is used when given;
    otherwise the local logarithmic slope decides between a power tail and an
    exponential one. Returns 0 when the samples do not decay.
    """
    r_end = float(r[-1])
    f_end = f[-1]
    if f_end == 0:
        return 0.0
    if decay is not None:
        if decay <= 1.0:
            logger.warning("tail_remainder: decay %.3g <= 1, remainder dropped", decay)
            return 0.0
        return f_end * r_end / (decay - 1.0)
    mag = np.abs(f[-8:])
    if np.any(mag == 0):
        return 0.0
    slope_log = np.polyfit(np.log(r[-8:]), np.log(mag), 1)[0]
    if slope_log < -1.05 and slope_log > -60.0:
        return f_end * r_end / (-slope_log - 1.0)
    rate = -np.polyfit(r[-8:], np.log(mag), 1)[0]
    if rate > 0 and slope_log <= -60.0:
        return f_end / rate
    return 0.0


def branch_sqrt(w, k: complex):
    """Square root of w on the branch continuous with k (Re for real k, Im >= 0 for k = iκ)."""
    s = np.sqrt(np.asarray(w, dtype=complex))
    k = complex(k)
    flip = (s * np.conj(k)).real < 0
    return np.where(flip, -s, s)


def log_tail_integral(s: np.ndarray, h: np.ndarray, end_slope: Optional[float] = None):
    """
    log ∫_{s_i}^{∞} e^{h(s)} ds on nodes s, for rapidly decaying e^h.

    Each interval uses the exponentially fitted trapezoid (h linear on the
    interval); the part beyond s[-1] uses the end slope. Results are combined in
    log space so super-exponential decay does not underflow.
    """
    ds = np.diff(s)
    dh = np.diff(h)
    small = np.abs(dh) < 1e-8
    safe = np.where(small, 1.0, dh)
    # log of ds * (e^{h_{i+1}} - e^{h_i}) / dh, factored around h_i
    with np.errstate(divide="ignore", invalid="ignore"):
        log_piece = np.where(
            small,
            h[:-1] + np.log(ds) + 0.5 * dh,
            h[:-1] + np.log(ds) + np.log(np.expm1(safe) / safe),
        )
    if end_slope is None:
        end_slope = dh[-1] / ds[-1]
    if end_slope < 0:
        log_end = h[-1] - np.log(-end_slope)
    else:
        log_end = -np.inf
    out = np.empty_like(h)
    out[-1] = log_end
    acc = log_end
    for i in range(len(s) - 2, -1, -1):
        acc = np.logaddexp(acc, log_piece[i])
        out[i] = acc
    return out


def bump(x):
    """C^∞ bump exp(1 - 1/(1 - x²)) on |x| < 1, zero elsewhere; peak value 1 at 0."""
    x = np.asarray(x, dtype=float)
    out = np.zeros_like(x)
    inside = np.abs(x) < 1.0
    out[inside] = np.exp(1.0 - 1.0 / (1.0 - x[inside] ** 2))
    return out
