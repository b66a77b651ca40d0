"""Pull the metric back through (r, x) ↦ (t, z) and read off h̄ in dr² + w(r)² h̄."""

import logging
from typing import Optional

import numpy as np

from warpscatter.core.errors import ChartError, ConvergenceError
from warpscatter.manifold.fitting import symbol_decay_fit

from .constants import DECAY_TOLERANCE, ERROR_CHART, ERROR_GAUGE, FIT_MIN_POINTS, GAUGE_TOL, MIN_RCOND
from .field import metric_field
from .models import GeneralMetric, HamiltonState, TransformedMetric
from .verify import grid_fields, x_derivatives

logger = logging.getLogger(__name__)


def jacobian(hs: HamiltonState, fields: Optional[dict[str, np.ndarray]] = None) -> np.ndarray:
    """∂(t, z)/∂(r, x) on the grid, shape (*x_shape, len(r), d+1, d+1); the r column is (H_τ, H_ζ)."""
    fields = fields or grid_fields(hs)
    columns = [fields["y_r"], *x_derivatives(hs, fields["y"])]
    return np.stack(columns, axis=-1)


def lower_metric(gm: GeneralMetric, t: np.ndarray, z: np.ndarray) -> np.ndarray:
    """g_ij = diag(1, w) [[a, bᵀ], [b, c]] diag(1, w)."""
    ms = metric_field(gm).sample(t, z)
    scale = np.concatenate([np.ones(t.shape + (1,)), np.repeat(ms.w[..., None], gm.dim, axis=-1)], axis=-1)
    return ms.G * scale[..., :, None] * scale[..., None, :]


def transform_metric(gm: GeneralMetric, hs: HamiltonState) -> TransformedMetric:
    """
    Express the metric in the flow coordinates (r, x).

    ḡ = Jᵀ g J with J = ∂(t, z)/∂(r, x); the inverse must have ḡ^00 = 1 and
    ḡ^0k = 0, and h̄ = ḡ_xx / w(r)². The decay of h̄ - h(x) over the last
    decade of r is fitted against -min(nu, epsilon0).

    Raises:
        ChartError: The Jacobian is too badly conditioned somewhere on the grid.
        ConvergenceError: The pulled-back inverse metric misses the gauge by more
            than GAUGE_TOL (the chart grid is too coarse).
    """
    fields = grid_fields(hs)
    J = jacobian(hs, fields)
    y = fields["y"]
    g = lower_metric(gm, y[..., 0], y[..., 1:])

    rcond = 1.0 / np.linalg.cond(J)
    k = np.unravel_index(int(np.argmin(rcond)), rcond.shape)
    if not rcond[k] >= MIN_RCOND:
        raise ChartError(ERROR_CHART.format(rcond=float(rcond[k]), r=float(hs.r[k[-1]])))

    gbar = np.swapaxes(J, -1, -2) @ g @ J
    gbar_inv = np.linalg.inv(gbar)
    inverse_00 = float(np.max(np.abs(gbar_inv[..., 0, 0] - 1.0)))
    inverse_0k = float(np.max(np.abs(gbar_inv[..., 0, 1:]), initial=0.0))
    if max(inverse_00, inverse_0k) > GAUGE_TOL:
        raise ConvergenceError(ERROR_GAUGE.format(residual=max(inverse_00, inverse_0k)))

    field = metric_field(gm)
    w_r = field.warp(hs.r)
    d = gm.dim
    hbar = (gbar[..., 1:, 1:] / (w_r**2)[:, None, None]).reshape((-1, hs.r.size, d, d))
    h = field.limit(hs.x)

    eps = gm.epsilon0
    target = -min(gm.nu, eps)
    diff = np.max(np.abs(hbar - h[:, None]), axis=(0, 2, 3))
    window = hs.r >= hs.r[-1] / 10.0
    decay, within = None, None
    if np.max(diff[window]) > 1e-14 * np.max(np.abs(h)) and np.count_nonzero(window) >= FIT_MIN_POINTS:
        decay = symbol_decay_fit(hs.r[window], diff[window], expected=target, min_points=FIT_MIN_POINTS)
        within = bool(abs(decay.kappa - target) <= DECAY_TOLERANCE * abs(target))

    cond = 1.0 / rcond.reshape((-1, hs.r.size))
    result = TransformedMetric(
        r=hs.r,
        x=hs.x,
        hbar=hbar,
        h=h,
        inverse_00=inverse_00,
        inverse_0k=inverse_0k,
        min_rcond=float(rcond[k]),
        tail_condition=float(np.max(cond[:, -1])),
        decay=decay,
        target=target,
        within_tolerance=within,
    )
    logger.info(
        "transform: |g^00 - 1| %.3g, |g^0k| %.3g, min rcond %.3g, decay %s (target %.3g)",
        inverse_00, inverse_0k, result.min_rcond,
        "n/a" if decay is None else f"{decay.kappa:.3g}", target,
    )
    if within is False:
        logger.warning("transform: h̄ - h decays as r^%.3g, expected r^%.3g", decay.kappa, target)
    return result
