"""Diagnostics of a solved flow: eikonal H = 1/4, φ = r/2 and the closed 2-form dτ∧dt + dζ∧dz."""

import logging
from typing import Optional

import numpy as np
from scipy.integrate import cumulative_simpson
from scipy.interpolate import CubicSpline

from warpscatter.core.numerics import tail_remainder

from .hamiltonian import hamiltonian
from .models import FlowDiagnostics, HamiltonState

logger = logging.getLogger(__name__)

_INVERSION_STEPS = 30
_INVERSION_TOL = 1e-13


def grid_fields(hs: HamiltonState) -> dict[str, np.ndarray]:
    """Positions y = (t, z), momenta η = (τ, ζ) and their r-derivatives, reshaped to (*x_shape, len(r), d+1)."""
    hv = hamiltonian(hs.metric, hs.t, hs.z, hs.tau, hs.zeta)
    shape = hs.grid.shape + (hs.r.size,)
    y = np.concatenate([hs.t[..., None], hs.z], axis=-1)
    eta = np.concatenate([hs.tau[..., None], hs.zeta], axis=-1)
    y_r = np.concatenate([hv.H_tau[..., None], hv.H_zeta], axis=-1)
    eta_r = -np.concatenate([hv.H_t[..., None], hv.H_z], axis=-1)
    return {
        "H": hv.H.reshape(shape),
        "y": y.reshape(shape + (-1,)),
        "eta": eta.reshape(shape + (-1,)),
        "y_r": y_r.reshape(shape + (-1,)),
        "eta_r": eta_r.reshape(shape + (-1,)),
    }


def x_derivatives(hs: HamiltonState, f: np.ndarray) -> list[np.ndarray]:
    """∂f/∂x_k along each chart axis (second-order differences)."""
    return [
        np.gradient(f, np.asarray(axis, dtype=float), axis=k, edge_order=2)
        for k, axis in enumerate(hs.grid.x)
    ]


def bracket(hs: HamiltonState, fields: Optional[dict[str, np.ndarray]] = None) -> float:
    """max over the grid and j < k of |∂_j η · ∂_k y - ∂_k η · ∂_j y|, θ = (r, x)."""
    fields = fields or grid_fields(hs)
    dy = [fields["y_r"], *x_derivatives(hs, fields["y"])]
    deta = [fields["eta_r"], *x_derivatives(hs, fields["eta"])]
    worst = 0.0
    for j in range(len(dy)):
        for k in range(j + 1, len(dy)):
            value = np.sum(deta[j] * dy[k] - deta[k] * dy[j], axis=-1)
            worst = max(worst, float(np.max(np.abs(value))))
    return worst


def _column_spline(axis: np.ndarray, values: np.ndarray, xq: np.ndarray) -> np.ndarray:
    """
    Evaluate, for every radius i, the cubic spline through values[:, i] at xq[:, i].

    values has shape (len(axis), len(r), m), xq shape (Q, len(r)); points
    outside the axis give NaN.
    """
    cs = CubicSpline(axis, values, axis=0)
    j = np.clip(np.searchsorted(axis, xq) - 1, 0, axis.size - 2)
    s = (xq - axis[j])[..., None]
    c = cs.c[:, j, np.arange(xq.shape[1])[None, :], :]
    out = ((c[0] * s + c[1]) * s + c[2]) * s + c[3]
    outside = (xq < axis[0]) | (xq > axis[-1]) | ~np.isfinite(xq)
    out[outside] = np.nan
    return out


def _invert_chart(hs: HamiltonState) -> tuple[np.ndarray, np.ndarray, np.ndarray]:
    """
    For every radius and interior chart node z0, find x with z(r, x) = z0.

    Returns t and τ at those points (shape (Q, len(r))) and a mask of the
    points that stayed inside the chart. One-dimensional charts only.
    """
    axis = np.asarray(hs.grid.x[0], dtype=float)
    shifts = hs.z[..., 0] - hs.x[:, None, 0]
    fields = np.stack([hs.t - hs.r, hs.tau], axis=-1)

    targets = axis[1:-1]
    z0 = np.broadcast_to(targets[:, None], (targets.size, hs.r.size))
    x = z0.copy()
    for _ in range(_INVERSION_STEPS):
        step = x + _column_spline(axis, shifts[..., None], x)[..., 0] - z0
        x = x - step
        if not np.nanmax(np.abs(step), initial=0.0) > _INVERSION_TOL:
            break
    values = _column_spline(axis, fields, x)
    inside = np.all(np.isfinite(values), axis=-1)
    return hs.r + values[..., 0], values[..., 1], inside


def phase_residual(hs: HamiltonState) -> tuple[Optional[float], int]:
    """
    max |φ(t, z0) - r/2| with φ(t, z0) = t/2 - ∫_t^∞ (τ(t', z0) - 1/2) dt'.

    Only lines of constant z0 that stay inside the chart for every radius are
    used; charts of dimension above one are not inverted and give (None, 0).
    """
    if hs.dim != 1:
        logger.debug("phase check skipped for a %d-dimensional chart", hs.dim)
        return None, 0
    t, tau, inside = _invert_chart(hs)
    worst, used = None, 0
    for k in range(t.shape[0]):
        if not np.all(inside[k]):
            continue
        f = tau[k] - 0.5
        c = cumulative_simpson(f, x=t[k], initial=0)
        phi = 0.5 * t[k] - (c[-1] - c + float(np.real(tail_remainder(t[k], f))))
        err = float(np.max(np.abs(phi - 0.5 * hs.r)))
        worst = err if worst is None else max(worst, err)
        used += 1
    return worst, used


def verify_flow(hs: HamiltonState) -> FlowDiagnostics:
    """
    Report how well the fixed point satisfies the identities of the flow.

    energy is max |H - 1/4| at the solution, phase is max |φ - r/2| along
    lines of fixed z recovered by inverting the chart, bracket is the largest
    component of dτ∧dt + Σ dζ_i∧dz^i in the (r, x) coordinates.
    """
    fields = grid_fields(hs)
    energy = float(np.max(np.abs(fields["H"] - 0.25)))
    phase, used = phase_residual(hs)
    diagnostics = FlowDiagnostics(energy=energy, phase=phase, phase_points=used, bracket=bracket(hs, fields))
    logger.info(
        "verify flow: |H - 1/4| %.3g, |phi - r/2| %s over %d lines, bracket %.3g",
        energy, "n/a" if phase is None else f"{phase:.3g}", used, diagnostics.bracket,
    )
    return diagnostics
