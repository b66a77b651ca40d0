"""Embedded-eigenvalue probe: how far each mode is from admitting an L² solution."""

import logging
from concurrent.futures import ThreadPoolExecutor
from typing import Optional, Sequence

import numpy as np

from warpscatter.core.config import SolverConfig, get_config
from warpscatter.core.errors import SpecError
from warpscatter.manifold import ManifoldSpec, classify_ends
from warpscatter.modes import Channel, eigen_list

from .channels import data_vector, distinct_modes, matching_determinant, mode_basis, wronskian_at
from .constants import ERROR_PROBE_END, ERROR_PROBE_RANGE, ERROR_SWEEP_EMPTY, PROBE_BETA_MIN, PROBE_ZERO
from .models import EmbeddedProbeReport, ModeBasis, ProbeMode

logger = logging.getLogger(__name__)


def l2_determinant(basis: ModeBasis) -> float:
    """
    Smallest ratio |open-end amplitudes| / |Cauchy data| over solutions admissible on the non-open sides.

    An L² solution has vanishing incoming and outgoing amplitude on every open
    end, so the ratio is zero exactly at an embedded eigenvalue of the mode.
    With no open side this is the matching determinant.
    """
    sides = (basis.left, basis.right)
    open_sides = [s for s in sides if s.kind == "open"]
    if not open_sides:
        return matching_determinant(basis)
    mp, i = basis.problem, basis.match
    others = [s for s in sides if s.kind != "open"]
    if others:
        space = [s.outgoing for s in others]
    else:
        space = [basis.right.outgoing, basis.right.incoming]

    D = np.column_stack([data_vector(mp, v, i) for v in space])
    rows = []
    for s in open_sides:
        w_oi = wronskian_at(mp, s.outgoing, s.incoming, i)
        rows.append([wronskian_at(mp, v, s.incoming, i) / w_oi / s.flux for v in space])
        rows.append([wronskian_at(mp, v, s.outgoing, i) / w_oi / s.flux for v in space])
    A = np.array(rows, dtype=complex)
    _, R = np.linalg.qr(D)
    return float(np.linalg.svd(A @ np.linalg.inv(R), compute_uv=False)[-1])


def embedded_eigenvalue_probe(
    spec: ManifoldSpec,
    lams: Sequence[float],
    lambda_max: float,
    config: Optional[SolverConfig] = None,
) -> EmbeddedProbeReport:
    """
    Scan the L² determinant of every mode over a λ grid above the threshold.

    Args:
        spec: Manifold with at least one regular end with β0 > 1/3.
        lams: Increasing λ grid, every point above E0 of those ends.
        lambda_max: Cross-section cutoff Λ_max.
        config: Solver configuration.

    Returns:
        EmbeddedProbeReport with per-mode minima, largest successive jump
        and the number of grid points below PROBE_ZERO.

    Raises:
        SpecError: No qualifying end, an empty grid or λ at or below the threshold.
    """
    config = config or get_config()
    lams = np.asarray(lams, dtype=float)
    if lams.size == 0:
        raise SpecError(ERROR_SWEEP_EMPTY)
    fits = classify_ends(spec, config)
    qualifying = [f for f in fits if f.classification == "regular" and f.beta0 > PROBE_BETA_MIN]
    if not qualifying:
        raise SpecError(ERROR_PROBE_END)
    E0 = min(f.E0 for f in qualifying)
    if np.any(lams <= E0):
        raise SpecError(ERROR_PROBE_RANGE.format(lam=float(lams[lams <= E0][0]), E0=E0))

    modes = distinct_modes(eigen_list(spec.cross_section, lambda_max).channels)

    def scan(mode: Channel) -> ProbeMode:
        values = np.array([
            l2_determinant(mode_basis(spec, mode, lam, fits=fits, config=config, check=False))
            for lam in lams
        ])
        k = int(np.argmin(values))
        jump = float(np.max(np.abs(np.diff(values)))) if values.size > 1 else 0.0
        return ProbeMode(
            index=mode.index,
            eigenvalue=mode.eigenvalue,
            determinant=values,
            minimum=float(values[k]),
            argmin=float(lams[k]),
            max_jump=jump,
            near_zero=int(np.count_nonzero(values < PROBE_ZERO)),
        )

    with ThreadPoolExecutor(max_workers=config.threads) as pool:
        results = tuple(pool.map(scan, modes))
    for m in results:
        if m.near_zero:
            logger.warning("probe: mode %d has %d candidate points near λ = %.6g", m.index, m.near_zero, m.argmin)
    logger.info("probe: %d modes over %d points, minimum %.3e", len(results), lams.size,
                min(m.minimum for m in results))
    return EmbeddedProbeReport(lam=lams, modes=results)
