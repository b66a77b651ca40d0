"""Scattering matrix assembly, unitarity and reciprocity reports, λ sweeps."""

import logging
from concurrent.futures import ThreadPoolExecutor
from typing import Optional, Sequence

import numpy as np

from warpscatter.core.config import SolverConfig, get_config
from warpscatter.core.errors import SpecError
from warpscatter.manifold import ManifoldSpec, classify_ends
from warpscatter.modes import Channel

from .channels import channel_space, mode_basis
from .constants import CONVENTION, ERROR_SWEEP_EMPTY, UNITARITY_TOL
from .helmholtz import helmholtz_bvp
from .models import ChannelSpace, ScatteringMatrix, SMatrixSweep

logger = logging.getLogger(__name__)


def _mode_columns(spec, lam, mode: Channel, ends: list[int], fits, config) -> dict[tuple[int, int], complex]:
    """{(out_end, in_end): a_out} of one mode for unit incoming data on each channel end."""
    basis = mode_basis(spec, mode, lam, fits=fits, config=config)
    block: dict[tuple[int, int], complex] = {}
    for e in ends:
        sol = helmholtz_bvp(spec, lam, mode, {e: 1.0}, basis=basis, config=config)
        for out in ends:
            block[(out, e)] = sol.outgoing[out]
    return block


def _assemble(space: ChannelSpace, blocks: dict[int, dict[tuple[int, int], complex]]) -> np.ndarray:
    S = np.zeros((space.size, space.size), dtype=complex)
    for i, out in enumerate(space.channels):
        for j, into in enumerate(space.channels):
            if out.index == into.index and out.slot == into.slot:
                S[i, j] = blocks[out.index][(out.end, into.end)]
    return S


def _reciprocity(space: ChannelSpace, S: np.ndarray) -> Optional[float]:
    pairs = [
        (space.position(0, c.index, c.slot), space.position(1, c.index, c.slot))
        for c in space.channels
        if c.end == 0 and c.kind == "physical"
        and any(d.key == (1, c.index, c.slot) and d.kind == "physical" for d in space.channels)
    ]
    if not pairs:
        return None
    return float(max(abs(S[i, j] - S[j, i]) for i, j in pairs))


def s_matrix(
    spec: ManifoldSpec,
    lam: float,
    lambda_max: float,
    generalized: bool = False,
    cusp_cutoff: Optional[int] = None,
    config: Optional[SolverConfig] = None,
) -> ScatteringMatrix:
    """
    Assemble S(λ) column by column from Helmholtz solutions.

    Modes decouple, so S is block diagonal in (ℓ, slot): each distinct
    eigenvalue is solved once and its 1x1 or 2x2 block is replicated over the
    eigenspace. Cusp ℓ = 0 entries are reported for the scalar amplitude of
    the constant function, so the physical part is unitary with respect to
    the Gram matrix diag(1, ..., vol(M)).

    Args:
        spec: Manifold.
        lam: Real λ above at least one threshold.
        lambda_max: Cross-section eigenvalue cutoff Λ_max.
        generalized: Add ℓ >= 1 cusp channels (growing data in, decaying out).
        cusp_cutoff: Largest ℓ of the generalized cusp channels.
        config: Solver configuration.

    Returns:
        ScatteringMatrix with unitarity and (two-ended manifolds) reciprocity
        residuals.

    Raises:
        ResonanceError: λ is numerically exceptional for some mode.
    """
    config = config or get_config()
    fits = classify_ends(spec, config)
    space = channel_space(spec, lam, lambda_max, generalized, cusp_cutoff, fits=fits, config=config)

    modes: dict[int, tuple[Channel, list[int]]] = {}
    for c in space.channels:
        if c.slot != 0:
            continue
        mode = Channel(index=c.index, eigenvalue=c.eigenvalue)
        modes.setdefault(c.index, (mode, []))[1].append(c.end)

    def solve(item):
        mode, ends = item
        return mode.index, _mode_columns(spec, space.lam, mode, sorted(set(ends)), fits, config)

    with ThreadPoolExecutor(max_workers=config.threads) as pool:
        blocks = dict(pool.map(solve, modes.values()))

    raw = _assemble(space, blocks)
    reciprocity = _reciprocity(space, raw) if spec.topology == "full_line" else None

    d = np.array([
        np.sqrt(w) if c.cusp and c.kind == "physical" else 1.0
        for c, w in zip(space.channels, space.weights)
    ])
    S = raw * d[np.newaxis, :] / d[:, np.newaxis]
    gram = np.diag(np.asarray(space.weights, dtype=float))

    mask = space.physical_mask()
    P = S[np.ix_(mask, mask)]
    W = gram[np.ix_(mask, mask)]
    residual = float(np.linalg.norm(P.conj().T @ W @ P - W, 2)) if P.size else 0.0
    if residual > UNITARITY_TOL:
        logger.warning("S(%.6g): unitarity residual %.2e above %.0e", space.lam, residual, UNITARITY_TOL)
    logger.info(
        "S(%.6g): %d channels over %d modes, unitarity %.2e", space.lam, space.size, len(modes), residual
    )
    return ScatteringMatrix(
        lam=space.lam,
        space=space,
        matrix=S,
        gram=gram,
        unitarity_residual=residual,
        reciprocity_residual=reciprocity,
        convention=dict(CONVENTION),
    )


def scattering_phase(S: ScatteringMatrix) -> float:
    """½ arg det S on the physical channels."""
    P = S.physical()
    if P.size == 0:
        return 0.0
    return 0.5 * float(np.angle(np.linalg.det(P)))


def s_matrix_sweep(
    spec: ManifoldSpec,
    lams: Sequence[float],
    lambda_max: float,
    generalized: bool = False,
    cusp_cutoff: Optional[int] = None,
    config: Optional[SolverConfig] = None,
) -> SMatrixSweep:
    """S(λ) at every λ of `lams`, for |S_jk(λ)| curves and phase plots."""
    lams = np.asarray(lams, dtype=float)
    if lams.size == 0:
        raise SpecError(ERROR_SWEEP_EMPTY)
    matrices = tuple(s_matrix(spec, lam, lambda_max, generalized, cusp_cutoff, config) for lam in lams)
    return SMatrixSweep(lam=lams, matrices=matrices)


def s_matrix_payload(S: ScatteringMatrix) -> dict:
    """JSON-ready S-matrix: channel labels, entries as [re, im], residuals and convention."""
    return {
        "lambda": S.lam,
        "generalized": S.generalized,
        "channels": [
            {"end": c.end, "l": c.index, "slot": c.slot, "eigenvalue": c.eigenvalue, "kind": c.kind}
            for c in S.space.channels
        ],
        "weights": list(S.space.weights),
        "matrix": S.matrix,
        "unitarity_residual": S.unitarity_residual,
        "reciprocity_residual": S.reciprocity_residual,
        "scattering_phase": scattering_phase(S),
        "convention": S.convention,
    }
