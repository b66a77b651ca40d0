"""Time-domain source-to-solution kernel V_{O,+} over [0, 2T]."""

import logging
from concurrent.futures import ThreadPoolExecutor
from typing import Optional

import numpy as np

from warpscatter.core.config import SolverConfig, get_config
from warpscatter.core.errors import SpecError
from warpscatter.manifold import ManifoldSpec

from .constants import DEFAULT_DR, ERROR_KERNEL_REGION
from .models import TimeSourceToSolutionKernel, WaveGrid
from .operator import build_operator, time_step
from .solver import default_grid, march, mode_eigenvalue

logger = logging.getLogger(__name__)


def time_sts_kernel(
    spec: ManifoldSpec,
    ell: int,
    region: tuple[float, float],
    T: float,
    dr: float = DEFAULT_DR,
    grid: Optional[WaveGrid] = None,
    config: Optional[SolverConfig] = None,
) -> TimeSourceToSolutionKernel:
    """
    Responses of mode ℓ to unit impulses at every node of O = [a, b], observed on O up to 2T.

    The basis of space-time sources is the set of grid impulses e_j δ_{nm};
    by time invariance one homogeneous run per node j gives every column.
    Blocks of nodes evolve together and blocks run concurrently.

    Args:
        spec: Manifold.
        ell: Mode index.
        region: Radial interval O.
        T: Half of the kernel horizon; the step divides T.
        dr: Space step of the default grid O ± (2T + halo).
        grid: Explicit wave grid.
        config: Solver configuration (cfl, threads).

    Raises:
        SpecError: O holds fewer than two interior nodes or the grid leaves the manifold.
    """
    config = config or get_config()
    eigenvalue = mode_eigenvalue(spec.cross_section, ell)
    grid = grid or default_grid(spec, region, 2.0 * T, dr)
    op = build_operator(spec, eigenvalue, grid)
    dt, half = time_step(op, T, config.cfl)
    steps = 2 * half

    r = op.r
    nodes = np.flatnonzero((r >= region[0] - 1e-12) & (r <= region[1] + 1e-12))
    nodes = nodes[(nodes > 0) & (nodes < r.size - 1)]
    if nodes.size < 2:
        raise SpecError(ERROR_KERNEL_REGION.format(lo=region[0], hi=region[1], need=2))

    def column_block(block: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
        u0 = np.zeros((r.size, block.size))
        v0 = np.zeros_like(u0)
        v0[nodes[block], np.arange(block.size)] = dt
        run = march(op, dt, steps, u0, v0=v0, keep=nodes, track_energy=False)
        return block, np.asarray(run["u"])

    J = nodes.size
    responses = np.zeros((steps + 1, J, J))
    blocks = [b for b in np.array_split(np.arange(J), max(1, min(config.threads, J))) if b.size]
    with ThreadPoolExecutor(max_workers=config.threads) as pool:
        for block, cols in pool.map(column_block, blocks):
            responses[:, :, block] = cols

    weights = op.weights[nodes]
    green = responses / weights[None, None, :]
    scale = float(np.max(np.abs(green))) or 1.0
    reciprocity = float(np.max(np.abs(green - green.transpose(0, 2, 1))) / scale)
    gap = np.abs(np.arange(J)[:, None] - np.arange(J)[None, :])
    outside = gap[None, :, :] >= np.arange(steps + 1)[:, None, None]
    causal = bool(np.all(responses[outside] == 0.0))
    logger.info(
        "V_O(2T = %.4g), l=%d: %d nodes x %d steps, reciprocity %.2e, causal %s",
        2 * T, ell, J, steps + 1, reciprocity, causal,
    )
    return TimeSourceToSolutionKernel(
        ell=ell,
        eigenvalue=eigenvalue,
        region=(float(region[0]), float(region[1])),
        grid=grid,
        dt=dt,
        T=float(T),
        r=r[nodes],
        nodes=nodes,
        weights=weights,
        t=dt * np.arange(steps + 1),
        responses=responses,
        reciprocity_error=reciprocity,
        causal=causal,
    )
