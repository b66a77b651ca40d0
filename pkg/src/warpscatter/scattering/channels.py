"""Channel bookkeeping and the per-mode solution bases every scattering quantity is built from."""

import logging
import math
from typing import Optional, Sequence

import numpy as np

from warpscatter.core.config import SolverConfig, get_config
from warpscatter.core.errors import ResonanceError, SpecError
from warpscatter.cusp import cusp_potential, cusp_solve
from warpscatter.cusp.constants import DEFAULT_R_MAX
from warpscatter.manifold import EndFit, ManifoldSpec, RadialProfile, classify_ends
from warpscatter.modes import Channel, eigen_list
from warpscatter.radial import (
    ModeProblem,
    SampledSolution,
    coefficients,
    continue_down,
    jost_solve,
    regular_solve,
    wkb_data,
)

from .constants import (
    CUSP_T_MARGIN,
    ERROR_COMPLEX_LAMBDA,
    ERROR_MATCHING,
    ONSET_MARGIN,
)
from .models import ChannelLabel, ChannelSpace, EndKind, ModeBasis, SideBasis

logger = logging.getLogger(__name__)


def end_kind(fit: EndFit, E: float, lam: float) -> EndKind:
    """open / closed for channels with oscillatory or exponential tails, cusp for E > 0 on cusp ends."""
    if fit.classification == "cusp" and E > 0:
        return "cusp"
    return "open" if lam > fit.E0 else "closed"


def oriented_profile(spec: ManifoldSpec, end: int) -> RadialProfile:
    """Global profile read so that end `end` lies at r → +∞."""
    return spec.profile if end == 0 else spec.profile.mirrored()


def channel_space(
    spec: ManifoldSpec,
    lam: float,
    lambda_max: float,
    generalized: bool = False,
    cusp_cutoff: Optional[int] = None,
    fits: Optional[list[EndFit]] = None,
    config: Optional[SolverConfig] = None,
) -> ChannelSpace:
    """
    Open channels of every end at λ, ordered by (end, ℓ, slot).

    Cusp ends contribute their ℓ = 0 channel (weight vol(M)); in generalized
    mode they also contribute ℓ >= 1 channels up to index `cusp_cutoff`.
    """
    lam = _real(lam)
    fits = fits or classify_ends(spec, config)
    spectrum = eigen_list(spec.cross_section, lambda_max)
    vol = spectrum.vol
    channels: list[ChannelLabel] = []
    weights: list[float] = []
    for fit in fits:
        cusp = fit.classification == "cusp"
        for c in spectrum.channels:
            kind = end_kind(fit, c.eigenvalue, lam)
            if kind == "open":
                channels.append(
                    ChannelLabel(end=fit.end_id, index=c.index, slot=c.slot, eigenvalue=c.eigenvalue, cusp=cusp)
                )
                weights.append(vol if cusp else 1.0)
            elif kind == "cusp" and generalized and (cusp_cutoff is None or c.index <= cusp_cutoff):
                channels.append(
                    ChannelLabel(
                        end=fit.end_id, index=c.index, slot=c.slot, eigenvalue=c.eigenvalue,
                        kind="generalized", cusp=True,
                    )
                )
                weights.append(1.0)
    return ChannelSpace(
        lam=lam,
        channels=tuple(channels),
        weights=tuple(weights),
        open_ends=tuple(lam > f.E0 for f in fits),
        thresholds=tuple(f.E0 for f in fits),
        generalized=generalized,
    )


def distinct_modes(channels: Sequence[Channel]) -> list[Channel]:
    """First channel (slot 0) of every eigenvalue index, in order."""
    seen: dict[int, Channel] = {}
    for c in channels:
        seen.setdefault(c.index, c)
    return list(seen.values())


def _real(lam) -> float:
    lam = complex(lam)
    if lam.imag != 0:
        raise SpecError(ERROR_COMPLEX_LAMBDA.format(lam=lam))
    return lam.real


def _extent(spec: ManifoldSpec, end: int, kind: EndKind, E: float, lam: float, config: SolverConfig) -> float:
    profile = oriented_profile(spec, end)
    if kind == "open":
        r0 = wkb_data(ModeProblem(n=spec.n, profile=profile, E=E, lam=lam), config=config).r0
        return max(config.r_max, ONSET_MARGIN * r0)
    if kind == "cusp":
        pot = cusp_potential(profile, E, lam, spec.n, r_max=DEFAULT_R_MAX)
        target = pot.t0 + CUSP_T_MARGIN
        if target >= pot.change.t[-1]:
            return float(pot.change.r[-1])
        return float(pot.change.r_at_t(target))
    return config.r_max


def _default_grid(spec: ManifoldSpec, r_left: float, r_right: float, points: int) -> tuple[np.ndarray, int]:
    right = np.linspace(0.0, r_right, points)
    if spec.topology == "half_line":
        return right, 0
    left = np.linspace(-r_left, 0.0, points)
    return np.concatenate([left, right[1:]]), points - 1


def _side(
    spec: ManifoldSpec,
    end: int,
    kind: EndKind,
    E: float,
    lam: float,
    grid: np.ndarray,
    r_max: float,
    config: SolverConfig,
) -> SideBasis:
    """Admissible solutions of end `end`, sampled on `grid` given in that end's own coordinate."""
    profile = oriented_profile(spec, end)
    mp = ModeProblem(n=spec.n, profile=profile, E=E, lam=lam, r_lo=float(grid[0]))
    if kind == "cusp":
        pair = cusp_solve(profile, E, lam, spec.n, grid=grid[grid >= 0], config=config)
        return SideBasis(
            end=end, kind=kind, r_max=r_max,
            outgoing=continue_down(mp, grid, pair.decaying, config),
            incoming=continue_down(mp, grid, pair.growing, config),
        )
    jost = jost_solve(mp, "+", r_max=r_max, grid=grid, config=config)
    if kind == "closed":
        return SideBasis(end=end, kind=kind, outgoing=jost.solution, r_max=r_max)
    k = math.sqrt(lam - mp.E0)
    return SideBasis(
        end=end, kind=kind, outgoing=jost.solution, incoming=jost.solution.conj(),
        flux=math.sqrt(math.pi / k), k=k, r_max=r_max,
    )


def _mirror(side: SideBasis) -> SideBasis:
    return side.model_copy(
        update={
            "outgoing": side.outgoing.mirrored(),
            "incoming": side.incoming.mirrored() if side.incoming is not None else None,
        }
    )


def mode_basis(
    spec: ManifoldSpec,
    mode: Channel,
    lam: float,
    grid: Optional[np.ndarray] = None,
    fits: Optional[list[EndFit]] = None,
    config: Optional[SolverConfig] = None,
    check: bool = True,
) -> ModeBasis:
    """
    Left and right admissible solutions of one mode at real λ.

    Open ends are fixed at R_max >= max(config.r_max, 2 r0(λ, λ_ℓ)); cusp
    ends with λ_ℓ > 0 reach CUSP_T_MARGIN beyond t0 in the cusp variable.
    With `grid` the solutions are sampled on the union of the default grid
    and `grid`, then restricted to `grid`. With check=False a vanishing
    matching determinant is returned instead of raised.

    Raises:
        SpecError: Complex λ.
        ResonanceError: The two sides are numerically dependent.
    """
    config = config or get_config()
    lam = _real(lam)
    fits = fits or classify_ends(spec, config)
    E = mode.eigenvalue
    kinds = {f.end_id: end_kind(f, E, lam) for f in fits}

    r_right = _extent(spec, 0, kinds[0], E, lam, config)
    r_left = _extent(spec, 1, kinds[1], E, lam, config) if spec.topology == "full_line" else 0.0
    if grid is not None:
        grid = np.asarray(grid, dtype=float)
        r_right = max(r_right, float(grid[-1]))
        r_left = max(r_left, -float(grid[0]))
    work, match = _default_grid(spec, r_left, r_right, config.grid_points)
    if grid is not None:
        work = np.union1d(work, grid)
        match = int(np.searchsorted(work, 0.0))

    right = _side(spec, 0, kinds[0], E, lam, work, r_right, config)
    if spec.topology == "full_line":
        left = _mirror(_side(spec, 1, kinds[1], E, lam, -work[::-1], r_left, config))
    else:
        mp0 = ModeProblem(n=spec.n, profile=spec.profile, E=E, lam=lam)
        left = SideBasis(kind="wall", outgoing=regular_solve(mp0, grid=work, config=config).solution)

    problem = ModeProblem(n=spec.n, profile=spec.profile, E=E, lam=lam, r_lo=float(work[0]))
    basis = ModeBasis(problem=problem, index=mode.index, left=left, right=right, match=match)
    det = matching_determinant(basis)
    if check and det < config.resonance_threshold:
        raise ResonanceError(
            ERROR_MATCHING.format(value=det, lam=lam, index=mode.index), lam=lam, index=mode.index
        )
    logger.debug(
        "mode %d: kinds=%s R=(%.4g, %.4g) det=%.3e", mode.index, kinds, r_left, r_right, det
    )
    if grid is not None:
        basis = restrict(basis, np.isin(work, grid))
    return basis


def restrict(basis: ModeBasis, mask: np.ndarray) -> ModeBasis:
    """The same basis on the nodes selected by `mask`; the match moves to the nearest kept node."""
    kept = np.nonzero(mask)[0]
    match = int(np.argmin(np.abs(kept - basis.match)))

    def cut(side: SideBasis) -> SideBasis:
        return side.model_copy(
            update={
                "outgoing": side.outgoing.restricted(mask),
                "incoming": side.incoming.restricted(mask) if side.incoming is not None else None,
            }
        )

    return basis.model_copy(
        update={
            "left": cut(basis.left),
            "right": cut(basis.right),
            "match": match,
            "problem": basis.problem.model_copy(update={"r_lo": float(basis.r[mask][0])}),
        }
    )


def wronskian_at(mp: ModeProblem, a: SampledSolution, b: SampledSolution, i: int) -> complex:
    """ρ^{n-1}(a b' - a' b) at grid node i."""
    log_g = float(coefficients(mp, a.r[i : i + 1]).log_g[0])
    core = a.mantissa[i] * b.dmantissa[i] - a.dmantissa[i] * b.mantissa[i]
    return complex(core * np.exp(a.log_scale[i] + b.log_scale[i] + log_g))


def data_vector(mp: ModeProblem, y: SampledSolution, i: int) -> np.ndarray:
    """ρ^{(n-1)/2} (y, y') at node i."""
    half = 0.5 * float(coefficients(mp, y.r[i : i + 1]).log_g[0])
    scale = np.exp(y.log_scale[i] + half)
    return np.array([y.mantissa[i] * scale, y.dmantissa[i] * scale])


def matching_determinant(basis: ModeBasis, sign: str = "+") -> float:
    """|W(h_L, h_R)| relative to |h_L||h_R'| + |h_L'||h_R| at the match node (1 for orthogonal data)."""
    mp, i = basis.problem, basis.match
    h_l = basis.left.admissible(sign)
    h_r = basis.right.admissible(sign)
    a = data_vector(mp, h_l, i)
    b = data_vector(mp, h_r, i)
    scale = abs(a[0] * b[1]) + abs(a[1] * b[0])
    if scale == 0:
        return 0.0
    return float(abs(wronskian_at(mp, h_l, h_r, i)) / scale)
