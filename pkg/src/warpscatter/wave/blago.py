"""
Blagovestchenskii identities.

For sources f, h supported in O × (0, T)

    ⟨u^f(T), u^h(T)⟩ = ∫_0^T ⟨f, J V h⟩ - ⟨V f, J h⟩ dt,   Jφ(t) = ½ ∫_t^{2T-t} φ(s) ds,

so inner products of waves at time T follow from the kernel of V over [0, 2T]
and the metric on O alone. For ℓ = 0 the pairing with the constant function
needs only the source: ⟨u^f(t), 1⟩ = ∫_0^t (t - s)⟨f(s), 1⟩ ds.
"""

import logging
from typing import Optional

import numpy as np
from scipy.integrate import cumulative_trapezoid

from warpscatter.core.config import SolverConfig, get_config
from warpscatter.core.errors import SpecError
from warpscatter.core.numerics import trapezoid_weights
from warpscatter.manifold import ManifoldSpec, log_profile

from .constants import DEFAULT_DR, ERROR_KERNEL_LATE, ERROR_KERNEL_SOURCE, ERROR_VOLUME_MODE, REFERENCE_NODES
from .kernel import time_sts_kernel
from .models import BlagoReport, TimeSource, TimeSourceToSolutionKernel, VolumePairingReport
from .solver import default_grid, wave_solve

logger = logging.getLogger(__name__)


def time_reversal(phi: np.ndarray, t: np.ndarray) -> np.ndarray:
    """Jφ(t_n) = ½ ∫_{t_n}^{t_{2N-n}} φ for n = 0..N, φ sampled on t_0..t_{2N} along axis -2."""
    steps = t.size - 1
    half = steps // 2
    Phi = cumulative_trapezoid(phi, t, axis=-2, initial=0)
    n = np.arange(half + 1)
    return 0.5 * (Phi[..., steps - n, :] - Phi[..., n, :])


def _check_sources(kernel: TimeSourceToSolutionKernel, F: np.ndarray) -> np.ndarray:
    F = np.asarray(F)
    need = (kernel.t.size, kernel.r.size)
    if F.shape[-2:] != need:
        raise SpecError(ERROR_KERNEL_SOURCE.format(got=F.shape, need=need))
    if np.any(F[..., kernel.half + 1 :, :] != 0):
        raise SpecError(ERROR_KERNEL_LATE.format(T=kernel.T))
    return F


def blago_cross(kernel: TimeSourceToSolutionKernel, F, VF, H, VH) -> np.ndarray:
    """
    G[a, b] = ⟨u^{f_a}(T), u^{h_b}(T)⟩ for two families with their responses on O already known.

    Args:
        kernel: V over [0, 2T] on O.
        F, H: Source samples, shape (count, 2N + 1, |O|), vanishing after T.
        VF, VH: The kernel applied to F and H.
    """
    half = kernel.half
    t = kernel.t
    w = trapezoid_weights(t[: half + 1])[:, None] * kernel.weights[None, :]
    lead = np.einsum("anj,bnj->ab", F[:, : half + 1] * w, np.conj(time_reversal(VH, t)))
    trail = np.einsum("anj,bnj->ab", VF[:, : half + 1] * w, np.conj(time_reversal(H, t)))
    return lead - trail


def blago_gram(kernel: TimeSourceToSolutionKernel, sources) -> np.ndarray:
    """
    G[a, b] = ⟨u^{f_a}(T), u^{f_b}(T)⟩ from the kernel alone.

    Args:
        kernel: V over [0, 2T] on O.
        sources: Samples, shape (count, 2N + 1, |O|), vanishing after T.
    """
    F = _check_sources(kernel, sources)
    VF = kernel.apply(F)
    return blago_cross(kernel, F, VF, F, VF)


def blago_identity(kernel: TimeSourceToSolutionKernel, F, H) -> complex:
    """⟨u^f(T), u^h(T)⟩ for two sampled sources, by the identity route."""
    return complex(blago_gram(kernel, np.stack([np.asarray(F), np.asarray(H)]))[0, 1])


def source_moment(kernel: TimeSourceToSolutionKernel, F, t_end: Optional[float] = None) -> np.ndarray:
    """∫_0^t (t - s) Σ_j F(s, r_j) ρ^{n-1}(r_j) dr ds for each sampled source (t = T by default)."""
    F = np.asarray(F)
    t_end = kernel.T if t_end is None else t_end
    mask = kernel.t <= t_end + 1e-12
    s = kernel.t[mask]
    load = np.tensordot(F[..., mask, :], kernel.weights, axes=([-1], [0]))
    return np.tensordot(load * (t_end - s), trapezoid_weights(s), axes=([-1], [0]))


def blago_pairing(
    spec: ManifoldSpec,
    ell: int,
    f: TimeSource,
    h: TimeSource,
    T: float,
    kernel: Optional[TimeSourceToSolutionKernel] = None,
    dr: float = DEFAULT_DR,
    config: Optional[SolverConfig] = None,
) -> BlagoReport:
    """
    ⟨u^f(T), u^h(T)⟩ by direct evolution and by the identity on O = hull of both supports.

    Raises:
        SpecError: A source is not supported in O × (0, T).
    """
    config = config or get_config()
    if kernel is None:
        region = (min(f.r_support[0], h.r_support[0]), max(f.r_support[1], h.r_support[1]))
        kernel = time_sts_kernel(spec, ell, region, T, dr=dr, config=config)
    F, H = kernel.sample(f), kernel.sample(h)
    identity = blago_identity(kernel, F, H)

    def final(source: TimeSource) -> tuple[np.ndarray, np.ndarray]:
        wf = wave_solve(
            spec, ell, source, kernel.T, grid=kernel.grid, dt=kernel.dt, stride=kernel.half, config=config
        )
        return wf.u[-1], wf.weights

    uf, weights = final(f)
    uh, _ = final(h)
    direct = complex(np.sum(weights * uf * np.conj(uh)))
    difference = abs(direct - identity)
    scale = max(abs(direct), abs(identity))
    relative = difference / scale if scale > 0 else 0.0
    logger.info(
        "Blagovestchenskii T=%.4g: direct %.8g, identity %.8g, relative %.2e",
        T, direct.real, identity.real, relative,
    )
    return BlagoReport(T=kernel.T, direct=direct, identity=identity, difference=difference, relative=relative)


def blago_volume_pairing(
    spec: ManifoldSpec,
    f: TimeSource,
    t: float,
    ell: int = 0,
    dr: float = DEFAULT_DR,
    config: Optional[SolverConfig] = None,
) -> VolumePairingReport:
    """
    ⟨u^f(t), 1⟩ = ∫ u^f(t) ρ^{n-1} dr by evolution against the double time integral of the source.

    The constant is paired over the wave grid, which holds the whole support of
    u^f(t); the cross-section factor vol(M) is common to both sides and left out.

    Raises:
        SpecError: ell is not 0.
    """
    if ell != 0:
        raise SpecError(ERROR_VOLUME_MODE.format(ell=ell))
    config = config or get_config()
    grid = default_grid(spec, f.r_support, t, dr)
    wf = wave_solve(spec, 0, f, t, grid=grid, config=config, stride=0)
    evolution = complex(np.sum(wf.weights * wf.u[-1]))

    a, b = f.r_support
    r = np.linspace(a, b, REFERENCE_NODES)
    g = np.exp((spec.n - 1) * log_profile(spec.profile, r).log_rho)
    s = np.linspace(0.0, t, REFERENCE_NODES)
    if t > 0:
        load = np.array([np.dot(f.evaluate(si, r) * g, trapezoid_weights(r)) for si in s])
        integral = complex(np.dot(load * (t - s), trapezoid_weights(s)))
    else:
        integral = 0j
    return VolumePairingReport(t=float(t), evolution=evolution, integral=integral, difference=abs(evolution - integral))
