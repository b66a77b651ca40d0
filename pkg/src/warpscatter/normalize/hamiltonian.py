"""The classical Hamiltonian H = ã τ² + 2 w⁻¹ b̃ τ ζ + w⁻² c̃ ζ ζ and its gradient."""

from typing import NamedTuple

import numpy as np

from warpscatter.core.errors import SpecError

from .constants import ERROR_NOT_POSITIVE
from .field import metric_field
from .models import GeneralMetric


class HamiltonianValue(NamedTuple):
    H: np.ndarray
    H_t: np.ndarray
    H_z: np.ndarray  # (..., d)
    H_tau: np.ndarray
    H_zeta: np.ndarray  # (..., d)


def _vector(v, t: np.ndarray, d: int) -> np.ndarray:
    v = np.asarray(v, dtype=float)
    if d == 1 and v.shape == t.shape:
        v = v[..., None]
    return np.broadcast_to(v, t.shape + (d,))


def _check_positive(G: np.ndarray, t: np.ndarray) -> None:
    eig = np.linalg.eigvalsh(G)[..., 0]
    bad = ~(eig > 0)
    if np.any(bad):
        k = np.unravel_index(int(np.argmax(bad)), bad.shape) if bad.ndim else ()
        raise SpecError(ERROR_NOT_POSITIVE.format(t=float(np.asarray(t)[k]), eig=float(eig[k])))


def hamiltonian(gm: GeneralMetric, t, z, tau, zeta) -> HamiltonianValue:
    """
    Evaluate H and its first derivatives.

    Writing q = (τ, ζ/w) and G̃ = G⁻¹ for the block matrix G = [[a, bᵀ], [b, c]],
    H = qᵀ G̃ q; derivatives of G̃ come from ∂G̃ = -G̃ (∂G) G̃.

    Args:
        gm: The metric.
        t: Times, any shape S.
        z: Chart points, shape S + (d,) (or S when d = 1).
        tau: Dual variable of t, shape S.
        zeta: Dual variable of z, shape S + (d,) (or S when d = 1).

    Returns:
        HamiltonianValue; H_z and H_zeta carry a trailing axis of length d.

    Raises:
        SpecError: The metric matrix is not positive definite somewhere.
    """
    field = metric_field(gm)
    d = field.dim
    t = np.asarray(t, dtype=float)
    z = _vector(z, t, d)
    zeta = _vector(zeta, t, d)
    tau = np.broadcast_to(np.asarray(tau, dtype=float), t.shape)

    ms = field.sample(t, z)
    _check_positive(ms.G, t)
    Gi = np.linalg.inv(ms.G)
    w = ms.w[..., None]
    q = np.concatenate([tau[..., None], zeta / w], axis=-1)
    Gq = np.einsum("...ij,...j->...i", Gi, q)

    H = np.einsum("...i,...i->...", q, Gq)
    H_tau = 2.0 * Gq[..., 0]
    H_zeta = 2.0 * Gq[..., 1:] / w

    dGi_dt = -Gi @ ms.dG_dt @ Gi
    # ∂_t q = (0, -(w'/w) ζ/w)
    H_t = np.einsum("...i,...ij,...j->...", q, dGi_dt, q) - 2.0 * (ms.dw / ms.w) * np.einsum(
        "...i,...i->...", Gq[..., 1:], q[..., 1:]
    )
    dGi_dz = -Gi[..., None, :, :] @ ms.dG_dz @ Gi[..., None, :, :]
    H_z = np.einsum("...i,...kij,...j->...k", q, dGi_dz, q)
    return HamiltonianValue(H=H, H_t=H_t, H_z=H_z, H_tau=H_tau, H_zeta=H_zeta)
