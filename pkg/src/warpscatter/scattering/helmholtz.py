"""Helmholtz solutions of one mode with prescribed incoming data.

Near each side the solution is u = c·u_in + x·h with c the given incoming
coefficient (flux-normalised on open ends) and h the admissible outgoing,
decaying or regular solution. Both expansions describe the same global
solution, so taking Wronskians with h_L and h_R gives x_L and x_R directly.
"""

import logging
from typing import Mapping, Optional

import numpy as np

from warpscatter.core.config import SolverConfig, get_config
from warpscatter.core.errors import ClosedChannelError, SpecError
from warpscatter.manifold import EndFit, ManifoldSpec
from warpscatter.modes import Channel

from .channels import matching_determinant, mode_basis, wronskian_at
from .constants import ERROR_END_ID, ERROR_INCOMING_CLOSED, ERROR_NO_OPEN_END
from .models import HelmholtzSolution, ModeBasis, SideBasis

logger = logging.getLogger(__name__)


def _coefficients(side: SideBasis, a: complex) -> tuple[complex, complex]:
    """(incoming factor c, outgoing sign s) with u = c·incoming + x·s·outgoing on this side."""
    if side.kind == "open":
        return side.flux * a, -side.flux
    if side.kind == "cusp":
        return a, -1.0
    return 0.0, 1.0


def match_mode(basis: ModeBasis, a_left: complex, a_right: complex) -> tuple[complex, complex]:
    """
    Outgoing coefficients (x_L, x_R) for incoming coefficients (a_L, a_R).

    On open ends x is a_out, on cusp ends the decaying coefficient b with
    u = a u0^(+) - b u0^(-), on closed ends and the wall the coefficient of
    the admissible solution.
    """
    mp, i = basis.problem, basis.match
    L, R = basis.left, basis.right
    c_l, s_l = _coefficients(L, a_left)
    c_r, s_r = _coefficients(R, a_right)

    def w(a, b):
        return wronskian_at(mp, a, b, i)

    w_lr = w(L.outgoing, R.outgoing)
    num_l = 0j
    num_r = 0j
    if c_r != 0:
        num_l += c_r * w(R.incoming, R.outgoing)
        num_r -= c_r * w(R.incoming, L.outgoing)
    if c_l != 0:
        num_l -= c_l * w(L.incoming, R.outgoing)
        num_r += c_l * w(L.incoming, L.outgoing)
    x_l = num_l / (s_l * w_lr)
    x_r = num_r / (-s_r * w_lr)
    return complex(x_l), complex(x_r)


def _field(side: SideBasis, c: complex, x: complex, s: float, sl: slice):
    out = side.outgoing
    values = x * s * out.values[sl]
    derivatives = x * s * out.derivatives[sl]
    if c != 0:
        values = values + c * side.incoming.values[sl]
        derivatives = derivatives + c * side.incoming.derivatives[sl]
    return values, derivatives


def helmholtz_bvp(
    spec: ManifoldSpec,
    lam: float,
    mode: Channel,
    incoming: Mapping[int, complex],
    basis: Optional[ModeBasis] = None,
    fits: Optional[list[EndFit]] = None,
    config: Optional[SolverConfig] = None,
) -> HelmholtzSolution:
    """
    Solve (-Δ - λ)u = 0 in one cross-section mode with given incoming data.

    Args:
        spec: Manifold.
        lam: Real spectral parameter.
        mode: Cross-section channel (only its index and eigenvalue matter).
        incoming: a_in per end id; on cusp ends with λ_ℓ > 0 it is the
            coefficient of the growing solution u0^(+). Missing ends mean 0.
        basis: Precomputed mode basis at the same λ.
        fits: Precomputed end fits.
        config: Solver configuration.

    Returns:
        HelmholtzSolution with the field on the mode grid and a_out per end.

    Raises:
        ClosedChannelError: The mode is closed on every end, or incoming data
            is given on an end that carries no incoming channel.
        ResonanceError: Matching determinant below config.resonance_threshold.
    """
    config = config or get_config()
    basis = basis or mode_basis(spec, mode, lam, fits=fits, config=config)
    sides = {0: basis.right}
    if spec.topology == "full_line":
        sides[1] = basis.left
    if all(s.kind in ("closed", "wall") for s in sides.values()):
        raise ClosedChannelError(ERROR_NO_OPEN_END.format(index=mode.index, E=mode.eigenvalue, lam=lam))
    for end, a in incoming.items():
        if end not in sides:
            raise SpecError(ERROR_END_ID.format(end=end, topology=spec.topology))
        if a != 0 and sides[end].incoming is None:
            raise ClosedChannelError(ERROR_INCOMING_CLOSED.format(end=end, index=mode.index, lam=lam))

    a_right = complex(incoming.get(0, 0.0))
    a_left = complex(incoming.get(1, 0.0)) if spec.topology == "full_line" else 0j
    x_l, x_r = match_mode(basis, a_left, a_right)

    i = basis.match
    c_l, s_l = _coefficients(basis.left, a_left)
    c_r, s_r = _coefficients(basis.right, a_right)
    v_l, d_l = _field(basis.left, c_l, x_l, s_l, slice(0, i))
    v_r, d_r = _field(basis.right, c_r, x_r, s_r, slice(i, None))

    outgoing = {0: x_r}
    kinds = {0: basis.right.kind}
    if spec.topology == "full_line":
        outgoing[1] = x_l
        kinds[1] = basis.left.kind
    det = matching_determinant(basis)
    logger.debug("helmholtz mode %d: a_in=%s a_out=%s", mode.index, dict(incoming), outgoing)
    return HelmholtzSolution(
        lam=float(lam),
        index=mode.index,
        eigenvalue=mode.eigenvalue,
        r=basis.r,
        values=np.concatenate([v_l, v_r]),
        derivatives=np.concatenate([d_l, d_r]),
        incoming={e: complex(incoming.get(e, 0.0)) for e in sides},
        outgoing=outgoing,
        kinds=kinds,
        matching_determinant=det,
    )
