"""Stationary source-to-solution operator U_{O,±}(λ) on a sampled interior region."""

import logging
from typing import Optional

import numpy as np

from warpscatter.core.config import SolverConfig, get_config
from warpscatter.core.errors import SpecError
from warpscatter.core.numerics import trapezoid_weights
from warpscatter.manifold import ManifoldSpec
from warpscatter.modes import basis_matrix, circle_points, eigen_list
from warpscatter.radial import coefficients

from .constants import ERROR_REGION
from .models import ModeBasis, Sign, SourceToSolutionKernel
from .resolvent import mode_bases

logger = logging.getLogger(__name__)


def _radial_kernel(basis: ModeBasis, sign: Sign) -> np.ndarray:
    """G(r_i, r_j) = h_L(min) h_R(max) / C on the basis grid."""
    i = basis.match
    h_l = basis.left.admissible(sign)
    h_r = basis.right.admissible(sign)
    a = h_l.mantissa * np.exp(h_l.log_scale - h_l.log_scale[i])
    b = h_r.mantissa * np.exp(h_r.log_scale - h_r.log_scale[i])
    da = h_l.dmantissa * np.exp(h_l.log_scale - h_l.log_scale[i])
    db = h_r.dmantissa * np.exp(h_r.log_scale - h_r.log_scale[i])
    g_i = float(np.exp(coefficients(basis.problem, basis.r[i : i + 1]).log_g[0]))
    C = -g_i * (a[i] * db[i] - da[i] * b[i])
    lower = np.tril(np.outer(b, a))
    return (lower + np.triu(np.outer(a, b), 1)) / C


def source_to_solution_stationary(
    spec: ManifoldSpec,
    lam: float,
    sign: Sign,
    region: tuple[float, float],
    lambda_max: float,
    r_points: int = 81,
    count: Optional[int] = None,
    config: Optional[SolverConfig] = None,
) -> SourceToSolutionKernel:
    """
    Discrete kernel of f ↦ R(λ ± i0) f restricted to O = [a, b] x cross-section.

    K(x, x') = Σ_c G_c(r, r') e_c(θ) e_c(θ') with respect to the Riemannian
    measure, so K is complex symmetric and K.apply(f) equals resolvent_apply
    on the same nodes.

    Args:
        spec: Manifold.
        lam: Real λ.
        sign: "+" or "-".
        region: Radial interval (a, b) in the global coordinate.
        lambda_max: Cross-section cutoff Λ_max.
        r_points: Uniform radial nodes on [a, b].
        count: Cross-section sample points (minimal non-aliasing count by default).
        config: Solver configuration.

    Raises:
        SpecError: The region is empty or leaves the manifold.
        ResonanceError: λ is numerically exceptional for some mode.
    """
    config = config or get_config()
    a, b = float(region[0]), float(region[1])
    lo, hi = spec.profile.domain
    if spec.topology == "half_line":
        lo = 0.0
    if not (lo <= a < b <= hi):
        raise SpecError(ERROR_REGION.format(lo=a, hi=b, g_lo=lo, g_hi=hi))

    r = np.linspace(a, b, r_points)
    spectrum = eigen_list(spec.cross_section, lambda_max)
    basis, q = basis_matrix(spec.cross_section, spectrum, count)
    bases = mode_bases(spec, lam, spectrum, r, config=config)

    radial = {ell: _radial_kernel(mb, sign) for ell, mb in bases.items()}
    P = q.size
    K = np.zeros((r.size, P, r.size, P), dtype=complex)
    for j, c in enumerate(spectrum.channels):
        angular = np.outer(basis[:, j], basis[:, j])
        K += radial[c.index][:, None, :, None] * angular[None, :, None, :]
    K = K.reshape(r.size * P, r.size * P)

    mp = next(iter(bases.values())).problem
    g = np.exp(coefficients(mp, r).log_g)
    weights = np.outer(trapezoid_weights(r) * g, q).reshape(-1)
    scale = float(np.max(np.abs(K))) or 1.0
    symmetry = float(np.max(np.abs(K - K.T)) / scale)

    if spec.cross_section.kind == "circle":
        points = circle_points(spec.cross_section, P)
    else:
        points = np.arange(P, dtype=float)
    logger.info("U_O(%.6g %s i0): %d x %d nodes, symmetry %.2e", lam, sign, r.size, P, symmetry)
    return SourceToSolutionKernel(
        lam=float(lam), sign=sign, r=r, points=points, kernel=K, weights=weights, symmetry_error=symmetry,
    )
