"""Cross-section spectra and mode projections."""

import logging
import math
from typing import Optional

import numpy as np

from warpscatter.core.errors import AliasingError, SpecError

from .constants import (
    ERROR_ALIASING,
    ERROR_CUSTOM_FIRST,
    ERROR_CUSTOM_UNSORTED,
    ERROR_LAMBDA_MAX,
    ERROR_NO_EIGENFUNCTIONS,
    ERROR_SAMPLE_COUNT,
)
from .models import Channel, CrossSection, ModeSpectrum

logger = logging.getLogger(__name__)

_REL = 1e-12


def sphere_multiplicity(ell: int, m: int) -> int:
    """Dimension of degree-ℓ spherical harmonics on S^m."""
    lower = math.comb(ell + m - 2, m) if ell >= 2 else 0
    return math.comb(ell + m, m) - lower


def eigen_list(cs: CrossSection, lambda_max: float) -> ModeSpectrum:
    """
    All channels of `cs` with eigenvalue <= lambda_max, sorted.

    Raises:
        SpecError: Negative lambda_max or a malformed custom spectrum.
    """
    if lambda_max < 0:
        raise SpecError(ERROR_LAMBDA_MAX.format(value=lambda_max))
    cutoff = lambda_max * (1 + _REL) + _REL
    channels: list[Channel] = []
    if cs.kind == "circle":
        ell = 0
        while (lam := (2 * math.pi * ell / cs.length) ** 2) <= cutoff:
            if ell == 0:
                channels.append(Channel(index=0, eigenvalue=0.0, slot=0, label="const"))
            else:
                channels.append(Channel(index=ell, eigenvalue=lam, slot=0, label=f"cos{ell}"))
                channels.append(Channel(index=ell, eigenvalue=lam, slot=1, label=f"sin{ell}"))
            ell += 1
    elif cs.kind == "sphere":
        m = cs.dim
        ell = 0
        while (lam := float(ell * (ell + m - 1))) <= cutoff:
            for slot in range(sphere_multiplicity(ell, m)):
                channels.append(Channel(index=ell, eigenvalue=lam, slot=slot, label=f"Y{ell}.{slot}"))
            ell += 1
    else:
        values = [e.eigenvalue for e in cs.eigenvalues]
        if any(b < a for a, b in zip(values, values[1:])):
            raise SpecError(ERROR_CUSTOM_UNSORTED)
        if values[0] != 0 or cs.eigenvalues[0].multiplicity != 1:
            raise SpecError(ERROR_CUSTOM_FIRST)
        for ell, entry in enumerate(cs.eigenvalues):
            if entry.eigenvalue > cutoff:
                break
            for slot in range(entry.multiplicity):
                channels.append(
                    Channel(index=ell, eigenvalue=entry.eigenvalue, slot=slot, label=f"e{ell}.{slot}")
                )
    logger.debug("eigen_list(%s, %.4g): %d channels", cs.kind, lambda_max, len(channels))
    return ModeSpectrum(channels=tuple(channels), lambda_max=lambda_max, vol=cs.vol)


def circle_points(cs: CrossSection, count: int) -> np.ndarray:
    """Uniform sample points θ_j = j L / count."""
    return cs.length * np.arange(count) / count


def basis_matrix(cs: CrossSection, spectrum: ModeSpectrum, count: Optional[int] = None):
    """
    Orthonormal eigenfunctions sampled on the cross-section quadrature.

    Returns:
        (basis, weights): basis has shape (samples, channels); weights are the
        quadrature weights of the sample points.

    Raises:
        AliasingError: Too few circle samples for the highest channel.
        SpecError: The cross-section carries no eigenfunction samples.
    """
    if cs.kind == "circle":
        top = max(c.index for c in spectrum.channels)
        if count is None:
            count = 2 * top + 1
        if count < 2 * top + 1:
            raise AliasingError(ERROR_ALIASING.format(count=count, need=2 * top + 1), top=top)
        theta = circle_points(cs, count)
        cols = []
        for c in spectrum.channels:
            if c.index == 0:
                cols.append(np.full(count, 1.0 / math.sqrt(cs.length)))
                continue
            arg = 2 * math.pi * c.index * theta / cs.length
            wave = np.cos(arg) if c.slot == 0 else np.sin(arg)
            cols.append(math.sqrt(2.0 / cs.length) * wave)
        return np.column_stack(cols), np.full(count, cs.length / count)
    if cs.kind == "custom" and cs.eigenfunctions is not None:
        table = np.asarray(cs.eigenfunctions, dtype=float)
        if table.shape[0] < len(spectrum.channels):
            raise SpecError(ERROR_NO_EIGENFUNCTIONS.format(kind="custom table too short for"))
        weights = np.asarray(cs.sample_weights, dtype=float)
        if count is not None and count != weights.size:
            raise SpecError(ERROR_SAMPLE_COUNT.format(count=count, need=weights.size))
        return table[: len(spectrum.channels)].T, weights
    raise SpecError(ERROR_NO_EIGENFUNCTIONS.format(kind=cs.kind))


def expand(cs: CrossSection, spectrum: ModeSpectrum, samples) -> np.ndarray:
    """
    Mode coefficients of sampled functions (last axis = cross-section samples).

    Uses the quadrature of `basis_matrix`: uniform trapezoid on circles.
    """
    samples = np.asarray(samples)
    basis, weights = basis_matrix(cs, spectrum, samples.shape[-1])
    return (samples * weights) @ basis


def synthesize(cs: CrossSection, spectrum: ModeSpectrum, coeffs, count: Optional[int] = None):
    """Sample Σ_k coeffs_k e_k on the cross-section quadrature points."""
    basis, _ = basis_matrix(cs, spectrum, count)
    return np.asarray(coeffs) @ basis.T
