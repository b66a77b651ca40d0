"""
Outgoing and incoming resolvents, generalized Fourier coefficients and Parseval.

Per mode the two-sided Green kernel is

    G(r, s) = h_L(min(r, s)) h_R(max(r, s)) / C,    C = -W(h_L, h_R),

with h_L, h_R the solutions admissible at the left and right sides for the
chosen sign and W the weighted Wronskian. Beyond supp f the field is a
multiple of h_R (right) or h_L (left); that multiple is the far-field
coefficient f̃, and 𝓕^(±) f = (k/π)^{1/2} f̃ on open channels.
"""

import logging
import math
from concurrent.futures import ThreadPoolExecutor
from typing import Optional

import numpy as np
from scipy.integrate import cumulative_trapezoid

from warpscatter.core.config import SolverConfig, get_config
from warpscatter.core.errors import SpecError
from warpscatter.core.numerics import cumulative_to_end, trapezoid_weights
from warpscatter.manifold import EndFit, ManifoldSpec, classify_ends
from warpscatter.modes import ModeSpectrum, eigen_list, expand, synthesize
from warpscatter.radial import ModeProblem, SampledSolution, coefficients, wkb_data

from .channels import channel_space, distinct_modes, end_kind, mode_basis, oriented_profile
from .constants import ERROR_FIELD_SHAPE, WRONSKIAN_TOL
from .models import (
    FarFieldReadout,
    FourierCoefficients,
    ModeBasis,
    ParsevalReport,
    ResolventField,
    Sign,
)

logger = logging.getLogger(__name__)


def modal_source(spec: ManifoldSpec, samples, lambda_max: float) -> np.ndarray:
    """Mode coefficients (channels, radii) of f sampled as (radii, cross-section points)."""
    spectrum = eigen_list(spec.cross_section, lambda_max)
    return expand(spec.cross_section, spectrum, np.asarray(samples)).T


def field_samples(spec: ManifoldSpec, values, lambda_max: float, count: Optional[int] = None) -> np.ndarray:
    """Inverse of modal_source: (radii, points) samples of Σ_channels u_c(r) e_c."""
    spectrum = eigen_list(spec.cross_section, lambda_max)
    return synthesize(spec.cross_section, spectrum, np.asarray(values).T, count)


def mode_bases(
    spec: ManifoldSpec,
    lam: float,
    spectrum: ModeSpectrum,
    r: np.ndarray,
    fits: Optional[list[EndFit]] = None,
    config: Optional[SolverConfig] = None,
) -> dict[int, ModeBasis]:
    """Mode bases of every distinct eigenvalue, restricted to the grid r."""
    config = config or get_config()
    fits = fits or classify_ends(spec, config)

    def build(mode):
        return mode.index, mode_basis(spec, mode, lam, grid=r, fits=fits, config=config)

    with ThreadPoolExecutor(max_workers=config.threads) as pool:
        return dict(pool.map(build, distinct_modes(spectrum.channels)))


def _anchored(sol: SampledSolution, i: int) -> tuple[np.ndarray, float]:
    """Values scaled by e^{-log_scale[i]} and the removed log scale."""
    s = float(sol.log_scale[i])
    return sol.mantissa * np.exp(sol.log_scale - s), s


def _anchored_derivative(sol: SampledSolution, i: int) -> np.ndarray:
    return sol.dmantissa * np.exp(sol.log_scale - float(sol.log_scale[i]))


def _mode_green(basis: ModeBasis, sign: Sign, rows: np.ndarray, r: np.ndarray):
    """Field rows, far-field coefficients (right, left) and Wronskian spread of one mode."""
    i = basis.match
    h_l = basis.left.admissible(sign)
    h_r = basis.right.admissible(sign)
    a, s_l = _anchored(h_l, i)
    b, s_r = _anchored(h_r, i)
    da = _anchored_derivative(h_l, i)
    db = _anchored_derivative(h_r, i)
    g = np.exp(coefficients(basis.problem, r).log_g)

    W = g * (a * db - da * b)
    C = -W[i]
    spread = float(np.max(np.abs(W - W[i])) / abs(W[i]))

    left_part = cumulative_trapezoid(a * rows * g, r, axis=-1, initial=0)
    right_part = cumulative_to_end(b * rows * g, r)
    values = (b * left_part + a * right_part) / C
    w = trapezoid_weights(r)
    far_right = np.exp(-s_r) * np.sum(w * a * rows * g, axis=-1) / C
    far_left = np.exp(-s_l) * np.sum(w * b * rows * g, axis=-1) / C
    return values, far_right, far_left, spread


def _check_source(f, spectrum: ModeSpectrum, r: np.ndarray) -> np.ndarray:
    f = np.asarray(f, dtype=complex)
    need = (len(spectrum.channels), r.size)
    if f.shape != need:
        raise SpecError(ERROR_FIELD_SHAPE.format(got=f.shape, need=need))
    return f


def _resolve(spec, lam, sign, f, r, spectrum, bases) -> ResolventField:
    values = np.zeros_like(f)
    ends = (0, 1) if spec.topology == "full_line" else (0,)
    far = {e: np.zeros(f.shape[0], dtype=complex) for e in ends}
    spread = 0.0
    for ell, basis in bases.items():
        rows = [j for j, c in enumerate(spectrum.channels) if c.index == ell]
        u, right, left, s = _mode_green(basis, sign, f[rows], r)
        values[rows] = u
        far[0][rows] = right
        if 1 in far:
            far[1][rows] = left
        spread = max(spread, s)
    if spread > WRONSKIAN_TOL:
        logger.warning("resolvent: weighted Wronskian varies by %.2e across the grid", spread)
    return ResolventField(
        lam=float(lam),
        sign=sign,
        r=r,
        channels=tuple((c.index, c.slot) for c in spectrum.channels),
        eigenvalues=tuple(c.eigenvalue for c in spectrum.channels),
        values=values,
        far_field=far,
        wronskian_spread=spread,
    )


def resolvent_apply(
    spec: ManifoldSpec,
    lam: float,
    sign: Sign,
    f,
    r,
    lambda_max: float,
    bases: Optional[dict[int, ModeBasis]] = None,
    config: Optional[SolverConfig] = None,
) -> ResolventField:
    """
    R(λ ± i0) f for a compactly supported source given by its mode coefficients.

    Args:
        spec: Manifold.
        lam: Real λ.
        sign: "+" for the outgoing, "-" for the incoming boundary value.
        f: Mode coefficients, shape (channels, radii), channels in eigen_list order.
        r: Increasing radial grid containing supp f (starting at 0 on a half-line).
        lambda_max: Cross-section cutoff Λ_max.
        bases: Precomputed mode bases on r (from mode_bases).
        config: Solver configuration.

    Returns:
        ResolventField on r with far-field coefficients for every end.

    Raises:
        SpecError: f has the wrong shape.
        ResonanceError: λ is numerically exceptional for some mode.
    """
    config = config or get_config()
    r = np.asarray(r, dtype=float)
    spectrum = eigen_list(spec.cross_section, lambda_max)
    f = _check_source(f, spectrum, r)
    bases = bases or mode_bases(spec, lam, spectrum, r, config=config)
    field = _resolve(spec, lam, sign, f, r, spectrum, bases)
    logger.debug("R(%.6g %s i0): %d modes, spread %.2e", lam, sign, len(bases), field.wronskian_spread)
    return field


def fourier_from_field(
    spec: ManifoldSpec,
    field: ResolventField,
    lambda_max: float,
    config: Optional[SolverConfig] = None,
) -> FourierCoefficients:
    """𝓕^(±) over the physical open channels, read from the far-field coefficients."""
    space = channel_space(spec, field.lam, lambda_max, config=config)
    vol = spec.cross_section.vol
    values = np.empty(space.size, dtype=complex)
    for j, c in enumerate(space.channels):
        row = field.channels.index((c.index, c.slot))
        k = math.sqrt(space.lam - space.thresholds[c.end])
        value = math.sqrt(k / math.pi) * field.far_field[c.end][row]
        values[j] = value / math.sqrt(vol) if c.cusp else value
    return FourierCoefficients(lam=field.lam, sign=field.sign, space=space, values=values)


def fourier_coeff(
    spec: ManifoldSpec,
    lam: float,
    sign: Sign,
    f,
    r,
    lambda_max: float,
    config: Optional[SolverConfig] = None,
) -> FourierCoefficients:
    """
    Generalized Fourier coefficients 𝓕_j^(±)(λ) f of every end.

    Cusp ℓ = 0 entries are amplitudes of the constant function (weight vol(M)).
    """
    field = resolvent_apply(spec, lam, sign, f, r, lambda_max, config=config)
    return fourier_from_field(spec, field, lambda_max, config)


def _pairing(field: ResolventField, g: np.ndarray, spec: ManifoldSpec) -> complex:
    mp = ModeProblem(n=spec.n, profile=spec.profile, lam=field.lam, r_lo=float(field.r[0]))
    weight = np.exp(coefficients(mp, field.r).log_g) * trapezoid_weights(field.r)
    return complex(np.sum(field.values * np.conj(g) * weight))


def parseval_check(
    spec: ManifoldSpec,
    lam: float,
    f,
    g,
    r,
    lambda_max: float,
    config: Optional[SolverConfig] = None,
) -> ParsevalReport:
    """
    Both sides of (1/2πi)([R(λ+i0) - R(λ-i0)] f, g) = Σ_channels w 𝓕^(+)f conj(𝓕^(+)g).

    The inner product is L²(M) on the modal expansion, so sources are mode
    coefficients on r exactly as for resolvent_apply.
    """
    config = config or get_config()
    r = np.asarray(r, dtype=float)
    spectrum = eigen_list(spec.cross_section, lambda_max)
    f = _check_source(f, spectrum, r)
    g = _check_source(g, spectrum, r)
    bases = mode_bases(spec, lam, spectrum, r, config=config)

    plus = _resolve(spec, lam, "+", f, r, spectrum, bases)
    minus = _resolve(spec, lam, "-", f, r, spectrum, bases)
    resolvent_side = (_pairing(plus, g, spec) - _pairing(minus, g, spec)) / (2j * math.pi)

    Ff = fourier_from_field(spec, plus, lambda_max, config)
    Fg = fourier_from_field(spec, _resolve(spec, lam, "+", g, r, spectrum, bases), lambda_max, config)
    weights = np.asarray(Ff.space.weights)
    fourier_side = complex(np.sum(weights * Ff.values * np.conj(Fg.values)))
    difference = abs(resolvent_side - fourier_side)
    logger.info("parseval(%.6g): |difference| = %.3e", lam, difference)
    return ParsevalReport(
        lam=float(lam), resolvent_side=resolvent_side, fourier_side=fourier_side, difference=difference
    )


def far_field_readout(
    spec: ManifoldSpec,
    field: ResolventField,
    end: int,
    radius: float,
    config: Optional[SolverConfig] = None,
) -> FarFieldReadout:
    """
    Read f̃ from the WKB asymptotics u ρ^{(n-1)/2} e^{∓iφ} at R and 2R on end `end`.

    Both radii are taken in the end's own coordinate and must lie on the field
    grid beyond supp f; the readout is reported at both radii without
    extrapolation.
    """
    config = config or get_config()
    profile = oriented_profile(spec, end)
    coord = field.r if end == 0 else -field.r
    radii = (float(radius), 2.0 * float(radius))
    nodes = [int(np.argmin(np.abs(coord - R))) for R in radii]
    at = np.array([coord[i] for i in nodes])
    fit = next(f for f in classify_ends(spec, config) if f.end_id == end)
    tone = 1j if field.sign == "+" else -1j

    readout = np.full((len(field.channels), 2), np.nan, dtype=complex)
    for j, E in enumerate(field.eigenvalues):
        if end_kind(fit, E, field.lam) != "open":
            continue
        mp = ModeProblem(n=spec.n, profile=profile, E=E, lam=field.lam)
        wkb = wkb_data(mp, config=config)
        half_log_g = 0.5 * coefficients(mp, at).log_g
        readout[j] = field.values[j, nodes] * np.exp(half_log_g - tone * wkb.phi(at))
    exact = field.far_field[end]
    scale = float(np.max(np.abs(exact))) or 1.0
    finite = np.isfinite(readout[:, 0])
    spread = float(np.max(np.abs(readout[finite, 0] - readout[finite, 1])) / scale) if finite.any() else 0.0
    return FarFieldReadout(
        end=end, radii=(float(at[0]), float(at[1])), channels=field.channels,
        readout=readout, exact=exact, spread=spread,
    )
