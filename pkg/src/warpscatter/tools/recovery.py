"""Runners for the inverse pipeline and its geodesic oracle."""

import logging
import math

import numpy as np

from warpscatter.core.errors import SpecError
from warpscatter.inverse import (
    build_inverse_data,
    distance_recover,
    focal_distance,
    geodesic_oracle,
    volume_oracle,
    volume_recover,
)

from .constants import ERROR_MISSING
from .inputs import load_spec
from .models import CommandResult, RunConfig

logger = logging.getLogger(__name__)


def _region(config: RunConfig) -> tuple[float, float]:
    if config.region is None:
        raise SpecError(ERROR_MISSING.format(command=config.command, flag="--region A:B"))
    return config.region


def run_invert_volume(config: RunConfig) -> CommandResult:
    """Vol(M(W, T)) from data measured on O, against the closed form on the manifold."""
    spec = load_spec(config)
    region = _region(config)
    band = config.band or region
    data = build_inverse_data(spec, region, config.T, dr=config.dr, sigma=config.sigma)
    exact = volume_oracle(spec, band, data.T)
    report = volume_recover(data, band, data.T, exact=exact)
    return CommandResult(
        command="invert-volume",
        payload={"region": region, **report.model_dump()},
        series={"continuation": {"sigma": np.asarray(report.sigmas), "volume": np.asarray(report.volumes)}},
        summary=(
            f"Vol(M(W, {report.T:.4g})) = {report.volume:.6g}, closed form {exact:.6g}, "
            f"relative error {report.relative_error:.3e}",
        ),
        passed=report.relative_error <= config.tol and report.monotone,
    )


def run_invert_distance(config: RunConfig) -> CommandResult:
    """t* ≈ d(γ_{q,ψ}(r̃), z) from crossing-ball tests, against the orbit distance on the manifold."""
    spec = load_spec(config)
    region = _region(config)
    if config.z is None:
        raise SpecError(ERROR_MISSING.format(command=config.command, flag="--z"))
    data = build_inverse_data(spec, region, config.T, dr=config.dr, sigma=config.sigma)
    report = distance_recover(data, config.q, config.psi, config.r_tilde, config.z, epsilons=config.epsilons)
    p, _ = geodesic_oracle(spec, config.q, config.psi, config.r_tilde).endpoint
    exact = abs(p - config.z)
    error = abs(report.distance - exact)
    logger.info("distance %.6g against %.6g (tolerance %.3g)", report.distance, exact, report.tolerance)
    return CommandResult(
        command="invert-distance",
        payload={"region": region, "T": data.T, "exact": exact, "error": error, **report.model_dump()},
        series={"extrapolation": {"epsilon": np.asarray(report.epsilons), "t_star": np.asarray(report.t_stars)}},
        summary=(f"t* = {report.distance:.5g} ± {report.tolerance:.2g}, orbit distance {exact:.5g}",),
        passed=error <= report.tolerance,
    )


def run_oracle_geodesic(config: RunConfig) -> CommandResult:
    """A geodesic by the Clairaut integral and by the geodesic equations, with its focal distance when normal."""
    spec = load_spec(config)
    g = geodesic_oracle(spec, config.q, config.psi, config.length)
    payload = {
        "q": g.q,
        "direction": g.direction,
        "length": g.length,
        "clairaut": g.clairaut,
        "endpoint": g.endpoint,
        "turning_points": g.turning_points,
        "agreement": g.agreement,
    }
    if math.isclose(math.sin(config.psi), 0.0, abs_tol=1e-12):
        payload["focal_distance"] = focal_distance(spec, config.q, config.psi, config.length)
    return CommandResult(
        command="oracle-geodesic",
        payload=payload,
        series={
            "clairaut": {"s": g.s, "r": g.r, "theta": g.theta},
            "direct": {"s": g.s, "r": g.direct_r, "theta": g.direct_theta},
        },
        summary=(f"endpoint (r, θ) = ({g.endpoint[0]:.8g}, {g.endpoint[1]:.8g}), agreement {g.agreement:.2e}",),
        passed=g.agreement <= config.tol,
    )
