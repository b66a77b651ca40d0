"""Assembly of the data an inverse run is allowed to see."""

import logging
from typing import Optional

from warpscatter.core.config import SolverConfig, get_config
from warpscatter.core.errors import SpecError
from warpscatter.manifold import ManifoldSpec, log_profile
from warpscatter.wave import TimeSourceToSolutionKernel, time_sts_kernel
from warpscatter.wave.constants import DEFAULT_DR

from .constants import DEFAULT_SIGMA, ERROR_KERNEL_MODE
from .models import InverseProblemData

logger = logging.getLogger(__name__)


def inverse_data_from_kernel(
    kernel: TimeSourceToSolutionKernel,
    spec: ManifoldSpec,
    sigma: float = DEFAULT_SIGMA,
) -> InverseProblemData:
    """Wrap a precomputed l = 0 kernel with the metric quantities on its nodes."""
    if kernel.ell != 0:
        raise SpecError(ERROR_KERNEL_MODE.format(ell=kernel.ell))
    local = log_profile(spec.profile, kernel.r)
    return InverseProblemData(
        kernel=kernel,
        region=kernel.region,
        n=spec.n,
        cross_section_vol=spec.cross_section.vol,
        log_rho=local.log_rho,
        dlog_rho=local.p,
        sigma=sigma,
    )


def build_inverse_data(
    spec: ManifoldSpec,
    region: tuple[float, float],
    T: float,
    dr: float = DEFAULT_DR,
    sigma: float = DEFAULT_SIGMA,
    config: Optional[SolverConfig] = None,
) -> InverseProblemData:
    """
    Measure V over [0, 2T] on O = region and record the metric on O.

    This is the only place where the inverse pipeline touches the manifold
    specification; everything downstream reads the returned object.

    Args:
        spec: Manifold generating the data.
        region: Observation region O.
        T: Half of the kernel horizon; every radius probed later is at most T.
        dr: Space step of the wave grid.
        sigma: Tikhonov parameter relative to the Gram scale.
        config: Solver configuration (cfl, threads).
    """
    config = config or get_config()
    kernel = time_sts_kernel(spec, 0, region, T, dr=dr, config=config)
    logger.info(
        "inverse data on O = [%g, %g]: T = %.4g, %d nodes, %d steps", *region, kernel.T, kernel.r.size, kernel.steps
    )
    return inverse_data_from_kernel(kernel, spec, sigma)
