"""Radiation-condition diagnostic built on D(k) = ∂_r + (n-1)ρ'/(2ρ) - iψ."""

import logging
from typing import Optional

import numpy as np
from scipy.integrate import cumulative_trapezoid

from .liouville import coefficients
from .models import ModeProblem, PhaseFamily, RadiationDefect, SampledSolution

logger = logging.getLogger(__name__)

# Log-log slope below which the dyadic averages count as decaying to zero
DECAY_SLOPE = -0.5
FIT_RADII = 4


def apply_d(mp: ModeProblem, sol: SampledSolution, phase: PhaseFamily) -> np.ndarray:
    """
    D(k)u on the solution grid, with ψ = ψ_m of the phase family.

    ψ_m only exists beyond the WKB onset radius phase.r[0]; below it ψ is
    taken as 0, so D(k)u there is ∂_r u + (n-1)ρ'/(2ρ) u. That bounded inner
    stretch adds a constant to the running integral of radiation_defect.
    """
    c = coefficients(mp, sol.r)
    below = int(np.count_nonzero(sol.r < phase.r[0]))
    if below:
        logger.debug(
            "apply_d: %d of %d nodes below the phase grid start %.4g use ψ = 0", below, sol.r.size, phase.r[0]
        )
    psi = phase.at(sol.r)
    return sol.derivatives + (0.5 * c.P - 1j * psi) * sol.values


def radiation_defect(
    mp: ModeProblem,
    sol: SampledSolution,
    phase: PhaseFamily,
    radii: Optional[np.ndarray] = None,
) -> RadiationDefect:
    """
    Dyadic averages R ↦ (1/R)∫_{r_lo}^R |D(k)u|² ρ^{n-1} dr.

    For an outgoing u the integral converges and the averages fall like 1/R;
    an incoming component leaves a constant limit of order 4k² times its weight.
    Nodes below the phase grid enter with ψ = 0 (see apply_d).

    Args:
        mp: Mode problem the solution belongs to.
        sol: Sampled solution.
        phase: Phase family at the channel's k.
        radii: Averaging radii; dyadic 2^j inside the grid by default.
    """
    r = sol.r
    if radii is None:
        start = max(1.0, float(r[0]) if r[0] > 0 else 1.0)
        j = np.arange(int(np.ceil(np.log2(start))), int(np.floor(np.log2(r[-1]))) + 1)
        radii = 2.0 ** j
    radii = np.asarray(radii, dtype=float)
    g = np.exp(coefficients(mp, r).log_g)
    density = np.abs(apply_d(mp, sol, phase)) ** 2 * g
    running = cumulative_trapezoid(density, r, initial=0)
    defect = np.interp(radii, r, running) / radii

    tail = slice(-min(FIT_RADII, radii.size), None)
    positive = defect[tail] > 0
    if np.count_nonzero(positive) >= 2:
        slope = float(np.polyfit(np.log(radii[tail][positive]), np.log(defect[tail][positive]), 1)[0])
    else:
        slope = -np.inf
    logger.debug("radiation defect: last %.3e, slope %.3f", defect[-1], slope)
    return RadiationDefect(radii=radii, defect=defect, slope=slope, decaying=slope < DECAY_SLOPE)
