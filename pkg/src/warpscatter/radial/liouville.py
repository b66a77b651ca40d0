"""Coefficients of the radial operator and its Liouville normal form."""

from typing import NamedTuple

import numpy as np

from warpscatter.core.numerics import fd4
from warpscatter.manifold.profiles import log_profile

from .models import ModeProblem, SampledSolution


class Coefficients(NamedTuple):
    log_rho: np.ndarray
    log_g: np.ndarray
    P: np.ndarray
    dP: np.ndarray
    E_over_rho2: np.ndarray
    Q: np.ndarray


def coefficients(mp: ModeProblem, r) -> Coefficients:
    """
    P = (n-1)ρ'/ρ, its derivative, E/ρ² and Q = P²/4 + P'/2 + E/ρ² at r.

    The Liouville substitution v = ρ^{(n-1)/2} u turns the radial equation
    into -v'' + Q v = λ v.
    """
    lp = log_profile(mp.profile, r)
    m = mp.n - 1
    P = m * lp.p
    dP = m * lp.dp
    if mp.E == 0:
        e_term = np.zeros_like(lp.log_rho)
    else:
        e_term = mp.E * np.exp(-2.0 * lp.log_rho)
    return Coefficients(
        log_rho=lp.log_rho,
        log_g=m * lp.log_rho,
        P=P,
        dP=dP,
        E_over_rho2=e_term,
        Q=0.25 * P * P + 0.5 * dP + e_term,
    )


def weighted_wronskian(mp: ModeProblem, a: SampledSolution, b: SampledSolution) -> np.ndarray:
    """ρ^{n-1}(a b' - a' b) on the common grid; constant for two exact solutions."""
    if a.r.shape != b.r.shape or not np.allclose(a.r, b.r, rtol=0, atol=1e-12):
        raise ValueError("weighted_wronskian needs solutions on the same grid")
    log_g = coefficients(mp, a.r).log_g
    core = a.mantissa * b.dmantissa - a.dmantissa * b.mantissa
    return np.exp(a.log_scale + b.log_scale + log_g) * core


def ode_residual(mp: ModeProblem, sol: SampledSolution) -> np.ndarray:
    """
    Relative pointwise residual of -u'' - P u' + (E/ρ² - λ) u on a uniform grid.

    u'' is the centred fourth-order finite difference of the stored u', so the
    residual covers the interior nodes r[2:-2] only; it is divided by
    |u''| + |P u'| + |(E/ρ² - λ) u| at each node.
    """
    r = sol.r
    h = float(r[1] - r[0])
    if not np.allclose(np.diff(r), h, rtol=1e-9, atol=0):
        raise ValueError("ode_residual needs a uniform grid")
    c = coefficients(mp, r[2:-2])
    u = sol.values[2:-2]
    du = sol.derivatives[2:-2]
    d2u = fd4(sol.derivatives, h)[2:-2]
    pot = (c.E_over_rho2 - complex(mp.lam)) * u
    res = -d2u - c.P * du + pot
    scale = np.abs(d2u) + np.abs(c.P * du) + np.abs(pot)
    return np.abs(res) / np.where(scale > 0, scale, 1.0)
