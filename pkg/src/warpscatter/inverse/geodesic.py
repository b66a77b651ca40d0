"""
Geodesics of the (r, θ) plane dr² + ρ(r)² dθ².

The plane is totally geodesic in every warped product over a circle or a
sphere, so these curves are geodesics of the manifold. The oracle reads the
manifold specification and is never called by a recovery routine; the local
integrator uses only the metric on O.
"""

import logging
import math
from typing import Callable, Optional

import numpy as np
from scipy import integrate, optimize
from scipy.interpolate import CubicHermiteSpline

from warpscatter.core.errors import ChartError, DomainError, SpecError
from warpscatter.manifold import ManifoldSpec, log_profile

from .constants import (
    ERROR_CHART,
    ERROR_DIRECTION,
    ERROR_ORACLE_DOMAIN,
    ERROR_TURNING,
    ORACLE_ATOL,
    ORACLE_RTOL,
    ORBIT_GAP,
    TURNING_DIFF,
    TURNING_GAP,
    TURNING_SERIES,
    TURNING_STEP,
)
from .models import GeodesicSamples, InverseProblemData

logger = logging.getLogger(__name__)

# log ρ and ρ'/ρ at r
Metric = Callable[[float], tuple[float, float]]


def normal_sign(direction: float) -> int:
    """+1 for ψ = 0 (outward), -1 for ψ = π (inward)."""
    c = math.cos(direction)
    if abs(abs(c) - 1.0) > 1e-9:
        raise SpecError(ERROR_DIRECTION.format(psi=direction))
    return 1 if c > 0 else -1


def _geodesic_rhs(metric: Metric):
    def rhs(_s, y):
        r, _theta, dr, dtheta = y
        log_rho, p = metric(r)
        rho2 = math.exp(2.0 * log_rho)
        return [dr, dtheta, rho2 * p * dtheta**2, -2.0 * p * dr * dtheta]

    return rhs


def _initial_state(metric: Metric, q: float, direction: float) -> list[float]:
    log_rho, _ = metric(q)
    return [q, 0.0, math.cos(direction), math.sin(direction) * math.exp(-log_rho)]


def _leave_event(lo: float, hi: float):
    def event(_s, y):
        return min(y[0] - lo, hi - y[0])

    event.terminal = True
    return event


def local_geodesic(data: InverseProblemData, q: float, direction: float, s: float) -> tuple[float, float]:
    """
    End point (r, θ) of the unit-speed geodesic from (q, 0) with angle ψ to ∂_r, after arclength s.

    The metric is a Hermite spline through log ρ and ρ'/ρ at the nodes of O.

    Raises:
        ChartError: The geodesic leaves O before s.
    """
    spline = CubicHermiteSpline(data.r, data.log_rho, data.dlog_rho)
    slope = spline.derivative()

    def metric(r: float) -> tuple[float, float]:
        return float(spline(r)), float(slope(r))

    lo, hi = float(data.r[0]), float(data.r[-1])
    if not lo <= q <= hi:
        raise ChartError(ERROR_CHART.format(a=lo, b=hi, s=0.0))
    if s == 0:
        return float(q), 0.0
    sol = integrate.solve_ivp(
        _geodesic_rhs(metric),
        (0.0, s),
        _initial_state(metric, q, direction),
        method="DOP853",
        rtol=ORACLE_RTOL,
        atol=ORACLE_ATOL,
        events=_leave_event(lo, hi),
    )
    if sol.status == 1:
        raise ChartError(ERROR_CHART.format(a=lo, b=hi, s=float(sol.t_events[0][0])))
    return float(sol.y[0, -1]), float(sol.y[1, -1])


def _spec_metric(spec: ManifoldSpec) -> Metric:
    def metric(r: float) -> tuple[float, float]:
        out = log_profile(spec.profile, r)
        return float(out.log_rho), float(out.p)

    return metric


def manifold_bounds(spec: ManifoldSpec) -> tuple[float, float]:
    lo, hi = spec.profile.domain
    if spec.topology == "half_line":
        lo = max(lo, 0.0)
    return lo, hi


def _clairaut_route(
    metric: Metric,
    q: float,
    direction: float,
    s_eval: np.ndarray,
    bounds: tuple[float, float],
) -> tuple[float, np.ndarray, np.ndarray, list[float]]:
    """
    r' = ±√(1 - c²/ρ²), θ' = c/ρ² with c = ρ(q) sin ψ.

    Away from turning points the radius is integrated directly. Once
    1 - c²/ρ² falls to TURNING_GAP the geodesic is followed in u with
    r = r_t ± u², where r_t solves ρ(r_t) = |c|; u' is smooth through u = 0,
    so the crossing carries no square-root singularity.
    """
    log_rho_q, p_q = metric(q)
    c = math.exp(log_rho_q) * math.sin(direction)
    length = float(s_eval[-1])
    lo, hi = bounds

    def gap(r: float) -> float:
        return 1.0 - c * c * math.exp(-2.0 * metric(r)[0])

    def rhs_for(sign: int):
        def rhs(_s, y):
            rho2 = math.exp(2.0 * metric(y[0])[0])
            return [sign * math.sqrt(max(0.0, 1.0 - c * c / rho2)), c / rho2]

        return rhs

    def near_turn(_s, y):
        return gap(y[0]) - TURNING_GAP

    near_turn.terminal = True
    near_turn.direction = -1

    def clear(_s, y):
        return gap(y[0]) - 2.0 * TURNING_GAP

    clear.terminal = True
    clear.direction = 1

    def turning_radius(r_from: float, sign: int) -> Optional[float]:
        # first root of the gap ahead in direction `sign`, or None past the minimum of ρ
        if gap(r_from) <= 0:
            return r_from
        step, r_near = TURNING_STEP, r_from
        while True:
            r_next = r_near + sign * step
            if not lo < r_next < hi:
                return None
            if gap(r_next) <= 0:
                return optimize.brentq(gap, *sorted((r_near, r_next)), xtol=1e-15, rtol=4 * np.finfo(float).eps)
            if sign * metric(r_next)[1] >= 0:
                r_m = optimize.brentq(lambda x: metric(x)[1], *sorted((r_near, r_next)), xtol=1e-15)
                if gap(r_m) > 0:
                    return None
                return optimize.brentq(gap, *sorted((r_near, r_m)), xtol=1e-15, rtol=4 * np.finfo(float).eps)
            r_near = r_next
            step *= 2.0

    def exit_offset(r_t: float, side: int) -> float:
        # |r - r_t| where the gap regains TURNING_GAP on the allowed side
        step, r_far = TURNING_STEP, r_t
        while gap(r_far) < TURNING_GAP:
            r_far += side * step
            step *= 2.0
            if not lo < r_far < hi:
                raise DomainError(ERROR_ORACLE_DOMAIN.format(s=float("nan")))
        r_x = optimize.brentq(lambda x: gap(x) - TURNING_GAP, *sorted((r_t, r_far)))
        return abs(r_x - r_t)

    def crossing(s0: float, th0: float, r_t: float, side: int, u0: float, u_exit: float):
        # (u, θ) from u0 to -u_exit on r = r_t + side·u²
        log_rho_t, p_t = metric(r_t)
        weight = 2.0 * c * c * math.exp(-2.0 * log_rho_t)
        dp = (metric(r_t + TURNING_DIFF)[1] - metric(r_t - TURNING_DIFF)[1]) / (2.0 * TURNING_DIFF)
        slope = side * weight * p_t
        curvature = weight * (dp - 2.0 * p_t * p_t)

        def rhs(_s, y):
            a = y[0] * y[0]
            log_rho = metric(r_t + side * a)[0]
            if abs(y[0]) < TURNING_SERIES:
                h2 = 0.25 * (slope + 0.5 * curvature * a)
            else:
                h2 = gap(r_t + side * a) / (4.0 * a)
            return [-math.sqrt(max(h2, 0.0)), c * math.exp(-2.0 * log_rho)]

        def done(_s, y):
            return y[0] + u_exit

        done.terminal = True
        done.direction = -1

        def apex(_s, y):
            return y[0]

        apex.direction = -1
        return integrate.solve_ivp(
            rhs,
            (s0, length),
            [u0, th0],
            method="DOP853",
            rtol=ORACLE_RTOL,
            atol=ORACLE_ATOL,
            events=(done, apex),
            dense_output=True,
        )

    s_pts, r_pts, th_pts, turns = [0.0], [q], [0.0], []
    s0, r0, th0 = 0.0, q, 0.0
    sign = 1 if math.cos(direction) >= 0 else -1
    pending = None
    armed = True
    if gap(q) <= ORBIT_GAP and abs(p_q) < 1e-12:
        # orbit of an extremum of ρ: the geodesic stays on it
        return c, np.full(s_eval.shape, q), c * math.exp(-2.0 * log_rho_q) * s_eval, []
    if gap(q) <= TURNING_GAP:
        look = sign if sign * p_q <= 0 else -sign
        r_t = turning_radius(q, look)
        if r_t is None:
            armed = False
        else:
            offset = math.sqrt(abs(q - r_t))
            u0 = offset if look == sign else -offset
            pending = (r_t, -look, u0, max(math.sqrt(exit_offset(r_t, -look)), offset))

    guard = 0
    while s0 < length:
        guard += 1
        if guard > 10_000:
            raise DomainError(ERROR_TURNING.format(s=s0))
        if pending is not None:
            r_t, side, u0, u_exit = pending
            pending = None
            sol = crossing(s0, th0, r_t, side, u0, u_exit)
            inside = s_eval[(s_eval > s0) & (s_eval <= sol.t[-1])]
            if inside.size:
                u, th = sol.sol(inside)
                s_pts.extend(inside)
                r_pts.extend(r_t + side * u * u)
                th_pts.extend(th)
            turns.extend(float(t) for t in sol.t_events[1])
            s0, th0 = float(sol.t[-1]), float(sol.y[1, -1])
            r0 = r_t + side * float(sol.y[0, -1]) ** 2
            sign = side
            armed = True
            if sol.status != 1:
                break
            continue

        sol = integrate.solve_ivp(
            rhs_for(sign),
            (s0, length),
            [r0, th0],
            method="DOP853",
            rtol=ORACLE_RTOL,
            atol=ORACLE_ATOL,
            events=(near_turn if armed else clear, _leave_event(lo, hi)),
            dense_output=True,
        )
        inside = s_eval[(s_eval > s0) & (s_eval <= sol.t[-1])]
        if inside.size:
            dense = sol.sol(inside)
            s_pts.extend(inside)
            r_pts.extend(dense[0])
            th_pts.extend(dense[1])
        if sol.status != 1:
            break
        if sol.t_events[1].size:
            raise DomainError(ERROR_ORACLE_DOMAIN.format(s=float(sol.t_events[1][0])))
        s0, (r0, th0) = float(sol.t[-1]), sol.y[:, -1]
        if not armed:
            armed = True
            continue
        r_t = turning_radius(r0, sign)
        if r_t is None:
            armed = False
            continue
        offset = math.sqrt(abs(r0 - r_t))
        pending = (r_t, -sign, offset, offset)

    order = np.argsort(s_pts, kind="stable")
    s_arr, r_arr, th_arr = (np.asarray(v)[order] for v in (s_pts, r_pts, th_pts))
    return c, np.interp(s_eval, s_arr, r_arr), np.interp(s_eval, s_arr, th_arr), turns


def geodesic_oracle(
    spec: ManifoldSpec,
    q: float,
    direction: float,
    length: float,
    samples: int = 201,
) -> GeodesicSamples:
    """
    Unit-speed geodesic from (q, 0) with angle ψ to ∂_r, by the Clairaut integral and by the geodesic equations.

    Args:
        spec: Manifold (the oracle is ground truth and reads the profile).
        q: Starting radius.
        direction: Angle ψ between the initial velocity and ∂_r.
        length: Arclength; distances along the curve are the s samples.
        samples: Number of equally spaced s samples.

    Raises:
        DomainError: The geodesic reaches the edge of the manifold.
    """
    metric = _spec_metric(spec)
    bounds = manifold_bounds(spec)
    s = np.linspace(0.0, float(length), samples)
    c, r, theta, turns = _clairaut_route(metric, q, direction, s, bounds)

    direct = integrate.solve_ivp(
        _geodesic_rhs(metric),
        (0.0, float(length)),
        _initial_state(metric, q, direction),
        method="DOP853",
        rtol=ORACLE_RTOL,
        atol=ORACLE_ATOL,
        t_eval=s,
        events=_leave_event(*bounds),
    )
    if direct.status == 1:
        raise DomainError(ERROR_ORACLE_DOMAIN.format(s=float(direct.t_events[0][0])))
    agreement = float(max(np.max(np.abs(r - direct.y[0])), np.max(np.abs(theta - direct.y[1]))))
    logger.debug(
        "geodesic from r=%.4g, ψ=%.4g: c=%.6g, %d turning points, agreement %.2e",
        q,
        direction,
        c,
        len(turns),
        agreement,
    )
    return GeodesicSamples(
        q=q,
        direction=direction,
        clairaut=c,
        s=s,
        r=r,
        theta=theta,
        direct_r=direct.y[0],
        direct_theta=direct.y[1],
        turning_points=tuple(turns),
        agreement=agreement,
    )


def focal_distance(spec: ManifoldSpec, q: float, direction: float, length: float) -> float:
    """
    Distance from the orbit of q to its first focal point along the normal geodesic, capped at `length`.

    The normal Jacobi field J'' = (ρ''/ρ) J, J(0) = 1, J'(0) = ±ρ'/ρ(q) is
    integrated along r = q ± s; the geodesic also ends where it meets the edge
    of the manifold.
    """
    sign = normal_sign(direction)
    lo, hi = manifold_bounds(spec)
    edge = (q - lo) if sign < 0 else (hi - q)
    span = min(float(length), edge)

    def rhs(s, y):
        out = log_profile(spec.profile, q + sign * s)
        return [y[1], float(out.dp + out.p**2) * y[0]]

    def zero(_s, y):
        return y[0]

    zero.terminal = True
    zero.direction = -1
    p_q = float(log_profile(spec.profile, q).p)
    end = span * (1.0 - 1e-12)
    sol = integrate.solve_ivp(rhs, (0.0, end), [1.0, sign * p_q], rtol=1e-10, atol=1e-12, events=zero)
    if sol.t_events[0].size:
        return float(sol.t_events[0][0])
    return span
