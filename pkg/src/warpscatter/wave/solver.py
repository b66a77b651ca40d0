"""Leapfrog evolution of single modes and the finite-speed check."""

import logging
import math
from concurrent.futures import ThreadPoolExecutor
from typing import Callable, Iterable, Optional

import numpy as np

from warpscatter.core.config import SolverConfig, get_config
from warpscatter.core.errors import SpecError
from warpscatter.manifold import ManifoldSpec
from warpscatter.modes import CrossSection, eigen_list

from .constants import DEFAULT_DR, ERROR_MODE, ERROR_WINDOW, HALO_CELLS, LEAKAGE_TOL
from .models import FiniteSpeedReport, InitialData, TimeSource, WaveField, WaveGrid
from .operator import WaveOperator, build_operator, time_step

logger = logging.getLogger(__name__)

Forcing = Callable[[float], np.ndarray]


def mode_eigenvalue(cs: CrossSection, ell: int) -> float:
    """λ_ℓ, the ℓ-th distinct eigenvalue of the cross-section."""
    if ell < 0:
        raise SpecError(ERROR_MODE.format(ell=ell))
    lambda_max = 1.0
    for _ in range(64):
        distinct = eigen_list(cs, lambda_max).distinct()
        if len(distinct) > ell:
            return float(distinct[ell][1])
        if cs.kind == "custom" and lambda_max > cs.eigenvalues[-1].eigenvalue:
            break
        lambda_max *= 2.0
    raise SpecError(ERROR_MODE.format(ell=ell))


def default_grid(spec: ManifoldSpec, reach: tuple[float, float], T: float, dr: float = DEFAULT_DR) -> WaveGrid:
    """
    Grid holding the domain of influence reach ± T plus a halo.

    On a half-line the grid stops at the wall r = 0; on the full line it is
    clipped to the profile's domain.
    """
    halo = HALO_CELLS * dr
    lo, hi = reach[0] - T - halo, reach[1] + T + halo
    d_lo, d_hi = spec.profile.domain
    if spec.topology == "half_line":
        lo = max(lo, 0.0)
    elif lo <= d_lo:
        lo = d_lo + dr
    if hi >= d_hi:
        hi = d_hi - dr
    return WaveGrid(r_lo=lo, r_hi=hi, dr=dr)


def _reach(source: Optional[TimeSource], initial: Optional[InitialData]) -> tuple[float, float]:
    spans = [s for s in (source and source.r_support, initial and initial.support) if s]
    if not spans:
        return 0.0, 1.0
    return min(s[0] for s in spans), max(s[1] for s in spans)


def source_forcing(source: TimeSource, r: np.ndarray) -> Forcing:
    """t ↦ F(t, r) on the grid, with the radial profile of separable sources evaluated once."""
    if not source.separable:
        return lambda t: source.evaluate(t, r)
    profile = source.spatial(r)

    def forcing(t: float) -> np.ndarray:
        return source.temporal(t) * profile

    return forcing


def march(
    op: WaveOperator,
    dt: float,
    steps: int,
    u0: np.ndarray,
    v0: Optional[np.ndarray] = None,
    forcing: Optional[Forcing] = None,
    keep: slice | np.ndarray = slice(None),
    stride: int = 1,
    track_energy: bool = True,
) -> dict:
    """
    Leapfrog u^{n+1} = 2u^n - u^{n-1} + dt²(F^n - A u^n).

    The first step is u¹ = u⁰ + dt v⁰ + ½dt²(F⁰ - A u⁰). `u0` may carry
    trailing columns, one independent evolution per column; energy tracking
    then must be off. The discrete energy

        E^{n+½} = ½‖(u^{n+1} - u^n)/dt‖² + ½ Re⟨A u^{n+1}, u^n⟩

    changes by exactly W^n = Re⟨F^n, (u^{n+1} - u^{n-1})/2⟩ per step.
    """
    dtype = np.result_type(u0, v0 if v0 is not None else 0.0, forcing(0.0) if forcing else 0.0)
    u_prev = np.array(u0, dtype=dtype)
    u_prev[0] = u_prev[-1] = 0
    F = forcing(0.0) if forcing else None
    u_cur = u_prev.copy()
    if v0 is not None:
        u_cur += dt * v0
    rhs = -op.apply(u_prev)
    if F is not None:
        rhs = rhs + F
    u_cur += 0.5 * dt * dt * rhs
    u_cur[0] = u_cur[-1] = 0

    kept_t = [0.0]
    kept_u = [u_prev[keep].copy()]
    energy, work, f_norm = [], [], [0.0 if F is None else math.sqrt(op.norm2(F))]
    if steps == 0:
        return {"t": kept_t, "u": kept_u, "energy": energy, "work": work, "f_norm": f_norm}

    def record(n: int, u: np.ndarray) -> None:
        if n % stride == 0 or n == steps:
            kept_t.append(n * dt)
            kept_u.append(u[keep].copy())

    def half_energy(u_new, u_old) -> float:
        kinetic = op.norm2((u_new - u_old) / dt)
        return 0.5 * kinetic + 0.5 * op.inner(op.apply(u_new), u_old).real

    if track_energy:
        energy.append(half_energy(u_cur, u_prev))
        work.append(0.0)
    record(1, u_cur)
    for n in range(1, steps):
        tn = n * dt
        F = forcing(tn) if forcing else None
        rhs = -op.apply(u_cur)
        if F is not None:
            rhs += F
        u_next = 2.0 * u_cur - u_prev + dt * dt * rhs
        u_next[0] = u_next[-1] = 0
        if track_energy:
            w = 0.0 if F is None else op.inner(F, 0.5 * (u_next - u_prev)).real
            work.append(work[-1] + w)
            energy.append(half_energy(u_next, u_cur))
            f_norm.append(0.0 if F is None else math.sqrt(op.norm2(F)))
        u_prev, u_cur = u_cur, u_next
        record(n + 1, u_cur)
    return {"t": kept_t, "u": kept_u, "energy": energy, "work": work, "f_norm": f_norm}


def _energy_summary(run: dict, dt: float) -> tuple[np.ndarray, np.ndarray, float, float]:
    energy = np.asarray(run["energy"], dtype=float)
    work = np.asarray(run["work"], dtype=float)
    if energy.size == 0:
        return energy, work, 0.0, 0.0
    scale = max(float(np.max(np.abs(energy))), float(np.max(np.abs(work))), 1e-300)
    drift = float(np.max(np.abs(energy - energy[0] - work)) / scale)
    # √E(t) <= √E(0) + (1/√2) ∫_0^t ‖F‖
    f_norm = np.asarray(run["f_norm"], dtype=float)
    pushed = np.concatenate([[0.0], np.cumsum(0.5 * (f_norm[1:] + f_norm[:-1]) * dt)])[: energy.size]
    pushed = pushed + 0.5 * f_norm[: energy.size] * dt
    bound = math.sqrt(max(energy[0], 0.0)) + pushed / math.sqrt(2.0)
    margin = float(np.min(bound - np.sqrt(np.maximum(energy, 0.0))) / math.sqrt(scale))
    return energy, work, drift, margin


def wave_solve(
    spec: ManifoldSpec,
    ell: int,
    source: Optional[TimeSource],
    T_final: float,
    initial: Optional[InitialData] = None,
    grid: Optional[WaveGrid] = None,
    dt: Optional[float] = None,
    window: Optional[tuple[float, float]] = None,
    stride: int = 1,
    config: Optional[SolverConfig] = None,
) -> WaveField:
    """
    Evolve mode ℓ from rest (or from `initial`) under the forcing `source`.

    Args:
        spec: Manifold.
        ell: Index of the cross-section eigenvalue λ_ℓ.
        source: Forcing F(t, r), or None for homogeneous evolution.
        T_final: End time.
        initial: Initial displacement (zero velocity).
        grid: Radial grid; by default the support of the data ± (T_final + halo).
        dt: Time step; by default the largest step <= cfl · dt_max dividing T_final.
        window: Radial interval whose nodes are stored (all nodes by default).
        stride: Store every stride-th step (the last step always); 0 keeps only t = 0 and T_final.
        config: Solver configuration (cfl).

    Raises:
        StepError: dt violates the stability bound.
        SpecError: The grid leaves the manifold, the window is empty or the source
            has samples outside its declared support.
    """
    config = config or get_config()
    if source is not None:
        source.check_support()
    eigenvalue = mode_eigenvalue(spec.cross_section, ell)
    grid = grid or default_grid(spec, _reach(source, initial), T_final)
    op = build_operator(spec, eigenvalue, grid)
    dt, steps = time_step(op, T_final, config.cfl, dt)

    r = op.r
    if window is None:
        keep = np.arange(r.size)
    else:
        keep = np.flatnonzero((r >= window[0] - 1e-12) & (r <= window[1] + 1e-12))
        if keep.size == 0:
            raise SpecError(ERROR_WINDOW.format(lo=window[0], hi=window[1]))

    dtype = complex if source is not None and source.is_complex else float
    u0 = np.zeros(r.size, dtype=dtype)
    if initial is not None:
        u0 = u0 + initial.evaluate(r)
    forcing = None if source is None else source_forcing(source, r)

    every = max(steps, 1) if stride <= 0 else int(stride)
    run = march(op, dt, steps, u0, forcing=forcing, keep=keep, stride=every)
    energy, work, drift, margin = _energy_summary(run, dt)
    logger.info(
        "wave l=%d: %d nodes, %d steps of %.4g (courant %.3f), energy drift %.2e",
        ell, r.size, steps, dt, dt / op.dt_max, drift,
    )
    return WaveField(
        ell=ell,
        eigenvalue=eigenvalue,
        grid=grid,
        dt=dt,
        steps=steps,
        stride=every,
        courant=dt / op.dt_max,
        r=r[keep],
        weights=op.weights[keep],
        t=np.asarray(run["t"]),
        u=np.asarray(run["u"]),
        energy_times=(np.arange(energy.size) + 0.5) * dt,
        energy=energy,
        work=work,
        energy_drift=drift,
        inequality_margin=margin,
    )


def wave_solve_modes(
    spec: ManifoldSpec,
    ells: Iterable[int],
    source: Optional[TimeSource],
    T_final: float,
    config: Optional[SolverConfig] = None,
    **kwargs,
) -> dict[int, WaveField]:
    """wave_solve for several modes; modes are independent and evolve concurrently."""
    config = config or get_config()

    def solve(ell: int) -> tuple[int, WaveField]:
        return ell, wave_solve(spec, ell, source, T_final, config=config, **kwargs)

    with ThreadPoolExecutor(max_workers=config.threads) as pool:
        return dict(pool.map(solve, list(ells)))


def finite_speed_check(
    wf: WaveField,
    band: tuple[float, float],
    T: Optional[float] = None,
    halo: Optional[float] = None,
) -> FiniteSpeedReport:
    """
    max |u(T)| outside band ± (T + halo), for data supported in the radial band.

    On a warped product the distance to a band is the radial gap, so the
    domain of influence of the band at time T is band ± T.

    Args:
        wf: Wave field storing the snapshot at T.
        band: Radial support (a, b) of the data.
        T: Time of the snapshot (T_final by default).
        halo: Extra margin (two cells by default).
    """
    T = wf.T_final if T is None else float(T)
    halo = 2.0 * wf.grid.dr if halo is None else float(halo)
    u = np.abs(wf.at(T))
    outside = (wf.r < band[0] - T - halo) | (wf.r > band[1] + T + halo)
    leakage = float(np.max(u[outside])) if np.any(outside) else 0.0
    peak = float(np.max(u))
    relative = leakage / peak if peak > 0 else 0.0
    return FiniteSpeedReport(
        band=(float(band[0]), float(band[1])),
        T=T,
        halo=halo,
        leakage=leakage,
        relative=relative,
        passed=relative < LEAKAGE_TOL,
    )
