"""
Data models for the time-domain wave problem.

Per cross-section mode ℓ the field u(t, r) solves

    u_tt - ρ^{1-n} ∂_r(ρ^{n-1} ∂_r u) + (λ_ℓ/ρ²) u = F(t, r)

on a truncated radial grid with Dirichlet ends, starting from rest unless
initial data are given.
"""

import math
from typing import Literal, Optional

import numpy as np
from pydantic import BaseModel, ConfigDict, Field, model_validator
from scipy.interpolate import RegularGridInterpolator

from warpscatter.core.errors import SpecError
from warpscatter.core.numerics import bump, smoothstep

from .constants import ERROR_GRID, ERROR_SEPARABLE, ERROR_SOURCE, ERROR_SUPPORT, GAUSSIAN_WIDTHS

SourceKind = Literal["bump", "harmonic", "samples"]


def _bump_on(x, support: tuple[float, float]) -> np.ndarray:
    lo, hi = support
    return bump((np.asarray(x, dtype=float) - 0.5 * (lo + hi)) / (0.5 * (hi - lo)))


class TimeSource(BaseModel):
    """
    Forcing F(t, r) of one mode.

    bump      amplitude · ψ(r; r_support) · ψ(t; t_support), ψ the C^∞ bump
    harmonic  amplitude · ψ(r; r_support) · e^{-iωt} · S((t - t0)/ramp), S a C² switch-on
    samples   bilinear interpolation of `values` on (t_samples, r_samples)
    """

    model_config = ConfigDict(frozen=True, arbitrary_types_allowed=True)

    kind: SourceKind = Field("bump", description="Source family")
    r_support: tuple[float, float] = Field(..., description="Radial support (a, b)")
    t_support: tuple[float, float] = Field((0.0, 1.0), description="Time support; (t0, inf) for harmonic")
    amplitude: float = Field(1.0, description="Overall factor")
    frequency: float = Field(0.0, description="ω of a harmonic source", ge=0)
    ramp: float = Field(1.0, description="Switch-on duration of a harmonic source", gt=0)
    t_samples: Optional[np.ndarray] = Field(None, description="Sample times")
    r_samples: Optional[np.ndarray] = Field(None, description="Sample radii")
    values: Optional[np.ndarray] = Field(None, description="Samples, shape (times, radii)")

    @model_validator(mode="after")
    def _check(self) -> "TimeSource":
        a, b = self.r_support
        t0, t1 = self.t_support
        if not b > a:
            raise ValueError("r_support must be an increasing pair")
        if not (t1 > t0 >= 0):
            raise ValueError("t_support must be an increasing pair starting at t >= 0")
        if self.kind == "harmonic" and math.isfinite(t1):
            raise ValueError("harmonic sources run forever: t_support = (t0, inf)")
        if self.kind != "harmonic" and not math.isfinite(t1):
            raise ValueError(f"{self.kind} sources need a finite t_support")
        if self.kind == "samples":
            if self.t_samples is None or self.r_samples is None or self.values is None:
                raise ValueError(ERROR_SOURCE.format(kind=self.kind, fields="t_samples, r_samples and values"))
            need = (np.size(self.t_samples), np.size(self.r_samples))
            if np.shape(self.values) != need:
                raise ValueError(f"values have shape {np.shape(self.values)}, expected {need}")
        return self

    @property
    def is_complex(self) -> bool:
        if self.kind == "harmonic":
            return True
        return self.kind == "samples" and np.iscomplexobj(self.values)

    @property
    def separable(self) -> bool:
        return self.kind != "samples"

    def spatial(self, r) -> np.ndarray:
        """Radial profile ψ(r; r_support) of a separable source."""
        if not self.separable:
            raise SpecError(ERROR_SEPARABLE.format(kind=self.kind))
        return _bump_on(r, self.r_support)

    def temporal(self, t):
        """Time profile of a separable source, amplitude included."""
        if self.kind == "bump":
            return self.amplitude * _bump_on(t, self.t_support)
        if self.kind == "harmonic":
            t = np.asarray(t, dtype=float)
            switch = smoothstep(1.0 + (t - self.t_support[0]) / self.ramp)
            return self.amplitude * np.exp(-1j * self.frequency * t) * switch
        raise SpecError(ERROR_SEPARABLE.format(kind=self.kind))

    def evaluate(self, t: float, r) -> np.ndarray:
        """F(t, ·) on the radii r."""
        r = np.asarray(r, dtype=float)
        if self.separable:
            return self.temporal(t) * self.spatial(r)
        interp = RegularGridInterpolator(
            (np.asarray(self.t_samples, dtype=float), np.asarray(self.r_samples, dtype=float)),
            np.asarray(self.values),
            bounds_error=False,
            fill_value=0.0,
        )
        points = np.column_stack([np.full(r.size, float(t)), r.reshape(-1)])
        return self.amplitude * interp(points).reshape(r.shape)

    def check_support(self) -> None:
        """
        Raises:
            SpecError: A sampled value is non-zero outside r_support × t_support.
        """
        if self.kind != "samples":
            return
        t = np.asarray(self.t_samples, dtype=float)[:, None]
        r = np.asarray(self.r_samples, dtype=float)[None, :]
        (a, b), (t0, t1) = self.r_support, self.t_support
        outside = (r < a) | (r > b) | (t < t0) | (t > t1)
        if np.any(np.asarray(self.values)[outside] != 0):
            raise SpecError(
                ERROR_SUPPORT.format(support=f"[{a:g}, {b:g}] x [{t0:g}, {t1:g}]"),
                r_support=self.r_support,
                t_support=self.t_support,
            )


class InitialData(BaseModel):
    """Initial displacement u(0, r); the initial velocity is zero."""

    model_config = ConfigDict(frozen=True)

    kind: Literal["gaussian", "bump"] = Field("gaussian", description="Profile family")
    center: float = Field(..., description="Center of the profile")
    width: float = Field(1.0, description="Gaussian width or bump half-width", gt=0)
    amplitude: float = Field(1.0, description="Peak value")

    def evaluate(self, r) -> np.ndarray:
        x = (np.asarray(r, dtype=float) - self.center) / self.width
        if self.kind == "gaussian":
            return self.amplitude * np.exp(-(x**2))
        return self.amplitude * bump(x)

    @property
    def support(self) -> tuple[float, float]:
        half = GAUSSIAN_WIDTHS * self.width if self.kind == "gaussian" else self.width
        return self.center - half, self.center + half


class WaveGrid(BaseModel):
    """Uniform radial grid r_i = r_lo + i dr, i = 0..N, with Dirichlet conditions at both ends."""

    model_config = ConfigDict(frozen=True)

    r_lo: float
    r_hi: float
    dr: float = Field(..., gt=0)

    @model_validator(mode="after")
    def _check(self) -> "WaveGrid":
        if self.size < 5:
            raise ValueError(ERROR_GRID.format(lo=self.r_lo, hi=self.r_hi, dr=self.dr, need=5))
        return self

    @property
    def size(self) -> int:
        return int(math.ceil((self.r_hi - self.r_lo) / self.dr - 1e-9)) + 1

    def nodes(self) -> np.ndarray:
        return self.r_lo + self.dr * np.arange(self.size)


class WaveField(BaseModel):
    """Snapshots of one mode's evolution plus its energy bookkeeping."""

    model_config = ConfigDict(frozen=True, arbitrary_types_allowed=True)

    ell: int
    eigenvalue: float = Field(..., description="λ_ℓ")
    grid: WaveGrid
    dt: float
    steps: int = Field(..., description="Number of time steps to T_final")
    stride: int = Field(1, description="Stored snapshots are every stride-th step (and the last)")
    courant: float = Field(..., description="dt / dt_max")
    r: np.ndarray = Field(..., description="Stored radial nodes")
    weights: np.ndarray = Field(..., description="ρ^(n-1) dr at the stored nodes")
    t: np.ndarray = Field(..., description="Stored times")
    u: np.ndarray = Field(..., description="Shape (stored times, stored nodes)")
    energy_times: np.ndarray = Field(..., description="Half-step times (n + 1/2) dt")
    energy: np.ndarray = Field(..., description="Discrete energy at the half steps")
    work: np.ndarray = Field(..., description="Work of the source accumulated to each half step")
    energy_drift: float = Field(..., description="max |E - E(0) - W| relative to the energy scale")
    inequality_margin: float = Field(
        ..., description="min of √E(0) + ∫‖F‖/√2 - √E over the run, relative; >= 0 when it holds"
    )

    @property
    def T_final(self) -> float:
        return self.steps * self.dt

    def index(self, t: float) -> int:
        """Position of time t among the stored snapshots."""
        k = int(np.argmin(np.abs(self.t - t)))
        if abs(self.t[k] - t) > 1e-9 * max(1.0, abs(t)):
            raise SpecError(f"time {t:g} is not a stored snapshot")
        return k

    def at(self, t: float) -> np.ndarray:
        return self.u[self.index(t)]

    def relative_energy_change(self) -> float:
        """max |E(t) - E(0)| / E(0)."""
        e0 = float(self.energy[0]) if self.energy.size else 0.0
        if e0 == 0:
            return 0.0
        return float(np.max(np.abs(self.energy - e0)) / e0)


class FiniteSpeedReport(BaseModel):
    """Field outside the domain of influence of a radial band."""

    band: tuple[float, float]
    T: float
    halo: float
    leakage: float = Field(..., description="max |u(T)| outside band ± (T + halo)")
    relative: float = Field(..., description="leakage / max |u(T)|")
    passed: bool


class TimeSourceToSolutionKernel(BaseModel):
    """
    Discrete kernel of V_{O,+} over [0, 2T] on the nodes of O = [a, b].

    responses[k][i, j] is u at node i, k steps after a unit impulse F = e_j
    at one step m >= 1; an impulse at step 0 contributes half of it. With
    c_0 = 1/2 and c_m = 1 the scheme's response to samples F[m, j] is
    u[n] = Σ_m c_m responses[n - m] F[m].
    """

    model_config = ConfigDict(frozen=True, arbitrary_types_allowed=True)

    ell: int
    eigenvalue: float
    region: tuple[float, float]
    grid: WaveGrid
    dt: float
    T: float = Field(..., description="Half of the kernel horizon")
    r: np.ndarray = Field(..., description="Nodes of O")
    nodes: np.ndarray = Field(..., description="Grid indices of the nodes of O")
    weights: np.ndarray = Field(..., description="ρ^(n-1) dr on O")
    t: np.ndarray = Field(..., description="t_n = n dt, n = 0..2N")
    responses: np.ndarray = Field(..., description="Shape (2N + 1, |O|, |O|)")
    reciprocity_error: float = Field(..., description="Relative asymmetry of G = responses / (weights dt)")
    causal: bool = Field(..., description="responses[k][i, j] = 0 whenever |i - j| >= k")

    @property
    def steps(self) -> int:
        return self.t.size - 1

    @property
    def half(self) -> int:
        return self.steps // 2

    def sample(self, source: TimeSource) -> np.ndarray:
        """Source samples F[n, j] on the kernel's space-time nodes."""
        return np.stack([source.evaluate(tn, self.r) for tn in self.t])

    def apply(self, F) -> np.ndarray:
        """u on O × [0, 2T] for source samples F of shape (2N + 1, |O|)."""
        F = np.asarray(F)
        need = (self.t.size, self.r.size)
        if F.shape[-2:] != need:
            raise SpecError(f"source samples have shape {F.shape}, expected (..., {need[0]}, {need[1]})")
        Fc = F.copy() if np.iscomplexobj(F) else F.astype(float)
        Fc[..., 0, :] *= 0.5
        u = np.zeros(np.broadcast_shapes(Fc.shape), dtype=np.result_type(Fc, self.responses))
        M = self.steps
        for k in range(1, M + 1):
            u[..., k:, :] += Fc[..., : M + 1 - k, :] @ self.responses[k].T
        return u

    def restricted(self, T: float) -> "TimeSourceToSolutionKernel":
        """The kernel over [0, 2T'] for the step count nearest to T' <= T."""
        half = int(round(T / self.dt))
        if not 0 <= half <= self.half:
            raise SpecError(f"T = {T:g} lies outside the kernel horizon [0, {self.T:g}]")
        steps = 2 * half
        return self.model_copy(
            update={"T": half * self.dt, "t": self.t[: steps + 1], "responses": self.responses[: steps + 1]}
        )

    def green(self, n: int, i: int, m: int, j: int) -> float:
        """G(r_i, t_n; r_j, t_m) with respect to dV dt."""
        if n < m:
            return 0.0
        return float(self.responses[n - m][i, j] / (self.weights[j] * self.dt))


class BlagoReport(BaseModel):
    """⟨u^f(T), u^h(T)⟩ by evolution and by the data-side identity."""

    T: float
    direct: complex
    identity: complex
    difference: float
    relative: float


class VolumePairingReport(BaseModel):
    """⟨u^f(t), 1⟩ by evolution and by ∫_0^t (t - s)⟨f(s), 1⟩ ds."""

    t: float
    evolution: complex
    integral: complex
    difference: float


class StationaryReport(BaseModel):
    """Damped time transforms û(k + iε)/F̂(k + iε) against R(k² + i0) on the source band."""

    model_config = ConfigDict(frozen=True, arbitrary_types_allowed=True)

    k: float
    epsilons: tuple[float, ...]
    r: np.ndarray
    values: np.ndarray = Field(..., description="Shape (epsilons, nodes)")
    extrapolated: np.ndarray
    truncation: float = Field(..., description="e^(-ε_min T_final)")
    reference: Optional[np.ndarray] = None
    errors: tuple[float, ...] = Field((), description="Relative error per ε against the reference")
    extrapolated_error: Optional[float] = None

    @property
    def monotone(self) -> bool:
        """Errors shrink as ε decreases."""
        order = np.argsort(self.epsilons)[::-1]
        errs = np.asarray(self.errors)[order]
        return bool(errs.size > 1 and np.all(np.diff(errs) < 0))


class LimitingAmplitudeReport(BaseModel):
    """Late-time profile of a harmonically forced field against R(ω² + i0)."""

    model_config = ConfigDict(frozen=True, arbitrary_types_allowed=True)

    frequency: float
    window: tuple[float, float]
    r: np.ndarray
    profile: np.ndarray
    reference: np.ndarray
    relative_error: float
