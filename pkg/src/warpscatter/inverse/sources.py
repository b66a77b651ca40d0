"""
Space-time source families sampled on a kernel, with their responses on O.

Every source is a product ψ((r - c)/a) ψ((t - τ)/b) of C^∞ bumps. Time
bumps sit on a lattice τ_k = T - b - k h anchored at T with h a whole number
of steps, so all members of a lattice are time shifts of its earliest one
and share one kernel application.
"""

import logging
import math
import threading
from dataclasses import dataclass
from typing import Sequence

import numpy as np

from warpscatter.core.errors import SpecError
from warpscatter.core.numerics import bump
from warpscatter.wave import TimeSourceToSolutionKernel, blago_cross

from .constants import ERROR_WIDTH, LATTICE_DIVISOR, MIN_BUMP_CELLS

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class SourceFamily:
    """Sampled sources F, shape (count, 2N + 1, |O|), and V applied to them."""

    F: np.ndarray
    VF: np.ndarray
    centers: np.ndarray
    windows: np.ndarray

    @property
    def count(self) -> int:
        return self.F.shape[0]

    @classmethod
    def join(cls, families: Sequence["SourceFamily"]) -> "SourceFamily":
        return cls(
            F=np.concatenate([f.F for f in families]),
            VF=np.concatenate([f.VF for f in families]),
            centers=np.concatenate([f.centers for f in families]),
            windows=np.concatenate([f.windows for f in families]),
        )


def _shift(x: np.ndarray, steps: int) -> np.ndarray:
    """x delayed by `steps` time steps along axis 0, zero-filled."""
    if steps == 0:
        return x
    out = np.zeros_like(x)
    out[steps:] = x[:-steps]
    return out


class SourceBank:
    """Builds source families on one kernel and caches the kernel applications they need."""

    def __init__(self, kernel: TimeSourceToSolutionKernel) -> None:
        self.kernel = kernel
        self._cache: dict[tuple, tuple[np.ndarray, np.ndarray]] = {}
        self._lock = threading.Lock()

    @property
    def T(self) -> float:
        return self.kernel.T

    def lattice_steps(self, b: float) -> int:
        """Lattice spacing in steps for time half-width b; divisible by LATTICE_DIVISOR."""
        return LATTICE_DIVISOR * max(1, int(round(b / (LATTICE_DIVISOR * self.kernel.dt))))

    def check_widths(self, a: float, b: float) -> None:
        k = self.kernel
        if a < MIN_BUMP_CELLS * k.grid.dr or b < MIN_BUMP_CELLS * k.dt:
            raise SpecError(ERROR_WIDTH.format(eps=2 * min(a, b), dr=k.grid.dr, dt=k.dt))

    def _source(self, center: float, a: float, tau: float, b: float) -> tuple[np.ndarray, np.ndarray]:
        key = (round(center, 12), round(a, 12), round(tau, 12), round(b, 12))
        with self._lock:
            hit = self._cache.get(key)
        if hit is not None:
            return hit
        k = self.kernel
        F = np.outer(bump((k.t - tau) / b), bump((k.r - center) / a))
        F[k.half + 1 :] = 0.0
        pair = (F, k.apply(F))
        with self._lock:
            self._cache[key] = pair
        return pair

    def window_family(
        self,
        centers: Sequence[float],
        a: float,
        t0: float,
        b: float,
        steps: int,
    ) -> SourceFamily:
        """
        Radial bumps at `centers` times time bumps filling (t0, T).

        Lattice bumps whose support starts before t0 are dropped; one closing
        bump starting at t0 covers the rest of the window. A window shorter
        than 2b holds a single bump filling it.
        """
        k = self.kernel
        T = self.T
        tol = 0.5 * k.dt
        h = steps * k.dt
        length = T - t0
        F, VF, cs, ws = [], [], [], []

        def add(f: np.ndarray, vf: np.ndarray, c: float, lo: float, hi: float) -> None:
            F.append(f)
            VF.append(vf)
            cs.append(c)
            ws.append((lo, hi))

        for c in centers:
            if length <= tol:
                continue
            if length < 2 * b - tol:
                f, vf = self._source(c, a, t0 + 0.5 * length, 0.5 * length)
                add(f, vf, c, t0, T)
                continue
            K = int(math.floor((T - 2 * b) / h + 1e-9))
            proto_F, proto_VF = self._source(c, a, T - b - K * h, b)
            aligned = False
            for j in range(K + 1):
                tau = T - b - j * h
                if tau - b < t0 - tol:
                    break
                aligned = aligned or abs(tau - b - t0) <= tol
                shift = (K - j) * steps
                add(_shift(proto_F, shift), _shift(proto_VF, shift), c, tau - b, tau + b)
            if not aligned:
                f, vf = self._source(c, a, t0 + b, b)
                add(f, vf, c, t0, t0 + 2 * b)

        if not F:
            empty = np.zeros((0, k.t.size, k.r.size))
            return SourceFamily(F=empty, VF=empty.copy(), centers=np.zeros(0), windows=np.zeros((0, 2)))
        return SourceFamily(F=np.stack(F), VF=np.stack(VF), centers=np.asarray(cs), windows=np.asarray(ws))

    def ball_family(self, center: float, ell: float, eps: float, density: int = 1) -> SourceFamily:
        """
        Sources supported in S_ε(x, l) = (T - (l - ε), T) × (x - ε, x + ε).

        Bumps have half-width ε/2; `density` divides the radial and temporal
        spacing, and denser families contain the sparser ones.
        """
        if LATTICE_DIVISOR % density:
            raise SpecError(f"probe density must divide {LATTICE_DIVISOR}, got {density}")
        half = 0.5 * eps
        self.check_widths(half, half)
        steps = self.lattice_steps(half) // density
        offsets = [j * half / density for j in range(-density, density + 1)]
        return self.window_family([center + o for o in offsets], half, self.T - (ell - eps), half, steps)

    def tiled_family(self, band: tuple[float, float], a: float, b: float) -> SourceFamily:
        """Radial bumps tiling `band` times time bumps filling (0, T)."""
        self.check_widths(a, b)
        lo, hi = band
        centers = list(np.arange(lo + a, hi - a + 0.5 * self.kernel.grid.dr, a))
        if not centers:
            centers = [0.5 * (lo + hi)]
            a = 0.5 * (hi - lo)
        elif hi - a - centers[-1] > 1e-9:
            centers.append(hi - a)
        steps = max(1, int(round(b / self.kernel.dt)))
        return self.window_family(centers, a, 0.0, b, steps)

    def gram(self, A: SourceFamily, B: SourceFamily) -> np.ndarray:
        """⟨u^{f_a}(T), u^{h_b}(T)⟩ over the two families, from the kernel alone."""
        return blago_cross(self.kernel, A.F, A.VF, B.F, B.VF)
