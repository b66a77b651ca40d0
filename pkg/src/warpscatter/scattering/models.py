"""
Data models for manifold-level scattering.

Every quantity here is assembled mode by mode: the warped-product Laplacian
decouples into radial problems, one per cross-section channel, and each
radial problem has a "left" side (the Dirichlet wall or end 1) and a "right"
side (end 0).
"""

from typing import Literal, Optional

import numpy as np
from pydantic import BaseModel, ConfigDict, Field

from warpscatter.radial.models import ModeProblem, SampledSolution

EndKind = Literal["open", "closed", "cusp", "wall"]
ChannelKind = Literal["physical", "generalized"]
Sign = Literal["+", "-"]


class ChannelLabel(BaseModel):
    """One scattering channel: end, cross-section mode and data type."""

    model_config = ConfigDict(frozen=True)

    end: int = Field(..., description="0 for r → +∞, 1 for r → -∞", ge=0, le=1)
    index: int = Field(..., description="Eigenvalue index ℓ", ge=0)
    slot: int = Field(0, description="Position within the eigenspace", ge=0)
    eigenvalue: float = Field(..., description="λ_ℓ", ge=0)
    kind: ChannelKind = Field("physical", description="physical or generalized cusp channel")
    cusp: bool = Field(False, description="Channel lives on a cusp end")

    @property
    def key(self) -> tuple[int, int, int]:
        return (self.end, self.index, self.slot)


class ChannelSpace(BaseModel):
    """h_∞(λ): open channels of every end and the weights of its inner product."""

    model_config = ConfigDict(frozen=True)

    lam: float
    channels: tuple[ChannelLabel, ...]
    weights: tuple[float, ...] = Field(..., description="Inner-product weight per channel")
    open_ends: tuple[bool, ...] = Field(..., description="λ > E0 per end")
    thresholds: tuple[float, ...] = Field(..., description="E0 per end")
    generalized: bool = False

    @property
    def size(self) -> int:
        return len(self.channels)

    def physical_mask(self) -> np.ndarray:
        return np.array([c.kind == "physical" for c in self.channels], dtype=bool)

    def position(self, end: int, index: int, slot: int = 0) -> int:
        return next(i for i, c in enumerate(self.channels) if c.key == (end, index, slot))


class SideBasis(BaseModel):
    """
    Solutions admissible near one side of a radial mode problem.

    `outgoing` is Ψ^(+) on an open end, the decaying solution on a closed or
    cusp end and Ψ0 at the wall; `incoming` is Ψ^(-) on an open end, the
    growing cusp solution u0^(+) on a generalized cusp channel and None
    otherwise. `flux` is (π/√(λ-E0))^{1/2} on open ends and 1 elsewhere.
    """

    model_config = ConfigDict(frozen=True, arbitrary_types_allowed=True)

    end: Optional[int] = Field(None, description="End id, None for the wall")
    kind: EndKind
    outgoing: SampledSolution
    incoming: Optional[SampledSolution] = None
    flux: float = 1.0
    k: Optional[float] = Field(None, description="√(λ - E0) on open ends")
    r_max: Optional[float] = Field(None, description="Radius where the asymptotics were fixed")

    def admissible(self, sign: Sign) -> SampledSolution:
        """Ψ^(sign) on open ends, the one admissible solution elsewhere."""
        if self.kind == "open" and sign == "-":
            return self.incoming
        return self.outgoing


class ModeBasis(BaseModel):
    """Left and right bases of one radial mode on a common grid."""

    model_config = ConfigDict(frozen=True, arbitrary_types_allowed=True)

    problem: ModeProblem = Field(..., description="Mode problem in the global coordinate")
    index: int = Field(..., description="Eigenvalue index ℓ", ge=0)
    left: SideBasis
    right: SideBasis
    match: int = Field(..., description="Grid index where Wronskians are evaluated")

    @property
    def r(self) -> np.ndarray:
        return self.right.outgoing.r


class HelmholtzSolution(BaseModel):
    """Solution of (-Δ - λ)u = 0 in one mode with prescribed incoming data."""

    model_config = ConfigDict(frozen=True, arbitrary_types_allowed=True)

    lam: float
    index: int
    eigenvalue: float
    r: np.ndarray
    values: np.ndarray
    derivatives: np.ndarray
    incoming: dict[int, complex] = Field(..., description="a_in per end (0 on closed ends)")
    outgoing: dict[int, complex] = Field(..., description="a_out per end, decaying coefficient on closed ends")
    kinds: dict[int, EndKind]
    matching_determinant: float = Field(..., description="Relative size of the matching Wronskian")


class ScatteringMatrix(BaseModel):
    """S(λ): a_in → a_out over a channel space, with its unitarity report."""

    model_config = ConfigDict(frozen=True, arbitrary_types_allowed=True)

    lam: float
    space: ChannelSpace
    matrix: np.ndarray = Field(..., description="Complex (channels x channels)")
    gram: np.ndarray = Field(..., description="Diagonal weight matrix of the inner product")
    unitarity_residual: float = Field(..., description="‖SᴴWS - W‖ on the physical channels")
    reciprocity_residual: Optional[float] = Field(
        None, description="max |S_01 - S_10| per mode on two-ended manifolds"
    )
    convention: dict[str, str]

    @property
    def generalized(self) -> bool:
        return self.space.generalized

    def physical(self) -> np.ndarray:
        mask = self.space.physical_mask()
        return self.matrix[np.ix_(mask, mask)]

    def entry(self, out: tuple[int, int, int], into: tuple[int, int, int]) -> complex:
        return complex(self.matrix[self.space.position(*out), self.space.position(*into)])


class ResolventField(BaseModel):
    """R(λ ± i0) f per channel on a radial grid."""

    model_config = ConfigDict(frozen=True, arbitrary_types_allowed=True)

    lam: float
    sign: Sign
    r: np.ndarray
    channels: tuple[tuple[int, int], ...] = Field(..., description="(ℓ, slot) per row")
    eigenvalues: tuple[float, ...] = Field(..., description="λ_ℓ per row")
    values: np.ndarray = Field(..., description="Shape (channels, radii)")
    far_field: dict[int, np.ndarray] = Field(
        ..., description="Per end: coefficient of the end's admissible solution beyond supp f"
    )
    wronskian_spread: float


class FourierCoefficients(BaseModel):
    """𝓕_j^(±)(λ) f per end, over that end's open channels."""

    model_config = ConfigDict(frozen=True, arbitrary_types_allowed=True)

    lam: float
    sign: Sign
    space: ChannelSpace
    values: np.ndarray = Field(..., description="One coefficient per channel of `space`")

    def norm2(self) -> float:
        w = np.asarray(self.space.weights)
        return float(np.sum(w * np.abs(self.values) ** 2))


class ParsevalReport(BaseModel):
    """Both sides of (1/2πi)([R(λ+i0) - R(λ-i0)] f, g) = (𝓕f, 𝓕g)."""

    lam: float
    resolvent_side: complex
    fourier_side: complex
    difference: float


class SourceToSolutionKernel(BaseModel):
    """Discrete kernel of U_{O,±}(λ) on a sampled region O = [a, b] x cross-section."""

    model_config = ConfigDict(frozen=True, arbitrary_types_allowed=True)

    lam: float
    sign: Sign
    r: np.ndarray = Field(..., description="Radial nodes of O")
    points: np.ndarray = Field(..., description="Cross-section sample points")
    kernel: np.ndarray = Field(..., description="K(x, x') over the flattened (r, point) nodes")
    weights: np.ndarray = Field(..., description="Riemannian quadrature weight per node")
    symmetry_error: float

    def apply(self, f: np.ndarray) -> np.ndarray:
        """(U f)(x) = Σ_x' K(x, x') f(x') w(x'); f shaped (radii, points)."""
        flat = np.asarray(f).reshape(-1)
        return (self.kernel @ (self.weights * flat)).reshape(self.r.size, self.points.size)


class ProbeMode(BaseModel):
    """Matching determinant of one mode across the probe grid."""

    model_config = ConfigDict(frozen=True, arbitrary_types_allowed=True)

    index: int
    eigenvalue: float
    determinant: np.ndarray
    minimum: float
    argmin: float
    max_jump: float
    near_zero: int = Field(..., description="Probe points with determinant below PROBE_ZERO")


class EmbeddedProbeReport(BaseModel):
    """Embedded-eigenvalue probe over a λ grid above every threshold."""

    model_config = ConfigDict(frozen=True, arbitrary_types_allowed=True)

    lam: np.ndarray
    modes: tuple[ProbeMode, ...]

    @property
    def minimum(self) -> float:
        return min(m.minimum for m in self.modes)


class SMatrixSweep(BaseModel):
    """S(λ) over a grid of λ; the channel set may change across thresholds."""

    model_config = ConfigDict(frozen=True, arbitrary_types_allowed=True)

    lam: np.ndarray
    matrices: tuple[ScatteringMatrix, ...]

    def curve(self, out: tuple[int, int, int], into: tuple[int, int, int]) -> np.ndarray:
        """S_{out,into}(λ) along the sweep, NaN where either channel is closed."""
        values = np.full(self.lam.size, np.nan, dtype=complex)
        for i, S in enumerate(self.matrices):
            keys = [c.key for c in S.space.channels]
            if out in keys and into in keys:
                values[i] = S.entry(out, into)
        return values

    def phases(self) -> np.ndarray:
        """Scattering phase ½ arg det S on the physical channels along the sweep."""
        out = np.empty(self.lam.size)
        for i, S in enumerate(self.matrices):
            P = S.physical()
            out[i] = 0.5 * float(np.angle(np.linalg.det(P))) if P.size else 0.0
        return out

    def unitarity(self) -> np.ndarray:
        return np.array([S.unitarity_residual for S in self.matrices])


class FarFieldReadout(BaseModel):
    """Far-field coefficients of a resolvent field read at radii R and 2R of one end."""

    model_config = ConfigDict(frozen=True, arbitrary_types_allowed=True)

    end: int
    radii: tuple[float, float]
    channels: tuple[tuple[int, int], ...]
    readout: np.ndarray = Field(..., description="Shape (channels, 2); NaN on closed channels")
    exact: np.ndarray = Field(..., description="Coefficient from the Green integral")
    spread: float = Field(..., description="max |readout(R) - readout(2R)| / max |exact|")
