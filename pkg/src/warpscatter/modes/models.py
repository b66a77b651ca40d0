"""
Data models for cross-section spectral data.

A cross-section is the compact factor M of the warped product; only the
spectrum of its Laplacian (and, for circles and custom tables, sampled
eigenfunctions) enters the radial reduction.
"""

import math
from typing import Literal, Optional

from pydantic import BaseModel, ConfigDict, Field, model_validator


class CustomEigenvalue(BaseModel):
    """One entry of a user-supplied cross-section spectrum."""

    model_config = ConfigDict(frozen=True)

    eigenvalue: float = Field(..., description="Eigenvalue of -Δ on the cross-section", ge=0)
    multiplicity: int = Field(1, description="Multiplicity of the eigenvalue", ge=1)


class CrossSection(BaseModel):
    """
    Compact cross-section: a circle of length L, a round unit sphere S^m,
    or a custom eigenvalue table with optional sampled eigenfunctions.
    """

    model_config = ConfigDict(frozen=True)

    kind: Literal["circle", "sphere", "custom"] = Field(
        "circle", description="Cross-section family"
    )
    length: float = Field(2 * math.pi, description="Circle length L", gt=0)
    dim: Optional[int] = Field(None, description="Sphere dimension m", ge=1)
    eigenvalues: tuple[CustomEigenvalue, ...] = Field(
        (), description="Custom spectrum, nondecreasing, starting with 0 (multiplicity 1)"
    )
    custom_vol: Optional[float] = Field(
        None, description="Volume of a custom cross-section", gt=0
    )
    sample_weights: Optional[tuple[float, ...]] = Field(
        None, description="Quadrature weights of the custom sample points"
    )
    eigenfunctions: Optional[tuple[tuple[float, ...], ...]] = Field(
        None, description="Custom eigenfunction samples, one row per channel"
    )

    @model_validator(mode="after")
    def _check_kind(self) -> "CrossSection":
        if self.kind == "sphere" and self.dim is None:
            raise ValueError("sphere cross-section needs 'dim'")
        if self.kind == "custom":
            if not self.eigenvalues:
                raise ValueError("custom cross-section needs 'eigenvalues'")
            if self.custom_vol is None:
                raise ValueError("custom cross-section needs 'vol'")
        if (self.sample_weights is None) != (self.eigenfunctions is None):
            raise ValueError("sample_weights and eigenfunctions go together")
        return self

    @property
    def vol(self) -> float:
        if self.kind == "circle":
            return self.length
        if self.kind == "sphere":
            m = self.dim
            return 2 * math.pi ** ((m + 1) / 2) / math.gamma((m + 1) / 2)
        return float(self.custom_vol)


class Channel(BaseModel):
    """One radial channel: eigenvalue index, eigenvalue and multiplicity slot."""

    model_config = ConfigDict(frozen=True)

    index: int = Field(..., description="Eigenvalue index ℓ", ge=0)
    eigenvalue: float = Field(..., description="λ_ℓ", ge=0)
    slot: int = Field(0, description="Position within the eigenspace", ge=0)
    label: str = Field("", description="Basis function name, e.g. cos1 / sin1 on a circle")


class ModeSpectrum(BaseModel):
    """Flattened channel list, complete up to the truncation eigenvalue."""

    model_config = ConfigDict(frozen=True)

    channels: tuple[Channel, ...]
    lambda_max: float = Field(..., ge=0)
    vol: float = Field(..., gt=0)

    @property
    def eigenvalues(self) -> list[float]:
        return [c.eigenvalue for c in self.channels]

    def distinct(self) -> list[tuple[int, float, int]]:
        """(ℓ, λ_ℓ, multiplicity) for each distinct eigenvalue."""
        out: dict[int, list] = {}
        for c in self.channels:
            out.setdefault(c.index, [c.index, c.eigenvalue, 0])[2] += 1
        return [tuple(v) for v in out.values()]
