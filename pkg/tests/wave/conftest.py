"""Fixtures for the wave tests."""

import pytest

from warpscatter.manifold import ManifoldSpec, RadialProfile
from warpscatter.wave import TimeSource


@pytest.fixture
def flat_half_line() -> ManifoldSpec:
    """ρ ≡ 1 on [0, ∞), n = 2: the radial operator is -∂²."""
    return ManifoldSpec(
        n=2, topology="half_line", profile=RadialProfile(kind="polynomial", beta=0.0, shift=1.0)
    )


@pytest.fixture
def band_source() -> TimeSource:
    return TimeSource(kind="bump", r_support=(2.0, 3.0), t_support=(0.1, 0.9))
