"""Fixtures for the inverse tests: kernels measured once per module on small regions."""

import pytest

from warpscatter.inverse import build_inverse_data
from warpscatter.manifold import ManifoldSpec, RadialProfile

DR = 0.04


@pytest.fixture(scope="module")
def flat_spec() -> ManifoldSpec:
    """ρ ≡ 1 on [0, ∞), n = 2: balls are bands and distances are radial gaps."""
    return ManifoldSpec(
        n=2, topology="half_line", profile=RadialProfile(kind="polynomial", beta=0.0, shift=1.0)
    )


@pytest.fixture(scope="module")
def exponential_spec() -> ManifoldSpec:
    """ρ = e^r on [0, ∞), n = 2."""
    return ManifoldSpec(n=2, topology="half_line", profile=RadialProfile(kind="exponential", c0=1.0))


@pytest.fixture(scope="module")
def flat_data(flat_spec):
    """O = [2, 4], T = 1.5."""
    return build_inverse_data(flat_spec, (2.0, 4.0), 1.5, dr=DR)


@pytest.fixture(scope="module")
def volume_data(flat_spec):
    """O = [2, 4], T = 1."""
    return build_inverse_data(flat_spec, (2.0, 4.0), 1.0, dr=DR)
