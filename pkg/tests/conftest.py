"""Shared fixtures."""

import math

import pytest

from warpscatter.core.config import SolverConfig, set_config
from warpscatter.manifold import ManifoldSpec, RadialProfile
from warpscatter.modes import CrossSection


@pytest.fixture(autouse=True)
def default_config():
    """Every test starts from the built-in defaults, not the caller's environment."""
    set_config(SolverConfig())
    yield
    set_config(None)


@pytest.fixture
def circle() -> CrossSection:
    return CrossSection(kind="circle", length=2 * math.pi)


@pytest.fixture
def hyperbolic_funnel() -> ManifoldSpec:
    """ρ = cosh r on the full line, n = 2: both ends regular with E0 = 1/4."""
    return ManifoldSpec(n=2, topology="full_line", profile=RadialProfile(kind="cosh", c0=1.0))


@pytest.fixture
def half_line_exponential() -> ManifoldSpec:
    """ρ = e^r on [0, ∞), n = 2."""
    return ManifoldSpec(n=2, topology="half_line", profile=RadialProfile(kind="exponential", c0=1.0))


@pytest.fixture
def half_line_polynomial() -> ManifoldSpec:
    """ρ = 1 + r on [0, ∞), n = 2: E0 = 0."""
    return ManifoldSpec(
        n=2, topology="half_line", profile=RadialProfile(kind="polynomial", beta=1.0, shift=1.0)
    )


@pytest.fixture
def cusp_line() -> ManifoldSpec:
    """ρ = e^{-r} on the full line: end 0 is a cusp, end 1 a regular funnel."""
    return ManifoldSpec(n=2, topology="full_line", profile=RadialProfile(kind="exponential", c0=-1.0))
