"""Shared metrics and grids for the normalization tests."""

import numpy as np
import pytest

from warpscatter.normalize import FlowGrid, GeneralMetric


def _metric(a="1", b=None, c="1", h="1", nu=1.0):
    return GeneralMetric(
        w="t", a=a, b=b, c=((c,),), h=((h,),), kappa=1.0, lam=2.0, mu=1.0, nu=nu
    )


@pytest.fixture(scope="module")
def line_grid():
    return FlowGrid(x=(tuple(np.linspace(-1.0, 1.0, 5)),), r_min=5.0, r_max=5.0e4, points_per_decade=200)


@pytest.fixture(scope="module")
def identity_metric():
    """Exact warped product: the flow is trivial."""
    return _metric(c="1 + z^2/4", h="1 + z^2/4")


@pytest.fixture(scope="module")
def radial_metric():
    """a = 1 + t⁻²: τ = √a/2 and r(t) = √(t² + 1) - asinh(1/t) exactly."""
    return _metric(a="1 + t^-2")


@pytest.fixture(scope="module")
def cross_metric():
    """Small cross term b = 0.1/t."""
    return _metric(b=("0.1/t",))


@pytest.fixture(scope="module")
def slow_section_metric():
    """c - h ~ t^(-1/2), so h̄ - h decays like r^(-1/2)."""
    return _metric(a="1 + t^-2", c="1 + t^(-1/2)", nu=0.5)


@pytest.fixture(scope="module")
def bent_metric():
    """z-dependent a, so the flow moves in z."""
    return _metric(a="1 + 0.5*cos(z)*t^-2")
