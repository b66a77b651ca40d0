"""Tests for inverse problem data and the data-only boundary of the inverse routines."""

import math
import sys

import numpy as np
import pytest

from warpscatter.core.errors import SpecError
from warpscatter.inverse import (
    InverseProblemData,
    crossing_ball_test,
    cut_locus_bound,
    inverse_data_from_kernel,
    local_geodesic,
    volume_recover,
)
from warpscatter.wave import time_sts_kernel

from .conftest import DR

# Everything that can evaluate the manifold or run a solver
FORBIDDEN = ("log_profile", "build_operator", "wave_solve", "wave_solve_modes", "time_sts_kernel", "build_inverse_data")


class TestInverseProblemData:
    def test_metric_on_region(self, flat_data):
        assert flat_data.T == pytest.approx(flat_data.kernel.T)
        assert flat_data.r[0] == pytest.approx(2.0)
        assert flat_data.r[-1] == pytest.approx(4.0)
        assert np.allclose(flat_data.log_rho, 0.0)
        assert np.allclose(flat_data.dlog_rho, 0.0)

    def test_holds_no_manifold(self):
        assert "spec" not in InverseProblemData.model_fields

    def test_contains(self, flat_data):
        assert flat_data.contains(2.5, 3.5)
        assert not flat_data.contains(1.9, 3.0)

    def test_rejects_rotating_mode(self, flat_spec):
        kernel = time_sts_kernel(flat_spec, 1, (2.0, 3.0), 0.3, dr=DR)
        with pytest.raises(SpecError):
            inverse_data_from_kernel(kernel, flat_spec)


class TestDataBoundary:
    @pytest.fixture
    def sealed(self, monkeypatch, flat_data):
        """Replace every manifold evaluation and solver in the package by a tripwire."""

        def tripwire(*args, **kwargs):
            raise AssertionError("inverse routine reached past the data")

        for name, module in list(sys.modules.items()):
            if name == "warpscatter" or name.startswith("warpscatter."):
                for attr in FORBIDDEN:
                    if hasattr(module, attr):
                        monkeypatch.setattr(module, attr, tripwire)
        return flat_data

    def test_volume(self, sealed):
        assert volume_recover(sealed, (2.5, 3.5), 0.5).volume > 0

    def test_crossing(self, sealed):
        assert crossing_ball_test(sealed, 3.0, 3.0, None, 0.8, 0.8, None, eps=0.3).inclusion is True

    def test_geodesic_and_cut(self, sealed):
        assert local_geodesic(sealed, 3.0, 0.0, 0.4) == pytest.approx((3.4, 0.0))
        assert local_geodesic(sealed, 3.0, math.pi, 0.4)[0] == pytest.approx(2.6)
        report = cut_locus_bound(sealed, 2.6, 0.0, 0.9, epsilons=(0.3,))
        assert report.detected == (False,)
