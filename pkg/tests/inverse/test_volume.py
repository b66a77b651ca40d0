"""Tests for volume recovery from data."""

import math

import numpy as np
import pytest

from warpscatter.core.errors import SpecError
from warpscatter.inverse import band_volume, recover_volumes, volume_oracle, volume_recover

BAND = (2.5, 3.5)


class TestBandVolume:
    def test_flat_band(self, volume_data):
        assert band_volume(volume_data, BAND) == pytest.approx(2 * math.pi, rel=1e-12)

    def test_off_grid_ends(self, volume_data):
        assert band_volume(volume_data, (2.51, 2.93)) == pytest.approx(2 * math.pi * 0.42, rel=1e-12)


class TestVolumeRecover:
    def test_zero_time(self, volume_data):
        report = volume_recover(volume_data, BAND, 0.0)
        assert report.T == 0.0
        assert report.sources == 0
        assert report.volume == pytest.approx(2 * math.pi, rel=1e-9)

    def test_bounded_by_exact(self, flat_spec, volume_data):
        exact = volume_oracle(flat_spec, BAND, 1.0)
        assert exact == pytest.approx(6 * math.pi, rel=1e-10)
        report = volume_recover(volume_data, BAND, 1.0, exact=exact)
        assert report.T == pytest.approx(volume_data.T)
        assert 2 * math.pi < report.volume < 1.02 * exact
        assert report.relative_error == pytest.approx(abs(report.volume - exact) / exact)

    @pytest.mark.slow
    def test_accuracy(self, flat_spec, volume_data):
        exact = volume_oracle(flat_spec, BAND, 1.0)
        report = volume_recover(volume_data, BAND, 1.0, exact=exact)
        assert report.relative_error < 0.05

    def test_continuation(self, volume_data):
        report = volume_recover(volume_data, BAND, 1.0)
        assert report.sigmas[0] == volume_data.sigma
        assert len(report.sigmas) == len(report.volumes) >= 2
        assert np.allclose(np.array(report.sigmas[1:]) / np.array(report.sigmas[:-1]), 0.5)
        assert report.monotone
        assert report.coefficients.shape == (report.sources,)

    def test_monotone_in_time(self, volume_data):
        times = (0.0, 0.25, 0.5, 0.75, 1.0)
        volumes = [volume_recover(volume_data, BAND, T).volume for T in times]
        assert np.all(np.diff(volumes) > 0)

    def test_concurrent_queries(self, volume_data):
        queries = [(BAND, 0.5), ((2.2, 2.8), 0.5)]
        reports = recover_volumes(volume_data, queries)
        assert [r.band for r in reports] == [BAND, (2.2, 2.8)]
        assert reports[0].volume == volume_recover(volume_data, BAND, 0.5).volume

    def test_band_outside_region(self, volume_data):
        with pytest.raises(SpecError):
            volume_recover(volume_data, (1.5, 2.5), 0.5)

    def test_reversed_band(self, volume_data):
        with pytest.raises(SpecError):
            volume_recover(volume_data, (3.0, 2.5), 0.5)

    def test_beyond_horizon(self, volume_data):
        with pytest.raises(SpecError):
            volume_recover(volume_data, BAND, 1.5)
