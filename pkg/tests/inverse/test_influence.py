"""Tests for domains of influence and band inclusions."""

import math

import numpy as np
import pytest

from warpscatter.core.errors import SpecError
from warpscatter.inverse import ball_inclusion, band_ball, domain_of_influence, volume_oracle


class TestBandBall:
    def test_interior(self, flat_spec):
        assert band_ball(flat_spec, 3.0, 0.5) == (2.5, 3.5)

    def test_cut_at_wall(self, flat_spec):
        assert band_ball(flat_spec, 0.4, 1.0) == pytest.approx((0.0, 1.4))


class TestDomainOfInfluence:
    def test_zero_time_is_the_band(self, flat_spec):
        doi = domain_of_influence(flat_spec, (2.0, 3.0), 0.0)
        assert doi.extent == (2.0, 3.0)
        assert doi.volume == pytest.approx(2 * math.pi, rel=1e-10)

    def test_characteristic_function(self, flat_spec):
        r = np.linspace(0.0, 6.0, 61)
        doi = domain_of_influence(flat_spec, (2.0, 3.0), 1.0, r=r)
        assert np.array_equal(doi.inside, (r > 1.0) & (r < 4.0))

    def test_monotone_in_time(self, exponential_spec):
        volumes = [volume_oracle(exponential_spec, (2.0, 3.0), T) for T in (0.0, 0.5, 1.0, 2.0, 3.0)]
        assert np.all(np.diff(volumes) > 0)

    def test_exponential_closed_form(self, exponential_spec):
        # vol(S¹) ∫ e^r dr over [0, 4] once the wall cuts the extent
        assert volume_oracle(exponential_spec, (1.0, 2.0), 2.0) == pytest.approx(2 * math.pi * (math.e**4 - 1.0))

    def test_bad_band(self, flat_spec):
        with pytest.raises(SpecError):
            domain_of_influence(flat_spec, (3.0, 2.0), 1.0)
        with pytest.raises(SpecError):
            domain_of_influence(flat_spec, (2.0, 3.0), -1.0)


class TestBallInclusion:
    def test_nested(self, flat_spec):
        assert ball_inclusion(flat_spec, (3.0, 0.5), [(3.1, 1.0)])

    def test_union_needed(self, flat_spec):
        cover = [(2.5, 0.5), (3.5, 0.5)]
        assert ball_inclusion(flat_spec, (3.0, 1.0), cover)
        assert not ball_inclusion(flat_spec, (3.0, 1.0), cover[:1])

    def test_gap(self, flat_spec):
        assert not ball_inclusion(flat_spec, (3.0, 1.0), [(2.4, 0.5), (3.6, 0.5)])

    def test_wall_closes_the_cover(self, flat_spec):
        # both balls reach the wall, so their lower ends coincide
        assert ball_inclusion(flat_spec, (0.5, 0.8), [(0.6, 0.7)])
