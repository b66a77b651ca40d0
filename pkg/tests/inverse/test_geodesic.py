"""Tests for the geodesic oracle, the local integrator and focal distances."""

import math

import numpy as np
import pytest

from warpscatter.core.errors import ChartError, DomainError, SpecError
from warpscatter.inverse import build_inverse_data, focal_distance, geodesic_oracle, local_geodesic, normal_sign
from warpscatter.manifold import ManifoldSpec, RadialProfile


@pytest.fixture(scope="module")
def bracket_line() -> ManifoldSpec:
    """ρ = (1 + r²)^{-1/2} on the full line: ρ has its maximum 1 at r = 0."""
    return ManifoldSpec(n=2, topology="full_line", profile=RadialProfile(kind="bracket", beta=-1.0))


class TestNormalSign:
    def test_outward_inward(self):
        assert normal_sign(0.0) == 1
        assert normal_sign(math.pi) == -1

    def test_oblique(self):
        with pytest.raises(SpecError):
            normal_sign(0.7)


class TestGeodesicOracle:
    def test_radial(self, exponential_spec):
        g = geodesic_oracle(exponential_spec, 2.0, 0.0, 1.0)
        assert g.clairaut == 0.0
        assert np.allclose(g.r, 2.0 + g.s, atol=1e-12)
        assert np.allclose(g.theta, 0.0, atol=1e-14)
        assert g.endpoint == pytest.approx((3.0, 0.0), abs=1e-12)
        assert g.turning_points == ()

    def test_equator(self, bracket_line):
        g = geodesic_oracle(bracket_line, 0.0, 0.5 * math.pi, 2.0)
        assert g.clairaut == pytest.approx(1.0)
        assert np.all(g.r == 0.0)
        assert np.allclose(g.theta, g.s, atol=1e-12)
        assert g.agreement < 1e-10

    def test_random_directions(self, hyperbolic_funnel):
        rng = np.random.default_rng(3)
        for _ in range(5):
            q = float(rng.uniform(-1.0, 1.0))
            psi = float(rng.uniform(0.2, math.pi - 0.2))
            g = geodesic_oracle(hyperbolic_funnel, q, psi, 2.0)
            assert g.length == pytest.approx(2.0)
            assert g.agreement < 1e-8

    def test_turning_point(self, hyperbolic_funnel):
        # heading inward on cosh r with c > 1: the geodesic turns where cosh r = c
        g = geodesic_oracle(hyperbolic_funnel, 1.0, 0.75 * math.pi, 3.0)
        c = math.cosh(1.0) * math.sin(0.75 * math.pi)
        assert g.clairaut == pytest.approx(c)
        assert len(g.turning_points) >= 1
        assert np.min(g.r) == pytest.approx(math.acosh(c), abs=1e-4)
        assert g.agreement < 1e-8

    def test_oscillation_about_maximum(self, bracket_line):
        # c = ρ(0.3) cos 0.3 < 1: the geodesic bounces between the two radii where ρ = c
        g = geodesic_oracle(bracket_line, 0.3, 0.5 * math.pi - 0.3, 20.0, samples=801)
        r_t = math.sqrt(g.clairaut**-2 - 1.0)
        assert len(g.turning_points) >= 5
        assert np.max(np.abs(g.r)) == pytest.approx(r_t, abs=1e-4)
        assert g.agreement < 1e-8

    def test_starts_at_turning_point(self, bracket_line):
        g = geodesic_oracle(bracket_line, 0.4, 0.5 * math.pi, 2.0)
        assert g.turning_points[0] == pytest.approx(0.0, abs=1e-6)
        assert np.all(g.r <= 0.4 + 1e-12)
        assert g.agreement < 1e-8

    def test_grazes_the_neck(self, hyperbolic_funnel):
        # c just below min ρ = 1: no turning point, but 1 - c²/ρ² nearly vanishes at r = 0
        psi = math.pi - math.asin(0.9999 / math.cosh(0.5))
        g = geodesic_oracle(hyperbolic_funnel, 0.5, psi, 8.0, samples=401)
        assert g.turning_points == ()
        assert g.r[-1] < -0.1
        assert g.agreement < 1e-8

    def test_reaches_wall(self, exponential_spec):
        with pytest.raises(DomainError):
            geodesic_oracle(exponential_spec, 0.5, math.pi, 1.0)


class TestLocalGeodesic:
    @pytest.fixture(scope="class")
    def data(self, exponential_spec):
        return build_inverse_data(exponential_spec, (2.0, 4.0), 0.3)

    def test_matches_oracle(self, data, exponential_spec):
        for psi in (0.0, 0.7, math.pi):
            local = local_geodesic(data, 3.0, psi, 0.5)
            oracle = geodesic_oracle(exponential_spec, 3.0, psi, 0.5).endpoint
            assert local == pytest.approx(oracle, abs=1e-8)

    def test_zero_length(self, data):
        assert local_geodesic(data, 3.0, 0.0, 0.0) == (3.0, 0.0)

    def test_leaves_region(self, data):
        with pytest.raises(ChartError):
            local_geodesic(data, 3.0, 0.0, 5.0)

    def test_start_outside_region(self, data):
        with pytest.raises(ChartError):
            local_geodesic(data, 1.0, 0.0, 0.1)


class TestFocalDistance:
    def test_flat_inward_stops_at_wall(self, flat_spec):
        assert focal_distance(flat_spec, 1.5, math.pi, 3.0) == pytest.approx(1.5, rel=1e-9)

    def test_flat_outward(self, flat_spec):
        assert focal_distance(flat_spec, 1.5, 0.0, 3.0) == pytest.approx(3.0)

    def test_exponential_has_no_focal_points(self, exponential_spec):
        assert focal_distance(exponential_spec, 2.0, 0.0, 2.5) == pytest.approx(2.5)
        assert focal_distance(exponential_spec, 2.0, math.pi, 2.5) == pytest.approx(2.0, rel=1e-9)

    def test_meridians_never_focus(self, bracket_line):
        # the normal Jacobi field is ρ(r(s))/ρ(q), positive on the whole line
        assert focal_distance(bracket_line, 0.5, math.pi, 20.0) == pytest.approx(20.0)
        assert focal_distance(bracket_line, 0.5, 0.0, 20.0) == pytest.approx(20.0)
