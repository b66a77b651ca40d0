"""Tests for the crossing-ball test against the band geometry."""

import numpy as np
import pytest

from warpscatter.core.errors import ConditioningError, SpecError
from warpscatter.inverse import (
    SourceBank,
    ball_inclusion,
    crossing_ball_test,
    crossing_ball_tests,
    decide,
    thresholds,
)
from warpscatter.inverse.constants import INCLUSION_FALSE, INCLUSION_TRUE

EPS = 0.3


class TestThresholds:
    def test_defaults(self):
        assert thresholds(0.0) == (INCLUSION_TRUE, INCLUSION_FALSE)

    def test_raised_by_noise(self):
        lo, _ = thresholds(0.02)
        assert lo == pytest.approx(0.2)

    def test_no_room(self):
        with pytest.raises(ConditioningError):
            thresholds(0.05)

    def test_three_way(self):
        assert decide(0.0, 0.0)[0] is True
        assert decide(1.0, 0.0)[0] is False
        assert decide(0.5 * (INCLUSION_TRUE + INCLUSION_FALSE), 0.0)[0] is None


class TestSourceBank:
    def test_ball_family_support(self, flat_data):
        bank = SourceBank(flat_data.kernel)
        family = bank.ball_family(3.0, 1.0, EPS)
        k = flat_data.kernel
        t0 = k.T - (1.0 - EPS)
        assert family.count > 0
        active = np.abs(family.F) > 0
        t_idx, r_idx = np.nonzero(active.any(axis=0))
        assert k.t[t_idx].min() >= t0 - 0.5 * k.dt - 1e-9
        assert k.t[t_idx].max() <= k.T + 1e-9
        assert np.all(np.abs(k.r[r_idx] - 3.0) < EPS)
        assert np.all(family.windows[:, 0] >= t0 - 0.5 * k.dt)

    def test_denser_family_contains_sparser(self, flat_data):
        bank = SourceBank(flat_data.kernel)
        sparse = bank.ball_family(3.0, 1.0, EPS)
        dense = bank.ball_family(3.0, 1.0, EPS, density=2)
        assert dense.count > sparse.count
        for f in sparse.F:
            assert min(np.max(np.abs(f - g)) for g in dense.F) < 1e-12

    def test_cached_responses(self, flat_data):
        bank = SourceBank(flat_data.kernel)
        first = bank.ball_family(3.0, 1.0, EPS)
        second = bank.ball_family(3.0, 1.0, EPS)
        assert np.array_equal(first.VF, second.VF)

    def test_bad_density(self, flat_data):
        with pytest.raises(SpecError):
            SourceBank(flat_data.kernel).ball_family(3.0, 1.0, EPS, density=3)

    def test_too_small(self, flat_data):
        with pytest.raises(SpecError):
            SourceBank(flat_data.kernel).ball_family(3.0, 1.0, 0.05)


class TestCrossingBallTest:
    def test_identical_balls(self, flat_data):
        result = crossing_ball_test(flat_data, 3.0, 3.0, 3.0, 1.0, 1.0, 1.0, eps=EPS)
        assert result.inclusion is True
        assert result.residual < INCLUSION_TRUE
        assert result.union_volume >= (1 - 1e-4) * result.cover_volume

    def test_disjoint_balls(self, flat_data):
        result = crossing_ball_test(flat_data, 2.4, 3.6, 3.6, 0.5, 0.5, 0.5, eps=EPS)
        assert result.inclusion is False
        assert result.residual >= result.threshold_false

    def test_single_ball(self, flat_data):
        result = crossing_ball_test(flat_data, 3.0, 3.0, None, 0.8, 0.8, None, eps=EPS)
        assert result.inclusion is True
        assert result.z is None

    def test_shrunken_cover(self, flat_data):
        result = crossing_ball_test(flat_data, 3.0, 3.0, 3.0, 1.2, 0.6, 0.6, eps=EPS)
        assert result.inclusion is False

    def test_probe_outside_region(self, flat_data):
        with pytest.raises(SpecError):
            crossing_ball_test(flat_data, 2.1, 3.0, 3.0, 0.5, 0.5, 0.5, eps=EPS)

    def test_radius_beyond_horizon(self, flat_data):
        with pytest.raises(SpecError):
            crossing_ball_test(flat_data, 3.0, 3.0, 3.0, 1.0, 2.0, 1.0, eps=EPS)

    def test_radius_below_probe_size(self, flat_data):
        with pytest.raises(SpecError):
            crossing_ball_test(flat_data, 3.0, 3.0, 3.0, 0.2, 1.0, 1.0, eps=EPS)

    @pytest.mark.slow
    def test_random_configurations(self, flat_spec, flat_data):
        rng = np.random.default_rng(7)
        queries = []
        for k in range(20):
            c = float(rng.uniform(2.4, 3.6))
            ell = float(rng.uniform(1.0, 1.4))
            if k % 2 == 0:
                # probe ball equal to the y ball, z anywhere
                queries.append((c, c, float(rng.uniform(2.4, 3.6)), ell, ell, float(rng.uniform(0.5, 1.4))))
            else:
                # cover 0.6 short of the probe on both sides
                queries.append((c, c, c, ell, ell - 0.6, ell - 0.6))
        results = crossing_ball_tests(flat_data, queries, eps=EPS)
        for (p, y, z, lp, ly, lz), result in zip(queries, results):
            expected = ball_inclusion(flat_spec, (p, lp), [(y, ly), (z, lz)])
            assert result.inclusion is expected
