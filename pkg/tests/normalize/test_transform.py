"""Tests for the flow diagnostics and the pulled-back metric."""

import numpy as np
import pytest

from warpscatter.normalize import FlowGrid, GeneralMetric, solve_fixed_point, transform_metric, verify_flow


def _bent_grid(nodes):
    return FlowGrid(x=(tuple(np.linspace(-1.0, 1.0, nodes)),), r_min=5.0, r_max=5.0e3, points_per_decade=100)


@pytest.fixture(scope="module")
def identity_state(identity_metric, line_grid):
    return solve_fixed_point(identity_metric, line_grid, shoot=False)


@pytest.fixture(scope="module")
def radial_state(radial_metric, line_grid):
    return solve_fixed_point(radial_metric, line_grid, shoot=False)


@pytest.fixture(scope="module")
def bent_states(bent_metric):
    return [solve_fixed_point(bent_metric, _bent_grid(n), shoot=False) for n in (9, 17)]


class TestVerifyFlow:
    def test_identity(self, identity_state):
        diagnostics = verify_flow(identity_state)
        assert diagnostics.energy <= 1e-15
        assert diagnostics.phase <= 1e-12
        assert diagnostics.phase_points == 3
        assert diagnostics.bracket <= 1e-15

    def test_radial_perturbation(self, radial_state):
        diagnostics = verify_flow(radial_state)
        assert diagnostics.energy < 1e-8
        assert diagnostics.phase < 1e-7
        assert diagnostics.bracket < 1e-12

    def test_bent_flow_refines(self, bent_states):
        coarse, fine = (verify_flow(state) for state in bent_states)
        assert fine.energy < 1e-8
        assert fine.phase_points == 15
        assert fine.phase < 1e-4
        assert fine.bracket < coarse.bracket / 2.5

    def test_two_dimensional_chart_skips_phase(self):
        gm = GeneralMetric(
            w="t", a="1",
            c=(("1", "0"), ("0", "1")), h=(("1", "0"), ("0", "1")),
            kappa=1, lam=2, mu=1, nu=1,
        )
        axis = tuple(np.linspace(-1.0, 1.0, 5))
        state = solve_fixed_point(gm, FlowGrid(x=(axis, axis), r_max=5.0e2, points_per_decade=50), shoot=False)
        diagnostics = verify_flow(state)
        assert diagnostics.phase is None
        assert diagnostics.phase_points == 0
        assert diagnostics.bracket <= 1e-15


class TestTransformMetric:
    def test_identity_keeps_section(self, identity_metric, identity_state):
        tm = transform_metric(identity_metric, identity_state)
        np.testing.assert_allclose(tm.hbar, np.broadcast_to(tm.h[:, None], tm.hbar.shape), rtol=1e-12)
        assert tm.inverse_00 <= 1e-14
        assert tm.inverse_0k <= 1e-14
        assert tm.decay is None
        assert tm.within_tolerance is None
        assert tm.tail_condition == pytest.approx(1.0, abs=1e-10)

    def test_cross_term_is_removed(self, cross_metric, line_grid):
        state = solve_fixed_point(cross_metric, line_grid, shoot=False)
        tm = transform_metric(cross_metric, state)
        assert tm.inverse_0k < 1e-7
        assert tm.inverse_00 < 1e-6

    def test_section_decay(self, slow_section_metric, line_grid):
        state = solve_fixed_point(slow_section_metric, line_grid, shoot=False)
        tm = transform_metric(slow_section_metric, state)
        assert tm.target == pytest.approx(-0.5)
        assert tm.decay.kappa == pytest.approx(-0.5, abs=0.1)
        assert tm.within_tolerance is True
        assert np.max(np.abs(tm.difference())) > 0.0
