"""Tests for the Hamilton flow fixed point."""

import numpy as np
import pytest

from warpscatter.core.errors import NonAdmissibleError, SpecError
from warpscatter.normalize import FlowGrid, GeneralMetric, MetricTable, integral_to_infinity, solve_fixed_point
from warpscatter.normalize import fixed_point


def _radius_of(t):
    return np.sqrt(t**2 + 1.0) - np.arcsinh(1.0 / t)


@pytest.fixture(scope="module")
def identity_state(identity_metric, line_grid):
    return solve_fixed_point(identity_metric, line_grid)


@pytest.fixture(scope="module")
def radial_state(radial_metric, line_grid):
    return solve_fixed_point(radial_metric, line_grid)


class TestIntegralToInfinity:
    def test_power_law(self):
        r = np.geomspace(1.0, 1.0e4, 801)
        f = np.column_stack([r**-2, r**-3])
        integrals, tail = integral_to_infinity(r, f)
        np.testing.assert_allclose(integrals[:, 0], 1.0 / r, rtol=1e-6)
        np.testing.assert_allclose(integrals[:, 1], 0.5 / r**2, rtol=1e-6)
        assert tail == pytest.approx(1.0e-4, rel=1e-3)


class TestIdentityFlow:
    def test_trivial_fixed_point(self, identity_state):
        assert np.all(identity_state.X == 0.0)
        assert identity_state.iterations == 1
        assert identity_state.residual == 0.0
        assert identity_state.contraction == 0.0
        assert identity_state.decay is None

    def test_shooting_agrees(self, identity_state):
        assert identity_state.shooting_difference <= 1e-12
        assert identity_state.energy_drift <= 1e-12


class TestRadialPerturbation:
    def test_orbit_matches_closed_form(self, radial_state):
        t = radial_state.t
        np.testing.assert_allclose(_radius_of(t), radial_state.r[None, :], rtol=0, atol=1e-7)
        np.testing.assert_allclose(radial_state.tau, 0.5 * np.sqrt(1.0 + t**-2), rtol=0, atol=1e-9)

    def test_chart_untouched(self, radial_state):
        np.testing.assert_allclose(radial_state.zeta, 0.0, atol=1e-15)
        np.testing.assert_allclose(radial_state.z[..., 0], radial_state.x[:, :1], atol=1e-15)

    def test_contraction_and_residual(self, radial_state):
        assert 0.0 < radial_state.contraction < 1.0
        assert radial_state.residual <= 1e-8
        assert radial_state.epsilon0 == pytest.approx(1.0)

    def test_decay_orders(self, radial_state):
        assert radial_state.decay.kappa == pytest.approx(-1.0, abs=0.1)
        assert radial_state.tau_decay.kappa == pytest.approx(-2.0, abs=0.1)

    def test_picard_agrees_with_shooting(self, radial_state):
        assert radial_state.shooting_difference < 1e-7
        assert radial_state.energy_drift < 1e-8


class TestFailures:
    def test_outside_strip(self, line_grid):
        gm = GeneralMetric(w="t", a="1", c=(("1",),), h=(("1",),), kappa=0.4, lam=2, mu=1, nu=1)
        with pytest.raises(NonAdmissibleError):
            solve_fixed_point(gm, line_grid, shoot=False)

    def test_growing_steps(self, radial_metric, line_grid, monkeypatch):
        monkeypatch.setattr(fixed_point, "apply_u", lambda gm, r, x, X: (2.0 * X + 1.0, 0.0))
        with pytest.raises(NonAdmissibleError):
            solve_fixed_point(radial_metric, line_grid, shoot=False)

    def test_roundoff_plateau_is_converged(self, radial_metric, line_grid, monkeypatch):
        target = np.full((line_grid.radii().size, 4), 0.25)

        def jittered(gm, r, x, X):
            return target + (-5e-12 if X[0, 0] > 0.25 else 5e-12), 0.0

        monkeypatch.setattr(fixed_point, "apply_u", jittered)
        state = solve_fixed_point(radial_metric, line_grid, shoot=False)
        assert state.iterations == 2
        assert state.residual < 1e-10
        np.testing.assert_allclose(state.X, 0.25, atol=1e-11)

    def test_grid_dimension_mismatch(self, radial_metric):
        grid = FlowGrid(x=(tuple(np.linspace(-1, 1, 5)), tuple(np.linspace(-1, 1, 5))))
        with pytest.raises(SpecError):
            solve_fixed_point(radial_metric, grid, shoot=False)

    def test_too_few_chart_nodes(self, radial_metric):
        with pytest.raises(SpecError):
            solve_fixed_point(radial_metric, FlowGrid(x=((-1.0, 0.0, 1.0),)), shoot=False)


class TestTableMetric:
    def test_matches_expression_metric(self, radial_metric):
        grid = FlowGrid(x=(tuple(np.linspace(-1.0, 1.0, 5)),), r_min=5.0, r_max=5.0e3, points_per_decade=100)
        t = np.geomspace(2.0, 1.0e4, 600)
        z = np.linspace(-2.0, 2.0, 6)
        a = np.repeat((1.0 + t**-2)[:, None], z.size, axis=1)
        table = MetricTable(
            t=tuple(t), z=tuple(z), w=tuple(t),
            a=tuple(map(tuple, a)), c=tuple(map(tuple, np.ones_like(a))), h=tuple(np.ones_like(z)),
        )
        gm = GeneralMetric(table=table, kappa=1, lam=2, mu=1, nu=1)
        from_table = solve_fixed_point(gm, grid, shoot=False)
        from_expr = solve_fixed_point(radial_metric, grid, shoot=False)
        assert np.max(np.abs(from_table.X - from_expr.X)) < 1e-6

    def test_table_too_short(self, line_grid):
        t = np.geomspace(2.0, 1.0e3, 50)
        z = np.linspace(-2.0, 2.0, 6)
        ones = np.ones((t.size, z.size))
        table = MetricTable(
            t=tuple(t), z=tuple(z), w=tuple(t),
            a=tuple(map(tuple, ones)), c=tuple(map(tuple, ones)), h=tuple(np.ones_like(z)),
        )
        gm = GeneralMetric(table=table, kappa=1, lam=2, mu=1, nu=1)
        with pytest.raises(SpecError):
            solve_fixed_point(gm, line_grid, shoot=False)


class TestTailFit:
    def test_window_spans_a_decade(self):
        # r[-1]/10 falls between nodes of this grid
        r = np.geomspace(5.0, 5.0e4, 778)
        assert not np.any(np.isclose(r, r[-1] / 10.0, rtol=1e-12))
        fit = fixed_point._tail_fit(r, 3.0 / r, -1.0)
        assert fit.kappa == pytest.approx(-1.0, abs=1e-6)

    def test_flat_profile_has_no_fit(self):
        r = np.geomspace(5.0, 5.0e4, 801)
        assert fixed_point._tail_fit(r, np.zeros_like(r), -1.0) is None
