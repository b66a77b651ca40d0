"""Tests for the leapfrog wave solver and the finite-speed check."""

import math

import numpy as np
import pytest

from warpscatter.core.errors import SpecError, StepError
from warpscatter.modes import CrossSection, CustomEigenvalue
from warpscatter.wave import (
    InitialData,
    TimeSource,
    WaveGrid,
    build_operator,
    finite_speed_check,
    mode_eigenvalue,
    wave_solve,
    wave_solve_modes,
)


def dalembert_error(spec, dr: float) -> float:
    """max |u(5) - ½(φ(r - 5) + φ(r + 5))| for φ a unit Gaussian at r = 20."""
    initial = InitialData(kind="gaussian", center=20.0, width=1.0)
    wf = wave_solve(spec, 0, None, 5.0, initial=initial, grid=WaveGrid(r_lo=5.0, r_hi=35.0, dr=dr), stride=0)
    exact = 0.5 * (initial.evaluate(wf.r - 5.0) + initial.evaluate(wf.r + 5.0))
    return float(np.max(np.abs(wf.u[-1] - exact)))


class TestModeEigenvalue:
    def test_circle(self, circle):
        assert mode_eigenvalue(circle, 0) == 0.0
        assert mode_eigenvalue(circle, 3) == pytest.approx(9.0)

    def test_sphere(self):
        assert mode_eigenvalue(CrossSection(kind="sphere", dim=2), 2) == pytest.approx(6.0)

    def test_custom_out_of_range(self):
        cs = CrossSection(
            kind="custom",
            eigenvalues=(CustomEigenvalue(eigenvalue=0.0), CustomEigenvalue(eigenvalue=2.5)),
            custom_vol=1.0,
        )
        assert mode_eigenvalue(cs, 1) == 2.5
        with pytest.raises(SpecError):
            mode_eigenvalue(cs, 2)


class TestWaveSolve:
    def test_zero_source(self, half_line_exponential):
        source = TimeSource(kind="bump", r_support=(2.0, 3.0), t_support=(0.2, 1.0), amplitude=0.0)
        wf = wave_solve(half_line_exponential, 0, source, 2.0)
        assert np.all(wf.u == 0)
        assert np.all(wf.energy == 0)

    def test_homogeneous_energy(self, hyperbolic_funnel):
        initial = InitialData(kind="gaussian", center=0.5, width=1.0)
        wf = wave_solve(hyperbolic_funnel, 1, None, 5.0, initial=initial)
        assert wf.eigenvalue == pytest.approx(1.0)
        assert wf.courant <= 0.9 + 1e-12
        assert wf.energy[0] > 0
        assert wf.relative_energy_change() < 1e-6
        assert np.all(wf.work == 0)

    def test_dalembert(self, flat_half_line):
        assert dalembert_error(flat_half_line, 0.005) < 1e-4

    def test_second_order(self, flat_half_line):
        coarse = dalembert_error(flat_half_line, 0.02)
        fine = dalembert_error(flat_half_line, 0.01)
        assert 3.0 < coarse / fine < 5.0

    def test_forced_energy_balance(self, half_line_exponential, band_source):
        wf = wave_solve(half_line_exponential, 0, band_source, 3.0)
        assert wf.energy[-1] > 0
        assert wf.energy_drift < 1e-10
        assert np.allclose(wf.energy - wf.energy[0], wf.work, atol=1e-10 * np.max(wf.energy))
        assert wf.inequality_margin > -0.05

    def test_complex_forcing(self, hyperbolic_funnel):
        source = TimeSource(kind="harmonic", r_support=(-1.0, 1.0), t_support=(0.0, math.inf), frequency=1.0)
        wf = wave_solve(hyperbolic_funnel, 0, source, 2.0, stride=10)
        assert np.iscomplexobj(wf.u)
        assert wf.t[-1] == pytest.approx(2.0)
        assert wf.energy_drift < 1e-10

    def test_zero_time(self, half_line_exponential, band_source):
        wf = wave_solve(half_line_exponential, 0, band_source, 0.0)
        assert wf.steps == 0
        assert wf.u.shape[0] == 1
        assert np.all(wf.u == 0)

    def test_window_and_stride(self, half_line_exponential, band_source):
        wf = wave_solve(half_line_exponential, 0, band_source, 2.0, window=(1.0, 4.0), stride=5)
        assert wf.r[0] >= 1.0 - 1e-12 and wf.r[-1] <= 4.0 + 1e-12
        assert wf.t[-1] == pytest.approx(2.0)
        assert np.allclose(np.diff(wf.t)[:-1], 5 * wf.dt)

    def test_modes_concurrently(self, hyperbolic_funnel):
        initial = InitialData(kind="bump", center=0.0, width=1.0)
        fields = wave_solve_modes(hyperbolic_funnel, [0, 1], None, 1.0, initial=initial)
        assert sorted(fields) == [0, 1]
        single = wave_solve(hyperbolic_funnel, 1, None, 1.0, initial=initial)
        assert np.array_equal(fields[1].u, single.u)

    def test_step_above_cfl(self, flat_half_line):
        grid = WaveGrid(r_lo=0.0, r_hi=10.0, dr=0.05)
        dt_max = build_operator(flat_half_line, 0.0, grid).dt_max
        assert dt_max == pytest.approx(0.05)
        initial = InitialData(kind="bump", center=5.0)
        with pytest.raises(StepError):
            wave_solve(flat_half_line, 0, None, 1.0, initial=initial, grid=grid, dt=0.1)

    def test_step_not_dividing_time(self, flat_half_line):
        grid = WaveGrid(r_lo=0.0, r_hi=10.0, dr=0.05)
        initial = InitialData(kind="bump", center=5.0)
        with pytest.raises(SpecError):
            wave_solve(flat_half_line, 0, None, 1.0, initial=initial, grid=grid, dt=0.03)

    def test_grid_outside_manifold(self, half_line_exponential, band_source):
        with pytest.raises(SpecError):
            wave_solve(half_line_exponential, 0, band_source, 1.0, grid=WaveGrid(r_lo=-1.0, r_hi=5.0, dr=0.05))

    def test_samples_outside_support(self, half_line_exponential):
        t = np.linspace(0.0, 1.0, 5)
        r = np.linspace(1.0, 4.0, 7)
        values = np.zeros((5, 7))
        values[2, 0] = 1.0
        source = TimeSource(
            kind="samples", r_support=(2.0, 3.0), t_support=(0.0, 1.0), t_samples=t, r_samples=r, values=values
        )
        with pytest.raises(SpecError):
            wave_solve(half_line_exponential, 0, source, 1.0)

    def test_unknown_mode(self, half_line_exponential, band_source):
        with pytest.raises(SpecError):
            wave_solve(half_line_exponential, -1, band_source, 1.0)


class TestFiniteSpeed:
    BAND = (-1.0, 1.0)

    @pytest.fixture
    def field(self, hyperbolic_funnel):
        source = TimeSource(kind="bump", r_support=self.BAND, t_support=(0.5, 2.5))
        grid = WaveGrid(r_lo=-15.0, r_hi=15.0, dr=0.02)
        return wave_solve(hyperbolic_funnel, 0, source, 4.0, grid=grid, stride=0)

    def test_no_leakage(self, field):
        report = finite_speed_check(field, self.BAND)
        assert report.halo == pytest.approx(2 * field.grid.dr)
        assert report.relative < 1e-6
        assert report.passed

    def test_far_probe(self, field):
        # probe points at twice the distance waves can travel
        report = finite_speed_check(field, self.BAND, halo=field.T_final)
        assert report.leakage < 1e-8

    def test_initial_time(self, field):
        report = finite_speed_check(field, self.BAND, T=0.0)
        assert report.leakage == 0.0
        assert report.passed

    def test_reaches_inside(self, field):
        u = np.abs(field.at(4.0))
        inside = (field.r > -4.0) & (field.r < 4.0)
        assert np.max(u[inside]) > 0
