"""Tests for the bridge between the wave solver and the stationary resolvent."""

import math

import numpy as np
import pytest

from warpscatter.core.errors import ConvergenceError, SpecError
from warpscatter.wave import (
    TimeSource,
    WaveGrid,
    damped_transform,
    limiting_amplitude,
    stationary_from_time,
    wave_solve,
)

BAND = (-1.0, 1.0)
WINDOW = (-3.0, 3.0)


def bump_source(amplitude: float = 1.0) -> TimeSource:
    return TimeSource(kind="bump", r_support=BAND, t_support=(0.5, 2.5), amplitude=amplitude)


class TestDampedTransform:
    def test_exponential(self):
        t = np.linspace(0.0, 40.0, 40001)
        z = 1.0 + 0.5j
        # ∫_0^∞ e^{izt} dt = i / z
        value = damped_transform(np.ones_like(t), t, z)
        assert value == pytest.approx(1j / z, abs=1e-6)


class TestStationaryFromTime:
    def test_amplitude_drops_out(self, hyperbolic_funnel):
        eps = (2.0, 1.0)
        reports = []
        for amplitude in (1.0, 3.0):
            source = bump_source(amplitude)
            wf = wave_solve(hyperbolic_funnel, 0, source, 14.0, window=WINDOW)
            reports.append(stationary_from_time(hyperbolic_funnel, wf, source, 1.0, eps, compare=False))
        assert np.allclose(reports[0].values, reports[1].values, rtol=1e-10)
        assert reports[0].reference is None

    def test_short_run(self, hyperbolic_funnel):
        wf = wave_solve(hyperbolic_funnel, 0, bump_source(), 5.0, window=WINDOW)
        with pytest.raises(ConvergenceError) as err:
            stationary_from_time(hyperbolic_funnel, wf, bump_source(), 1.0, (0.1,))
        assert err.value.suggested == pytest.approx(math.log(1e6) / 0.1)

    def test_needs_bump_source(self, hyperbolic_funnel):
        source = TimeSource(kind="harmonic", r_support=BAND, t_support=(0.0, math.inf), frequency=1.0)
        wf = wave_solve(hyperbolic_funnel, 0, source, 1.0, window=WINDOW)
        with pytest.raises(SpecError):
            stationary_from_time(hyperbolic_funnel, wf, source, 1.0)

    def test_needs_full_history(self, hyperbolic_funnel):
        wf = wave_solve(hyperbolic_funnel, 0, bump_source(), 14.0, window=WINDOW, stride=4)
        with pytest.raises(SpecError):
            stationary_from_time(hyperbolic_funnel, wf, bump_source(), 1.0, (2.0, 1.0))

    def test_bad_epsilons(self, hyperbolic_funnel):
        wf = wave_solve(hyperbolic_funnel, 0, bump_source(), 14.0, window=WINDOW)
        with pytest.raises(SpecError):
            stationary_from_time(hyperbolic_funnel, wf, bump_source(), 1.0, (1.0, -1.0))

    @pytest.mark.slow
    def test_matches_resolvent(self, hyperbolic_funnel):
        wf = wave_solve(
            hyperbolic_funnel, 0, bump_source(), 280.0, grid=WaveGrid(r_lo=-285.0, r_hi=285.0, dr=0.05), window=WINDOW
        )
        report = stationary_from_time(hyperbolic_funnel, wf, bump_source(), 1.0, (0.2, 0.1, 0.05))
        assert report.truncation <= 1e-6
        assert report.monotone
        assert report.extrapolated_error < 1e-2
        assert report.extrapolated_error < report.errors[-1]


class TestLimitingAmplitude:
    @pytest.mark.slow
    def test_late_profile(self, hyperbolic_funnel):
        source = TimeSource(
            kind="harmonic", r_support=BAND, t_support=(0.0, math.inf), frequency=1.0, ramp=5.0, amplitude=2.0
        )
        grid = WaveGrid(r_lo=-62.0, r_hi=62.0, dr=0.05)
        wf = wave_solve(hyperbolic_funnel, 0, source, 60.0, grid=grid, window=WINDOW)
        report = limiting_amplitude(hyperbolic_funnel, wf, source, (50.0, 60.0))
        assert report.relative_error < 2e-2

    def test_needs_harmonic_source(self, hyperbolic_funnel):
        wf = wave_solve(hyperbolic_funnel, 0, bump_source(), 3.0, window=WINDOW)
        with pytest.raises(SpecError):
            limiting_amplitude(hyperbolic_funnel, wf, bump_source(), (1.0, 2.0))

    def test_window_outside_run(self, hyperbolic_funnel):
        source = TimeSource(kind="harmonic", r_support=BAND, t_support=(0.0, math.inf), frequency=1.0)
        wf = wave_solve(hyperbolic_funnel, 0, source, 3.0, window=WINDOW)
        with pytest.raises(SpecError):
            limiting_amplitude(hyperbolic_funnel, wf, source, (2.0, 4.0))
