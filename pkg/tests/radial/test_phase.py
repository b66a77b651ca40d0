"""Tests for the phase recursion."""

import numpy as np
import pytest

from warpscatter.core.errors import ConvergenceError, SpecError
from warpscatter.manifold import RadialProfile, symbol_decay_fit
from warpscatter.radial import ModeProblem, phase_recursion, recurse


class TestRecurse:
    def test_free_level_zero(self):
        r = np.geomspace(0.5, 1e3, 2000)
        family = recurse(r, np.zeros_like(r), 1.5, depth=0, R0=1.0)
        assert np.all(family.top[r >= 2.0] == 1.5)
        assert np.all(family.top[r <= 1.0] == 0)

    def test_zero_wavenumber(self):
        r = np.geomspace(0.5, 1e3, 200)
        with pytest.raises(SpecError):
            recurse(r, np.zeros_like(r), 0.0, depth=1, R0=1.0)

    def test_onsets_double(self):
        r = np.geomspace(0.5, 1e3, 2000)
        family = recurse(r, np.zeros_like(r), 1.0, depth=3, R0=1.0)
        assert family.onsets == (1.0, 2.0, 4.0, 8.0)

    def test_branch_cut_raises_onset(self):
        r = np.geomspace(0.5, 1e3, 4000)
        # k² - Q is negative below r = 3, the cut of the real-k branch
        Q = np.where(r < 3.0, 5.0, 0.0)
        family = recurse(r, Q, 1.0, depth=0, R0=1.0)
        assert family.onsets[0] >= 5.9

    def test_imaginary_wavenumber(self):
        r = np.geomspace(0.5, 1e3, 2000)
        family = recurse(r, np.zeros_like(r), 0.5j, depth=1, R0=1.0)
        np.testing.assert_allclose(family.top[r >= 4.0], 0.5j)


class TestPhaseRecursion:
    def test_pure_exponential(self):
        mp = ModeProblem(n=2, profile=RadialProfile(kind="exponential", c0=1.0), lam=1.0)
        family = phase_recursion(mp, depth=2)
        beyond = family.r >= 2.0 * family.onsets[-1]
        np.testing.assert_allclose(family.top[beyond], np.sqrt(0.75), rtol=1e-14)

    def test_residual_order_improves(self):
        profile = RadialProfile(kind="exponential", c0=1.0, corr=1.0, gamma=1.0)
        mp = ModeProblem(n=2, profile=profile, lam=1.25)
        family = phase_recursion(mp, depth=2)
        window = (family.r >= 15.0) & (family.r <= 300.0)
        r = family.r[window]
        kappas = [
            symbol_decay_fit(r, np.abs(family.residual(j)[window])).kappa for j in range(3)
        ]
        assert kappas[0] == pytest.approx(-3.0, abs=0.3)
        for a, b in zip(kappas, kappas[1:]):
            assert b - a == pytest.approx(-1.0, abs=0.3)

    def test_phase_close_to_local_root(self):
        profile = RadialProfile(kind="exponential", c0=1.0, corr=1.0, gamma=1.0)
        mp = ModeProblem(n=2, profile=profile, lam=1.25)
        family = phase_recursion(mp, depth=2)
        window = (family.r >= 20.0) & (family.r <= 2000.0)
        r = family.r[window]
        root = np.sqrt(1.0 - family.Q[window] + 0j)
        fit = symbol_decay_fit(r, np.abs(family.top[window] - root))
        assert fit.kappa <= -2.7

    def test_r_max_too_small(self):
        mp = ModeProblem(n=2, profile=RadialProfile(kind="exponential", c0=1.0), lam=1.0)
        with pytest.raises(ConvergenceError) as info:
            phase_recursion(mp, depth=2, r_max=5.0)
        assert info.value.suggested == pytest.approx(8.0)
