"""Tests for the half-line Green operator and far-field coefficients."""

import numpy as np
import pytest

from warpscatter.core.config import SolverConfig
from warpscatter.core.errors import ResonanceError, SpecError
from warpscatter.core.numerics import trapezoid_weights
from warpscatter.manifold import RadialProfile
from warpscatter.radial import (
    ModeProblem,
    far_field_coeff,
    green_apply,
    green_kernel,
    kernel_entry,
    resolvent_pairing,
)

EXPONENTIAL = RadialProfile(kind="exponential", c0=1.0)
SHIFTED_LINE = RadialProfile(kind="polynomial", beta=1.0, shift=1.0)
GRID = np.linspace(0.0, 20.0, 4001)


def bump(r, a, b):
    """sin⁴ bump on [a, b] with first and second derivatives."""
    w = np.pi / (b - a)
    inside = (r > a) & (r < b)
    s = np.where(inside, np.sin(w * (r - a)), 0.0)
    c = np.where(inside, np.cos(w * (r - a)), 0.0)
    return s**4, 4 * w * s**3 * c, w * w * (12 * s * s * c * c - 4 * s**4)


def random_source(rng, r):
    f = np.zeros_like(r, dtype=complex)
    for a in (1.0, 3.0, 5.0):
        f += complex(rng.normal(), rng.normal()) * bump(r, a, a + 3.0)[0]
    return f


def weighted(r, f, h, log_g):
    return np.sum(trapezoid_weights(r) * f * h * np.exp(log_g))


@pytest.fixture
def problem() -> ModeProblem:
    return ModeProblem(n=2, profile=EXPONENTIAL, E=0.0, lam=1.0)


@pytest.fixture
def kernel(problem):
    return green_kernel(problem, "+", r_max=20.0, grid=GRID)


class TestGreenApply:
    def test_inverts_the_operator(self, problem, kernel):
        # ρ = e^r, n = 2, E = 0: L - λ = -∂² - ∂ - λ
        g, dg, d2g = bump(GRID, 2.0, 6.0)
        f = -d2g - dg - 1.0 * g
        u = green_apply(kernel, f)
        assert np.max(np.abs(u - g)) < 5e-4

    def test_refinement_reduces_error(self, problem):
        errors = []
        for points in (1001, 2001):
            grid = np.linspace(0.0, 20.0, points)
            gk = green_kernel(problem, "+", r_max=20.0, grid=grid)
            g, dg, d2g = bump(grid, 2.0, 6.0)
            errors.append(np.max(np.abs(green_apply(gk, -d2g - dg - g) - g)))
        assert errors[1] < 0.4 * errors[0]

    def test_outgoing_beyond_support(self, kernel):
        g, dg, d2g = bump(GRID, 2.0, 6.0)
        f = -d2g - dg - g
        u = green_apply(kernel, f)
        tilde, _ = far_field_coeff(kernel, f)
        beyond = GRID > 6.5
        # far values are near roundoff; tolerance relative to the whole solution
        scale = np.max(np.abs(u))
        expected = tilde * kernel.jost.solution.values[beyond]
        np.testing.assert_allclose(u[beyond], expected, rtol=1e-8, atol=1e-10 * scale)

    def test_kernel_symmetry(self, kernel):
        rng = np.random.default_rng(7)
        for i, j in rng.integers(1, GRID.size, size=(5, 2)):
            assert kernel_entry(kernel, i, j) == pytest.approx(kernel_entry(kernel, j, i))

    def test_bilinear_symmetry(self, kernel):
        rng = np.random.default_rng(3)
        f, h = random_source(rng, GRID), random_source(rng, GRID)
        log_g = GRID
        left = weighted(GRID, green_apply(kernel, f), h, log_g)
        right = weighted(GRID, f, green_apply(kernel, h), log_g)
        assert left == pytest.approx(right, rel=1e-10)

    def test_source_shape(self, kernel):
        with pytest.raises(SpecError):
            green_apply(kernel, np.ones(10))

    def test_resonance_guard(self, problem):
        with pytest.raises(ResonanceError):
            green_kernel(
                problem, "+", r_max=20.0, grid=GRID,
                config=SolverConfig(resonance_threshold=10.0),
            )


class TestFarField:
    def test_orthogonal_source(self, kernel):
        psi0 = kernel.regular.solution.values
        f1 = bump(GRID, 1.0, 4.0)[0]
        f2 = bump(GRID, 3.0, 7.0)[0]
        f = f2 - weighted(GRID, f2, psi0, GRID) / weighted(GRID, f1, psi0, GRID) * f1
        tilde, _ = far_field_coeff(kernel, f)
        reference, _ = far_field_coeff(kernel, f2)
        assert abs(tilde) < 1e-10 * abs(reference)

    def test_linearity(self, kernel):
        f = bump(GRID, 2.0, 5.0)[0]
        one, F_one = far_field_coeff(kernel, f)
        two, F_two = far_field_coeff(kernel, 2.0 * f)
        assert two == pytest.approx(2.0 * one)
        assert F_two == pytest.approx(2.0 * F_one)

    def test_free_normalisation(self, kernel, problem):
        f = bump(GRID, 2.0, 5.0)[0]
        tilde, F = far_field_coeff(kernel, f)
        assert F == pytest.approx(np.sqrt(np.sqrt(0.75) / np.pi) * tilde)

    @pytest.mark.parametrize("lam", [0.5, 1.0, 2.5])
    def test_parseval(self, lam):
        mp = ModeProblem(n=2, profile=EXPONENTIAL, E=1.0, lam=lam)
        plus = green_kernel(mp, "+", r_max=20.0, grid=GRID)
        minus = green_kernel(mp, "-", r_max=20.0, grid=GRID)
        rng = np.random.default_rng(11)
        for _ in range(5):
            f = random_source(rng, GRID)
            _, F = far_field_coeff(plus, f)
            pairing = resolvent_pairing(plus, minus, f)
            assert pairing.real == pytest.approx(abs(F) ** 2, rel=1e-6)
            assert abs(pairing.imag) < 1e-6 * abs(F) ** 2

    @pytest.mark.slow
    def test_parseval_power_law_end(self):
        rng = np.random.default_rng(5)
        for lam in rng.uniform(0.3, 3.0, size=5):
            mp = ModeProblem(n=2, profile=SHIFTED_LINE, E=0.0, lam=float(lam))
            plus = green_kernel(mp, "+", r_max=40.0, grid=np.linspace(0.0, 40.0, 4001))
            minus = green_kernel(mp, "-", r_max=40.0, grid=np.linspace(0.0, 40.0, 4001))
            for _ in range(20):
                f = random_source(rng, plus.r)
                _, F = far_field_coeff(plus, f)
                assert resolvent_pairing(plus, minus, f).real == pytest.approx(abs(F) ** 2, rel=1e-5)
