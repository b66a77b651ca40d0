"""Tests for coefficient expressions and the classical Hamiltonian."""

import numpy as np
import pytest

from warpscatter.core.errors import SpecError
from warpscatter.normalize import (
    GeneralMetric,
    compile_coefficient,
    hamiltonian,
    metric_field,
    parse_coefficient,
    variables,
)


@pytest.fixture
def skew_metric():
    """z-dependent metric with a cross term, exponents kappa = 1, lambda = 2, mu = 1, nu = 1."""
    return GeneralMetric(
        w="t",
        a="1 + t^-2 + 0.1*sin(z)*t^-3",
        b=("0.2*cos(z)/t",),
        c=(("1 + 0.3*z^2/t",),),
        h=(("1",),),
        kappa=1.0,
        lam=2.0,
        mu=1.0,
        nu=1.0,
    )


def _full_inverse(gm, t, z):
    """Inverse of g = diag(1, w) G diag(1, w) at one point, built directly."""
    ms = metric_field(gm).sample(np.array(t), np.array([z]))
    scale = np.diag([1.0, float(ms.w)])
    return np.linalg.inv(scale @ ms.G @ scale)


class TestExpressions:
    def test_variables_by_dimension(self):
        assert [s.name for s in variables(1)] == ["t", "z"]
        assert [s.name for s in variables(3)] == ["t", "z1", "z2", "z3"]

    def test_parse_and_compile(self):
        symbols = variables(1)
        coef = compile_coefficient(parse_coefficient("t^2 * z", symbols), symbols)
        assert float(coef.value(2.0, 3.0)) == pytest.approx(12.0)
        assert float(coef.gradient[0](2.0, 3.0)) == pytest.approx(12.0)
        assert float(coef.gradient[1](2.0, 3.0)) == pytest.approx(4.0)

    def test_constant_broadcasts(self):
        symbols = variables(1)
        coef = compile_coefficient(parse_coefficient("1", symbols), symbols)
        t = np.linspace(1.0, 2.0, 5)
        assert coef.value(t, t).shape == (5,)
        assert np.all(coef.gradient[0](t, t) == 0.0)

    def test_whitelisted_functions(self):
        symbols = variables(1)
        expr = parse_coefficient("exp(-t) + sqrt(t)*cosh(z) + pi", symbols)
        assert expr.free_symbols == set(symbols)

    @pytest.mark.parametrize(
        "text",
        [
            "y + t",
            "gamma(t)",
            "__import__('os')",
            "t.subs(t, 2)",
            "lambda",
            "t +* 2",
            "t; 1",
        ],
    )
    def test_rejected_expressions(self, text):
        with pytest.raises(SpecError):
            parse_coefficient(text, variables(1))


class TestHamiltonian:
    def test_unit_energy_on_warped_product(self):
        gm = GeneralMetric(w="t", a="1", c=(("1 + z^2/4",),), h=(("1 + z^2/4",),), kappa=1, lam=2, mu=1, nu=1)
        t = np.geomspace(5.0, 500.0, 7)
        hv = hamiltonian(gm, t, np.linspace(-1, 1, 7), 0.5, 0.0)
        np.testing.assert_allclose(hv.H, 0.25, atol=1e-15)
        np.testing.assert_allclose(hv.H_tau, 1.0, atol=1e-15)
        assert np.all(hv.H_t == 0.0)
        assert hv.H_z.shape == (7, 1)

    def test_value_matches_direct_inverse(self, skew_metric):
        t, z, tau, zeta = 3.0, 0.4, 0.6, 0.2
        eta = np.array([tau, zeta])
        expected = eta @ _full_inverse(skew_metric, t, z) @ eta
        assert float(hamiltonian(skew_metric, t, z, tau, zeta).H) == pytest.approx(expected, rel=1e-13)

    def test_gradient_matches_central_differences(self, skew_metric):
        p = np.array([3.0, 0.4, 0.6, 0.2])
        hv = hamiltonian(skew_metric, *p)
        analytic = [float(hv.H_t), float(hv.H_z[0]), float(hv.H_tau), float(hv.H_zeta[0])]
        step = 1e-6
        for k in range(4):
            up, down = p.copy(), p.copy()
            up[k] += step
            down[k] -= step
            numeric = (float(hamiltonian(skew_metric, *up).H) - float(hamiltonian(skew_metric, *down).H)) / (2 * step)
            assert analytic[k] == pytest.approx(numeric, abs=1e-6)

    def test_zeta_derivative_at_zero_momentum(self, skew_metric):
        t, z, tau = 4.0, -0.3, 0.55
        hv = hamiltonian(skew_metric, t, z, tau, 0.0)
        ms = metric_field(skew_metric).sample(np.array(t), np.array([z]))
        b_tilde = np.linalg.inv(ms.G)[1, 0]
        assert float(hv.H_zeta[0]) == pytest.approx(2.0 * b_tilde * tau / t, rel=1e-12)

    def test_zero_cross_term_keeps_zeta_flat(self):
        gm = GeneralMetric(w="t", a="1 + t^-2", c=(("1",),), h=(("1",),), kappa=1, lam=2, mu=1, nu=1)
        hv = hamiltonian(gm, np.array([5.0, 50.0]), np.array([0.0, 0.5]), 0.5, 0.0)
        assert np.all(hv.H_zeta == 0.0)
        assert np.all(hv.H_z == 0.0)

    def test_two_dimensional_chart(self):
        gm = GeneralMetric(
            w="t",
            a="1",
            b=("0", "0"),
            c=(("1", "0"), ("0", "1 + z1^2")),
            h=(("1", "0"), ("0", "1 + z1^2")),
            kappa=1, lam=2, mu=1, nu=1,
        )
        t = np.array([10.0])
        z = np.array([[0.5, 0.1]])
        zeta = np.array([[1.0, 2.0]])
        hv = hamiltonian(gm, t, z, 0.5, zeta)
        expected = 0.25 + (1.0 + 4.0 / 1.25) / 100.0
        assert float(hv.H[0]) == pytest.approx(expected, rel=1e-13)
        assert hv.H_zeta.shape == (1, 2)

    def test_not_positive_metric(self):
        gm = GeneralMetric(w="t", a="-1", c=(("1",),), h=(("1",),), kappa=1, lam=2, mu=1, nu=1)
        with pytest.raises(SpecError):
            hamiltonian(gm, 5.0, 0.0, 0.5, 0.0)
