"""Tests for Helmholtz solutions and the scattering matrix."""

import json
import math

import numpy as np
import pytest

from warpscatter.core.config import SolverConfig
from warpscatter.core.errors import ClosedChannelError, SpecError
from warpscatter.core.io import format_result
from warpscatter.manifold import ManifoldSpec, RadialProfile
from warpscatter.modes import Channel
from warpscatter.scattering import (
    channel_space,
    helmholtz_bvp,
    mode_basis,
    s_matrix,
    s_matrix_payload,
    s_matrix_sweep,
    scattering_phase,
)

LAM = 1.25
K = math.sqrt(LAM - 0.25)


def transmission(ell: int, k: float) -> float:
    """|T|² of -v'' + (1/4 + ℓ²) sech² r v = k² v."""
    s = math.sinh(math.pi * k) ** 2
    return s / (s + math.cosh(math.pi * ell) ** 2)


@pytest.fixture(scope="module")
def cosh_smatrix():
    spec = ManifoldSpec(n=2, topology="full_line", profile=RadialProfile(kind="cosh", c0=1.0))
    return s_matrix(spec, LAM, 1.0, config=SolverConfig())


class TestChannelSpace:
    def test_half_line_channels(self, half_line_exponential):
        space = channel_space(half_line_exponential, 1.0, 4.0)
        assert [c.key for c in space.channels] == [(0, 0, 0), (0, 1, 0), (0, 1, 1), (0, 2, 0), (0, 2, 1)]
        assert space.weights == (1.0,) * 5

    def test_closed_end_contributes_nothing(self, half_line_exponential):
        space = channel_space(half_line_exponential, 0.2, 4.0)
        assert space.size == 0
        assert space.open_ends == (False,)

    def test_cusp_end_keeps_only_the_constant_mode(self, cusp_line):
        space = channel_space(cusp_line, 1.0, 1.0)
        cusp = [c for c in space.channels if c.end == 0]
        assert [c.index for c in cusp] == [0]
        assert space.weights[space.position(0, 0)] == pytest.approx(2 * math.pi)

    def test_generalized_channels_truncated(self, cusp_line):
        space = channel_space(cusp_line, 1.0, 4.0, generalized=True, cusp_cutoff=1)
        generalized = [c.key for c in space.channels if c.kind == "generalized"]
        assert generalized == [(0, 1, 0), (0, 1, 1)]

    def test_complex_lambda_rejected(self, hyperbolic_funnel):
        with pytest.raises(SpecError):
            channel_space(hyperbolic_funnel, 1.0 + 0.5j, 1.0)


class TestHelmholtz:
    def test_total_reflection(self, cusp_line):
        # ℓ = 1 is trapped in the cusp: all incoming flux from end 1 comes back
        mode = Channel(index=1, eigenvalue=1.0)
        sol = helmholtz_bvp(cusp_line, 1.0, mode, {1: 1.0})
        assert abs(sol.outgoing[1]) == pytest.approx(1.0, abs=1e-6)
        assert sol.kinds == {0: "cusp", 1: "open"}

    def test_half_line_unit_modulus(self, half_line_exponential):
        sol = helmholtz_bvp(half_line_exponential, 2.0, Channel(index=0, eigenvalue=0.0), {0: 1.0})
        assert abs(sol.outgoing[0]) == pytest.approx(1.0, abs=1e-7)
        assert abs(sol.values[0]) < 1e-8 * np.max(np.abs(sol.values))

    def test_linearity(self, hyperbolic_funnel):
        mode = Channel(index=0, eigenvalue=0.0)
        basis = mode_basis(hyperbolic_funnel, mode, LAM)
        one = helmholtz_bvp(hyperbolic_funnel, LAM, mode, {0: 1.0}, basis=basis)
        two = helmholtz_bvp(hyperbolic_funnel, LAM, mode, {0: 2.0}, basis=basis)
        np.testing.assert_allclose(two.values, 2 * one.values, rtol=1e-12)
        assert two.outgoing[0] == pytest.approx(2 * one.outgoing[0], rel=1e-12)
        assert two.outgoing[1] == pytest.approx(2 * one.outgoing[1], rel=1e-12)

    def test_superposition_of_basis_columns(self, hyperbolic_funnel):
        mode = Channel(index=1, eigenvalue=1.0)
        basis = mode_basis(hyperbolic_funnel, mode, LAM)
        a, b = 0.3 - 0.4j, 1.1 + 0.2j
        mixed = helmholtz_bvp(hyperbolic_funnel, LAM, mode, {0: a, 1: b}, basis=basis)
        col0 = helmholtz_bvp(hyperbolic_funnel, LAM, mode, {0: 1.0}, basis=basis)
        col1 = helmholtz_bvp(hyperbolic_funnel, LAM, mode, {1: 1.0}, basis=basis)
        scale = np.max(np.abs(mixed.values))
        np.testing.assert_allclose(mixed.values, a * col0.values + b * col1.values, atol=1e-10 * scale)

    def test_field_continuous_at_the_match(self, hyperbolic_funnel):
        mode = Channel(index=0, eigenvalue=0.0)
        sol = helmholtz_bvp(hyperbolic_funnel, LAM, mode, {0: 1.0})
        i = int(np.searchsorted(sol.r, 0.0))
        h = sol.r[i] - sol.r[i - 1]
        predicted = sol.values[i - 1] + h * 0.5 * (sol.derivatives[i - 1] + sol.derivatives[i])
        assert abs(sol.values[i] - predicted) < 1e-3 * np.max(np.abs(sol.values))

    def test_closed_mode_rejected(self, half_line_exponential):
        with pytest.raises(ClosedChannelError):
            helmholtz_bvp(half_line_exponential, 0.2, Channel(index=0, eigenvalue=0.0), {0: 1.0})

    def test_unknown_end_rejected(self, half_line_exponential):
        with pytest.raises(SpecError):
            helmholtz_bvp(half_line_exponential, 2.0, Channel(index=0, eigenvalue=0.0), {1: 1.0})


class TestSMatrix:
    def test_half_line_is_diagonal_phase(self, half_line_exponential):
        S = s_matrix(half_line_exponential, 2.0, 4.0)
        M = S.matrix
        np.testing.assert_allclose(np.abs(np.diag(M)), 1.0, atol=1e-7)
        assert np.count_nonzero(M - np.diag(np.diag(M))) == 0
        assert S.unitarity_residual < 1e-6
        assert S.reciprocity_residual is None

    def test_slots_share_a_block(self, half_line_exponential):
        S = s_matrix(half_line_exponential, 2.0, 1.0)
        assert S.entry((0, 1, 0), (0, 1, 0)) == S.entry((0, 1, 1), (0, 1, 1))
        assert S.entry((0, 1, 0), (0, 1, 1)) == 0

    @pytest.mark.parametrize("ell", [0, 1])
    def test_cosh_transmission(self, cosh_smatrix, ell):
        t = cosh_smatrix.entry((0, ell, 0), (1, ell, 0))
        r = cosh_smatrix.entry((1, ell, 0), (1, ell, 0))
        assert abs(t) ** 2 == pytest.approx(transmission(ell, K), rel=1e-6)
        assert abs(r) ** 2 == pytest.approx(1 - transmission(ell, K), rel=1e-5)

    def test_cosh_unitary_and_reciprocal(self, cosh_smatrix):
        assert cosh_smatrix.unitarity_residual < 1e-6
        assert cosh_smatrix.reciprocity_residual < 1e-7

    def test_modes_decouple(self, cosh_smatrix):
        space = cosh_smatrix.space
        for i, out in enumerate(space.channels):
            for j, into in enumerate(space.channels):
                if (out.index, out.slot) != (into.index, into.slot):
                    assert cosh_smatrix.matrix[i, j] == 0

    def test_cusp_line_unitary_with_volume_weight(self, cusp_line):
        S = s_matrix(cusp_line, 1.0, 1.0)
        assert np.diag(S.gram)[S.space.position(0, 0)] == pytest.approx(2 * math.pi)
        assert S.unitarity_residual < 1e-6
        assert abs(S.entry((1, 1, 0), (1, 1, 0))) == pytest.approx(1.0, abs=1e-6)

    def test_generalized_keeps_physical_entries(self, cusp_line):
        physical = s_matrix(cusp_line, 1.0, 1.0)
        general = s_matrix(cusp_line, 1.0, 1.0, generalized=True, cusp_cutoff=1)
        assert general.generalized
        for out in ((0, 0, 0), (1, 0, 0)):
            for into in ((0, 0, 0), (1, 0, 0)):
                assert general.entry(out, into) == pytest.approx(physical.entry(out, into), abs=1e-9)
        assert general.unitarity_residual == pytest.approx(physical.unitarity_residual, abs=1e-12)
        assert general.physical().shape == physical.matrix.shape

    def test_convention_recorded(self, cosh_smatrix):
        assert set(cosh_smatrix.convention) == {"expansion", "phase", "cusp_physical", "cusp_generalized"}

    def test_payload_is_json(self, cosh_smatrix):
        payload = json.loads(format_result(s_matrix_payload(cosh_smatrix)))
        size = cosh_smatrix.space.size
        assert len(payload["channels"]) == size
        assert np.asarray(payload["matrix"]).shape == (size, size, 2)
        assert payload["unitarity_residual"] < 1e-6


class TestPhaseAndSweep:
    def test_single_channel_phase(self, half_line_exponential):
        S = s_matrix(half_line_exponential, 2.0, 0.0)
        assert scattering_phase(S) == pytest.approx(0.5 * np.angle(S.matrix[0, 0]))

    def test_sweep_transmission_curve(self, hyperbolic_funnel):
        lams = np.array([0.2, 1.0, LAM])
        sweep = s_matrix_sweep(hyperbolic_funnel, lams, 0.0)
        curve = sweep.curve((0, 0, 0), (1, 0, 0))
        assert np.isnan(curve[0])
        for lam, value in zip(lams[1:], curve[1:]):
            k = math.sqrt(lam - 0.25)
            assert abs(value) ** 2 == pytest.approx(math.tanh(math.pi * k) ** 2, rel=1e-6)
        assert np.all(sweep.unitarity() < 1e-6)
        assert sweep.phases()[0] == 0.0

    def test_empty_sweep_rejected(self, hyperbolic_funnel):
        with pytest.raises(SpecError):
            s_matrix_sweep(hyperbolic_funnel, [], 1.0)


LAMBDAS = (0.5, 1.0, 1.75, 2.5, 4.0)
PROFILES = {
    "cosh": RadialProfile(kind="cosh", c0=1.0),
    "exponential_cusp": RadialProfile(kind="exponential", c0=-1.0),
    "euclidean_like": RadialProfile(kind="bracket", beta=1.0),
    "slow_end": RadialProfile(kind="bracket", beta=0.6),
}


@pytest.fixture(scope="module", params=list(PROFILES))
def line_sweep(request):
    spec = ManifoldSpec(n=2, topology="full_line", profile=PROFILES[request.param])
    return request.param, s_matrix_sweep(spec, np.array(LAMBDAS), 1.0, config=SolverConfig())


class TestUnitarityAcrossManifolds:
    def test_unitary_at_every_lambda(self, line_sweep):
        _, sweep = line_sweep
        assert len(sweep.matrices) == len(LAMBDAS)
        assert np.all(sweep.unitarity() <= 1e-6)

    def test_reciprocal(self, line_sweep):
        name, sweep = line_sweep
        if name == "exponential_cusp":
            pytest.skip("cusp amplitudes use the volume-weighted convention")
        for S in sweep.matrices:
            assert S.reciprocity_residual < 1e-7

    def test_even_profile_reflects_alike(self, line_sweep):
        name, sweep = line_sweep
        if name == "exponential_cusp":
            pytest.skip("ends differ")
        for S in sweep.matrices:
            for ell in (0, 1):
                left = S.entry((0, ell, 0), (0, ell, 0))
                right = S.entry((1, ell, 0), (1, ell, 0))
                assert abs(left) == pytest.approx(abs(right), abs=1e-7)

    def test_transparent_at_high_energy(self, line_sweep):
        name, sweep = line_sweep
        if name == "exponential_cusp":
            pytest.skip("only the regular end is open to transmission")
        S = sweep.matrices[-1]
        assert abs(S.entry((0, 0, 0), (1, 0, 0))) ** 2 > 0.95

    def test_cosh_matches_analytic_transmission(self, line_sweep):
        name, sweep = line_sweep
        if name != "cosh":
            pytest.skip("closed form known only for the cosh profile")
        for lam, S in zip(LAMBDAS, sweep.matrices):
            k = math.sqrt(lam - 0.25)
            for ell in (0, 1):
                t = S.entry((0, ell, 0), (1, ell, 0))
                assert abs(t) ** 2 == pytest.approx(transmission(ell, k), rel=1e-6, abs=1e-9)
