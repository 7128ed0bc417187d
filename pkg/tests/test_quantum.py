import math

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st
from scipy.linalg import sqrtm

from helpers import random_density, random_hermitian, rotation_model
from qfidisc import models, quantum
from qfidisc.exceptions import (
    DegenerateModelError,
    DivergenceError,
    InvalidInputError,
    StepSizeError,
)


class TestSpectralDecompose:
    def test_maximally_mixed(self):
        spect = quantum.spectral_decompose(np.eye(2, dtype=complex) / 2)
        assert np.allclose(spect.eigenvalues, [0.5, 0.5])
        assert spect.effective_rank == 2

    def test_pure_state(self):
        rho = np.diag([1.0, 0.0]).astype(complex)
        spect = quantum.spectral_decompose(rho, support_tol=1e-12)
        assert np.allclose(spect.eigenvalues, [1.0, 0.0])
        assert spect.effective_rank == 1

    def test_diagonal_family_point(self):
        spect = quantum.spectral_decompose(models.classical_bit_state(0.3))
        assert np.allclose(spect.eigenvalues, [0.7, 0.3])

    def test_non_hermitian_rejected(self):
        bad = np.array([[0.5, 0.1], [0.0, 0.5]], dtype=complex)
        with pytest.raises(InvalidInputError):
            quantum.spectral_decompose(bad)

    def test_negative_support_tol_rejected(self):
        with pytest.raises(InvalidInputError):
            quantum.spectral_decompose(np.eye(2, dtype=complex) / 2, support_tol=-1.0)

    @given(seed=st.integers(0, 10_000), dim=st.sampled_from([2, 3, 4, 8, 16]))
    def test_reconstruction_and_orthonormality(self, seed, dim):
        rho = random_density(dim, np.random.default_rng(seed))
        spect = quantum.spectral_decompose(rho)
        gram = spect.eigenvectors.conj().T @ spect.eigenvectors
        assert np.max(np.abs(gram - np.eye(dim))) < 1e-10
        assert np.max(np.abs(spect.reconstruct() - rho)) < 1e-10
        assert np.all(np.diff(spect.eigenvalues) <= 1e-15)
        assert 0 <= spect.effective_rank <= dim


class TestFidelity:
    def test_identical_states(self):
        rho = random_density(3, np.random.default_rng(5))
        assert quantum.fidelity(rho, rho) == pytest.approx(1.0, abs=1e-10)

    def test_orthogonal_pure_states(self):
        zero = np.diag([1.0, 0.0]).astype(complex)
        one = np.diag([0.0, 1.0]).astype(complex)
        assert quantum.fidelity(zero, one) == pytest.approx(0.0, abs=1e-12)

    def test_commuting_pair_against_matrix_sqrt_oracle(self):
        # Independent oracle: tr sqrt(sqrt(rho) sigma sqrt(rho)) by dense
        # matrix square roots; for these commuting states the value is
        # sqrt(.25*.75) + sqrt(.75*.25) = sqrt(3)/2.
        rho = models.classical_bit_state(0.25)
        sigma = models.classical_bit_state(0.75)
        s = sqrtm(rho)
        oracle = np.real(np.trace(sqrtm(s @ sigma @ s)))
        assert oracle == pytest.approx(math.sqrt(3) / 2, abs=1e-12)
        assert quantum.fidelity(rho, sigma) == pytest.approx(oracle, abs=1e-10)
        assert quantum.fidelity(rho, sigma) == pytest.approx(0.8660254037844386, abs=1e-12)

    def test_dimension_mismatch(self):
        with pytest.raises(InvalidInputError):
            quantum.fidelity(np.eye(2, dtype=complex) / 2, np.eye(3, dtype=complex) / 3)

    @given(seed=st.integers(0, 10_000), dim=st.sampled_from([2, 3, 4]))
    def test_symmetric_and_discriminating(self, seed, dim):
        rng = np.random.default_rng(seed)
        rho, sigma = random_density(dim, rng), random_density(dim, rng)
        f_rs = quantum.fidelity(rho, sigma)
        f_sr = quantum.fidelity(sigma, rho)
        assert abs(f_rs - f_sr) < 1e-10
        assert 0.0 <= f_rs <= 1.0
        assert quantum.fidelity(rho, rho) > 1.0 - 1e-10
        if np.max(np.abs(rho - sigma)) > 1e-3:
            assert f_rs < 1.0 - 1e-8


class TestSld:
    def test_diagonal_lyapunov_solve(self):
        # Oracle: for diagonal rho and drho the defining equation
        # 2 drho = L rho + rho L gives L_ii = drho_ii / rho_ii.
        rho = models.classical_bit_state(0.5)
        drho = np.diag([1.0, -1.0]).astype(complex)
        l_op = quantum.sld(rho, drho)
        assert np.allclose(l_op, np.diag([2.0, -2.0]))
        assert np.allclose(2.0 * drho, l_op @ rho + rho @ l_op, atol=1e-12)

    def test_stationary_pure_state(self):
        plus = np.full((2, 2), 0.5, dtype=complex)
        l_op = quantum.sld(plus, np.zeros((2, 2), dtype=complex))
        assert np.max(np.abs(l_op)) < 1e-12

    def test_trig_point(self):
        theta = math.pi / 4
        rho = models.trig_model_state(theta)
        drho = math.sin(2 * theta) * np.diag([1.0, -1.0]).astype(complex)
        assert np.allclose(quantum.sld(rho, drho), np.diag([2.0, -2.0]), atol=1e-12)

    def test_zero_matrix_degenerate(self):
        with pytest.raises(DegenerateModelError):
            quantum.sld(np.zeros((2, 2), dtype=complex), np.diag([1.0, -1.0]).astype(complex))

    @given(seed=st.integers(0, 5_000), dim=st.sampled_from([2, 3, 4]))
    def test_hermitian_and_solves_lyapunov(self, seed, dim):
        rng = np.random.default_rng(seed)
        rho = random_density(dim, rng)
        drho = random_hermitian(dim, rng)
        l_op = quantum.sld(rho, drho)
        assert np.max(np.abs(l_op - l_op.conj().T)) < 1e-10
        # Full-rank input: the Lyapunov equation holds exactly.
        assert np.max(np.abs(2.0 * drho - (l_op @ rho + rho @ l_op))) < 1e-8


class TestQfi:
    def test_diagonal_family_values(self):
        drho = np.diag([1.0, -1.0]).astype(complex)
        q_half = quantum.qfi(models.classical_bit_state(0.5), drho)
        assert q_half == pytest.approx(4.0, rel=1e-10)
        q_quarter = quantum.qfi(models.classical_bit_state(0.25), drho)
        assert q_quarter == pytest.approx(16.0 / 3.0, rel=1e-10)

    def test_rank_one_boundary(self):
        drho = np.diag([1.0, -1.0]).astype(complex)
        assert quantum.qfi(models.classical_bit_state(0.0), drho) == pytest.approx(1.0, rel=1e-12)

    @given(seed=st.integers(0, 5_000), dim=st.sampled_from([2, 3, 4]))
    def test_matches_trace_form(self, seed, dim):
        rng = np.random.default_rng(seed)
        rho = random_density(dim, rng)
        drho = random_hermitian(dim, rng)
        q = quantum.qfi(rho, drho)
        l_op = quantum.sld(rho, drho)
        q_trace = float(np.real(np.trace(rho @ l_op @ l_op)))
        assert q == pytest.approx(q_trace, rel=1e-8)

    @given(
        seed=st.integers(0, 5_000),
        scale=st.floats(-7.0, 7.0).filter(lambda c: abs(c) > 1e-3),
    )
    def test_quadratic_in_derivative(self, seed, scale):
        rng = np.random.default_rng(seed)
        rho = random_density(3, rng)
        drho = random_hermitian(3, rng)
        assert quantum.qfi(rho, scale * drho) == pytest.approx(
            scale**2 * quantum.qfi(rho, drho), rel=1e-10
        )


class TestBuresMetric:
    @given(seed=st.integers(0, 2_000), dim=st.sampled_from([2, 4]), theta=st.floats(-1.0, 1.0))
    @settings(max_examples=30)
    def test_quarter_qfi_at_regular_points(self, seed, dim, theta):
        model = rotation_model(dim, seed)
        q = quantum.model_qfi(model, theta)
        if q < 1e-2:  # rotation generator nearly commutes with the state
            return
        g = quantum.bures_metric_fd(model, theta, eps=1e-4)
        assert g == pytest.approx(q / 4.0, rel=1e-3)

    def test_classical_bit_midpoint(self):
        model = models.make_model("classical-bit")
        # Oracle at the regular point: g = Q / 4 = 1.
        assert quantum.bures_metric_fd(model, 0.5, eps=1e-4) == pytest.approx(1.0, rel=1e-3)

    def test_trig_interior_and_endpoints(self):
        model = models.make_model("trig")
        for theta in (0.3, 1.0, math.pi / 2, 0.0):
            assert quantum.bures_metric_fd(model, theta, eps=1e-4) == pytest.approx(1.0, rel=1e-3)

    def test_underflow_raises_step_size_error(self):
        constant = models.ParametricModel(
            name="constant", dim=2, state_fn=lambda theta: np.eye(2, dtype=complex) / 2
        )
        with pytest.raises(StepSizeError):
            quantum.bures_metric_fd(constant, 0.0, eps=1e-4)

    def test_nonpositive_eps_rejected(self):
        with pytest.raises(StepSizeError):
            quantum.bures_metric_fd(models.make_model("trig"), 0.5, eps=0.0)


class TestQfiLimit:
    def test_trig_at_upper_endpoint(self):
        model = models.make_model("trig")
        limit = quantum.qfi_limit(model, math.pi / 2, side="below")
        assert limit.value == pytest.approx(4.0, rel=1e-6)

    def test_classical_bit_diverges(self):
        model = models.make_model("classical-bit")
        with pytest.raises(DivergenceError) as err:
            quantum.qfi_limit(model, 0.0, side="above")
        assert err.value.values is not None and len(err.value.values) > 0

    def test_transverse_qubit_matches_closed_form_and_metric(self):
        # Closed form at N = 1: 2 (exp(-kt) + kt - 1) / k^2; independent
        # cross-check against the fidelity-based metric (limit = 4 g).
        model = models.make_model("transverse-qubit", kappa=1.0, t=1.0)
        expected = 2.0 * (math.exp(-1.0) + 1.0 - 1.0)
        limit = quantum.qfi_limit(model, 0.0, side="above")
        assert limit.value == pytest.approx(expected, rel=1e-3)
        g = quantum.bures_metric_fd(model, 0.0, eps=1e-4)
        assert limit.value == pytest.approx(4.0 * g, rel=1e-3)

    def test_bad_side_rejected(self):
        with pytest.raises(InvalidInputError):
            quantum.qfi_limit(models.make_model("trig"), 0.5, side="sideways")
