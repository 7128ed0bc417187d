import math

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from helpers import diagonal_branch_model
from qfidisc import discontinuity, models
from qfidisc.exceptions import DomainError, MultiBranchError, NotADiscontinuityError
from qfidisc.models import ParametricModel


class TestVanishingEigenvalueBranch:
    def test_classical_bit_branch_is_the_parameter(self):
        model = models.make_model("classical-bit")
        branch = discontinuity.vanishing_eigenvalue_branch(model, 0.0)
        for off, val in zip(branch.offsets, branch.values):
            assert val == pytest.approx(off * branch.h, abs=1e-14)
        assert branch.rank_at_bar == 1
        assert branch.rank_beside == 2

    def test_trig_branch_is_sin_squared(self):
        model = models.make_model("trig")
        branch = discontinuity.vanishing_eigenvalue_branch(model, 0.0)
        assert all(off >= 0 for off in branch.offsets)  # one-sided at the edge
        for off, val in zip(branch.offsets, branch.values):
            assert val == pytest.approx(math.sin(off * branch.h) ** 2, abs=1e-13)

    def test_transverse_branch_matches_bloch_length(self):
        kappa, t = 1.0, 1.0
        model = models.make_model("transverse-qubit", kappa=kappa, t=t)
        branch = discontinuity.vanishing_eigenvalue_branch(model, 0.0)
        for off, val in zip(branch.offsets, branch.values):
            _, _, b, f, c = models.ghz_coefficients(off * branch.h, kappa, t)
            lam = 0.5 * (1.0 - math.hypot(b + f, c))
            assert val == pytest.approx(lam, abs=1e-12)

    def test_regular_point_rejected(self):
        model = models.make_model("classical-bit")
        with pytest.raises(NotADiscontinuityError):
            discontinuity.vanishing_eigenvalue_branch(model, 0.5)

    def test_full_rank_model_rejected(self):
        def state(theta):
            base = models.trig_model_state(theta)
            return 0.9 * base + 0.1 * np.eye(2, dtype=complex) / 2

        depolarized = ParametricModel(
            name="depolarized-trig", dim=2, state_fn=state, domain=(0.0, math.pi / 2)
        )
        with pytest.raises(NotADiscontinuityError):
            discontinuity.vanishing_eigenvalue_branch(depolarized, 0.0)

    def test_simultaneous_vanishing_rejected(self):
        # The 2-qubit GHZ family drops from rank 4 to rank 2 at theta = 0.
        model = models.make_model("ghz", kappa=1.0, t=1.0, n_qubits=2)
        with pytest.raises(MultiBranchError):
            discontinuity.vanishing_eigenvalue_branch(model, 0.0)

    def test_no_room_in_domain(self):
        model = models.make_model("classical-bit")
        with pytest.raises(DomainError):
            discontinuity.vanishing_eigenvalue_branch(model, 0.0, h=2.0)

    def test_persistent_kernel_walks_inward(self):
        # One permanent zero eigenvalue plus one vanishing branch: the
        # kernel at theta_bar is two-dimensional, so matching starts from
        # the outermost grid point instead.
        def state(theta):
            q = math.sin(theta) ** 2
            return np.diag([q, 1.0 - q, 0.0]).astype(complex)

        model = ParametricModel(name="qutrit-with-kernel", dim=3, state_fn=state)
        branch = discontinuity.vanishing_eigenvalue_branch(model, 0.0)
        for off, val in zip(branch.offsets, branch.values):
            assert val == pytest.approx(math.sin(off * branch.h) ** 2, abs=1e-13)


class TestClassify:
    def test_classical_bit_second_kind(self):
        report = discontinuity.classify(models.make_model("classical-bit"), 0.0)
        assert report.kind == "second-kind"
        assert report.speed == pytest.approx(1.0, abs=1e-6)
        assert math.isinf(report.qfi_limit)
        assert math.isinf(report.delta_q_measured)
        assert report.evidence["qfi_samples"]  # divergence evidence attached

    def test_trig_jump(self):
        report = discontinuity.classify(models.make_model("trig"), 0.0)
        assert report.kind == "jump"
        assert abs(report.speed) < 1e-6
        assert report.acceleration == pytest.approx(2.0, rel=1e-4)
        assert report.delta_q_measured == pytest.approx(4.0, rel=1e-6)
        assert report.qfi_at_bar == pytest.approx(0.0, abs=1e-12)
        assert report.delta_q_predicted == pytest.approx(report.delta_q_measured, rel=1e-2)

    def test_trig_jump_at_upper_endpoint(self):
        report = discontinuity.classify(models.make_model("trig"), math.pi / 2)
        assert report.kind == "jump"
        assert report.delta_q_measured == pytest.approx(4.0, rel=1e-6)

    def test_transverse_jump_identity(self):
        for t in (0.5, 1.0, 2.0):
            model = models.make_model("transverse-qubit", kappa=1.0, t=t)
            report = discontinuity.classify(model, 0.0)
            assert report.kind == "jump"
            assert abs(report.speed) < 1e-6
            expected_delta = models.ghz_qfi_continuous(1, 1.0, t) - models.ghz_qfi_discontinuous(
                1, 1.0, t
            )
            assert report.delta_q_measured == pytest.approx(expected_delta, rel=1e-3)
            assert report.delta_q_predicted == pytest.approx(report.delta_q_measured, rel=1e-2)

    def test_measured_jump_is_limit_minus_value(self):
        report = discontinuity.classify(models.make_model("trig"), 0.0)
        assert report.delta_q_measured == report.qfi_limit - report.qfi_at_bar

    @given(
        curvature=st.floats(0.5, 5.0),
        cubic=st.floats(-0.5, 0.5),
        center=st.floats(-1.0, 1.0),
    )
    @settings(max_examples=25)
    def test_quadratic_branch_recovers_curvature(self, curvature, cubic, center):
        # lambda_min = c x^2 + d x^3 near x = 0 vanishes with speed 0 and
        # acceleration 2c, so the jump prediction is 4c.
        model = diagonal_branch_model(
            lambda theta: curvature * (theta - center) ** 2 + cubic * (theta - center) ** 3
        )
        report = discontinuity.classify(model, center)
        assert report.kind == "jump"
        assert report.acceleration == pytest.approx(2.0 * curvature, rel=1e-4)
        assert report.delta_q_predicted == pytest.approx(report.delta_q_measured, rel=1e-2)

    def test_report_serializes_infinities(self):
        report = discontinuity.classify(models.make_model("classical-bit"), 0.0)
        payload = report.to_json()
        assert payload["kind"] == "second-kind"
        assert payload["qfi_limit"] == "inf"
        assert payload["delta_q_measured"] == "inf"
        assert isinstance(payload["speed"], float)
