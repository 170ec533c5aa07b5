import math

import numpy as np
import pytest
from hypothesis import given, strategies as st

from corrqec.errors import ParameterError, StrongCouplingError
from corrqec.rg import (
    BetaFamily,
    BetaFunctionSpec,
    beta,
    closed_form_lambda_star,
    integrate_flow,
    trajectory_to_csv_rows,
)

KONDO = BetaFunctionSpec(BetaFamily.KONDO_K_CHANNEL, channels_k=1)
FRUSTRATED = BetaFunctionSpec(BetaFamily.QUANTUM_FRUSTRATED)


class TestBeta:
    def test_kondo_fixed_point(self):
        spec = BetaFunctionSpec(BetaFamily.KONDO_K_CHANNEL, channels_k=2)
        assert beta(spec, 1.0) == pytest.approx(0.0)

    def test_kondo_value(self):
        assert beta(KONDO, 0.1) == pytest.approx(0.0095)

    def test_frustrated_free_fixed_point(self):
        assert beta(FRUSTRATED, 0.0) == 0.0

    @given(lam=st.floats(0.0, 5.0))
    def test_frustrated_never_grows(self, lam):
        assert beta(FRUSTRATED, lam) <= 0.0


class TestIntegrateFlow:
    def test_zero_coupling_stays_zero(self):
        traj = integrate_flow(FRUSTRATED, 0.0, 7.0)
        assert traj.lambda_star == 0.0
        assert not traj.diverged

    def test_frustrated_matches_exact_solution(self):
        for lam0 in (0.1, 0.5, 2.0):
            for ell in (0.5, 4.0, 10.0):
                traj = integrate_flow(FRUSTRATED, lam0, ell)
                exact = closed_form_lambda_star(FRUSTRATED, lam0, ell).lambda_star
                assert traj.lambda_star == pytest.approx(exact, rel=1e-8)

    def test_pure_quadratic_flow(self):
        spec = BetaFunctionSpec(BetaFamily.KONDO_K_CHANNEL, channels_k=0)
        traj = integrate_flow(spec, 0.1, 2.0)
        assert traj.lambda_star == pytest.approx(0.125, rel=1e-8)

    def test_frustrated_is_monotone_decreasing(self):
        traj = integrate_flow(FRUSTRATED, 1.5, 10.0)
        assert np.all(np.diff(traj.lam) <= 1e-12)

    def test_kondo_approaches_fixed_point_from_below(self):
        spec = BetaFunctionSpec(BetaFamily.KONDO_K_CHANNEL, channels_k=2)
        traj = integrate_flow(spec, 0.5, 50.0)
        assert np.all(np.diff(traj.lam) >= -1e-9)
        assert traj.lam[-1] < 1.0  # fixed point 2/k = 1
        assert traj.lam[-1] > 0.99

    def test_divergence_guard(self):
        spec = BetaFunctionSpec(BetaFamily.KONDO_K_CHANNEL, channels_k=0)
        traj = integrate_flow(spec, 1.0, 2.0)  # pole at ell = 1
        assert traj.diverged
        assert traj.ell[-1] < 2.0

    def test_first_sample_is_bare_coupling(self):
        traj = integrate_flow(FRUSTRATED, 0.7, 3.0)
        assert traj.ell[0] == 0.0
        assert traj.lam[0] == 0.7

    def test_deterministic(self):
        a = integrate_flow(FRUSTRATED, 0.5, 4.0)
        b = integrate_flow(FRUSTRATED, 0.5, 4.0)
        assert np.array_equal(a.ell, b.ell)
        assert np.array_equal(a.lam, b.lam)

    def test_invalid_arguments(self):
        with pytest.raises(ParameterError):
            integrate_flow(FRUSTRATED, -0.1, 1.0)
        with pytest.raises(ParameterError):
            integrate_flow(FRUSTRATED, 0.1, -1.0)


class TestClosedForm:
    def test_no_flow(self):
        assert closed_form_lambda_star(KONDO, 0.1, 0.0).lambda_star == 0.1

    def test_frustrated_large_bare_coupling(self):
        res = closed_form_lambda_star(FRUSTRATED, 2.0, 10.0)
        assert res.lambda_star == pytest.approx(2.0 / 9.0)
        assert res.valid

    def test_kondo_pole(self):
        with pytest.raises(StrongCouplingError):
            closed_form_lambda_star(KONDO, 0.5, 2.0)

    def test_kondo_validity_flag_near_pole(self):
        res = closed_form_lambda_star(KONDO, 0.1, 9.5)
        assert not res.valid


def test_csv_rows_match_trajectory():
    traj = integrate_flow(FRUSTRATED, 0.5, 2.0)
    rows = list(trajectory_to_csv_rows(traj))
    assert len(rows) == len(traj.ell)
    assert rows[0] == (0.0, 0.5)
