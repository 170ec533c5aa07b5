import json
import math

import numpy as np
import pytest
from hypothesis import given, strategies as st

from corrqec.errors import ParameterError
from corrqec.noise import (
    CouplingSet,
    EnvironmentSpec,
    Kernel,
    effective_coupling,
    four_point_normal_ordered,
    hypercube_length,
    multiqubit_offdiagonal,
    spin_boson_offdiagonal,
    two_point_correlator,
)


def make_env(**kw):
    base = dict(
        cutoff_lambda=100.0,
        velocity=1.0,
        dyn_exponent=1.0,
        scaling_dim=0.75,
        spatial_dim=0,
        tau0=0.01,
        kernel=Kernel.POWER_LAW_TEMPORAL,
    )
    base.update(kw)
    return EnvironmentSpec(**base)


class TestEnvironmentSpec:
    def test_validation(self):
        for bad in (
            dict(cutoff_lambda=0.0),
            dict(velocity=-1.0),
            dict(dyn_exponent=0.0),
            dict(scaling_dim=0.0),
            dict(tau0=0.0),
            dict(spatial_dim=-1),
        ):
            with pytest.raises(ParameterError):
                make_env(**bad)

    def test_json_round_trip(self):
        env = make_env(kernel=Kernel.POWER_LAW_SPACETIME, spatial_dim=2)
        again = EnvironmentSpec.from_json(env.to_json())
        assert again == env
        assert json.loads(env.to_json())["kernel"] == "PowerLawSpaceTime"

    def test_xi0(self):
        env = make_env(velocity=8.0, cutoff_lambda=2.0, dyn_exponent=2.0)
        assert env.xi0 == pytest.approx(2.0)


class TestTwoPoint:
    def test_coincident_points_clamped(self):
        env = make_env()
        # |dt| clamps at 1/Lambda
        assert two_point_correlator(env, 0.0, 0.0) == pytest.approx(
            0.5 * (env.tau0 * env.cutoff_lambda) ** 1.5
        )
        assert two_point_correlator(env, 0.0, 0.0) == two_point_correlator(
            env, 0.0, 0.5 / env.cutoff_lambda
        )

    def test_power_law_tail(self):
        env = make_env(scaling_dim=0.5, dyn_exponent=2.0)  # exponent 0.5
        c1 = two_point_correlator(env, 0.0, 1.0)
        c4 = two_point_correlator(env, 0.0, 4.0)
        assert c1 / c4 == pytest.approx(2.0)

    def test_temporal_kernel_has_no_spatial_reach(self):
        env = make_env()
        assert two_point_correlator(env, 1e-9, 0.5) == 0.0

    def test_spacetime_kernel_is_separable(self):
        env = make_env(kernel=Kernel.POWER_LAW_SPACETIME, spatial_dim=1)
        c = two_point_correlator(env, 2.0, 0.5)
        temporal = two_point_correlator(make_env(), 0.0, 0.5)
        spatial = (env.xi0 / 2.0) ** (2.0 * env.scaling_dim)
        assert c == pytest.approx(temporal * spatial)

    def test_ohmic_kernel_exponent_two(self):
        env = make_env(kernel=Kernel.OHMIC_SPIN_BOSON)
        c1 = two_point_correlator(env, 0.0, 1.0)
        c3 = two_point_correlator(env, 0.0, 3.0)
        assert c1 / c3 == pytest.approx(9.0)

    @given(dt=st.floats(-50.0, 50.0))
    def test_even_in_time(self, dt):
        env = make_env()
        assert two_point_correlator(env, 0.0, dt) == two_point_correlator(
            env, 0.0, -dt
        )

    @given(
        dt1=st.floats(0.02, 10.0),
        step=st.floats(0.01, 10.0),
    )
    def test_monotone_decay_past_cutoff(self, dt1, step):
        env = make_env()
        assert two_point_correlator(env, 0.0, dt1 + step) <= two_point_correlator(
            env, 0.0, dt1
        )

    def test_four_point_is_wick_pair(self):
        env = make_env()
        c = two_point_correlator(env, 0.0, 0.7)
        assert four_point_normal_ordered(env, 0.0, 0.7) == pytest.approx(2.0 * c * c)


class TestCouplings:
    def test_effective_coupling_norm(self):
        c = CouplingSet(3.0, 4.0, 0.0)
        assert effective_coupling(c) == pytest.approx(5.0)

    @given(
        lx=st.floats(0.0, 10.0),
        ly=st.floats(0.0, 10.0),
        lz=st.floats(0.0, 10.0),
    )
    def test_effective_coupling_bounds(self, lx, ly, lz):
        lam = effective_coupling(CouplingSet(lx, ly, lz))
        assert lam >= max(lx, ly, lz) - 1e-12
        assert lam <= lx + ly + lz + 1e-12

    def test_negative_coupling_rejected(self):
        with pytest.raises(ParameterError):
            CouplingSet(-0.1, 0.0, 0.0)


def test_hypercube_length():
    env = make_env(velocity=2.0, dyn_exponent=3.0)
    assert hypercube_length(env, 8.0) == pytest.approx(16.0 ** (1.0 / 3.0))
    with pytest.raises(ParameterError):
        hypercube_length(env, 0.0)


class TestSpinBoson:
    def test_initial_value_and_decay(self):
        assert spin_boson_offdiagonal(0.3, 50.0, 0.0) == 1.0
        vals = [spin_boson_offdiagonal(0.3, 50.0, t) for t in (0.1, 1.0, 10.0)]
        assert vals == sorted(vals, reverse=True)

    def test_power_law_form(self):
        assert spin_boson_offdiagonal(0.5, 10.0, 1.0) == pytest.approx(
            11.0 ** (-0.25)
        )

    def test_invalid_arguments(self):
        with pytest.raises(ParameterError):
            spin_boson_offdiagonal(0.3, 50.0, -1.0)
        with pytest.raises(ParameterError):
            spin_boson_offdiagonal(-0.3, 50.0, 1.0)

    def test_multiqubit_common_vs_independent(self):
        lam, cut, t = 0.2, 30.0, 2.0
        single = spin_boson_offdiagonal(lam, cut, t)
        indep = multiqubit_offdiagonal(lam, cut, t, 3, 1, common_bath=False)
        common = multiqubit_offdiagonal(lam, cut, t, 3, 1, common_bath=True)
        # independent baths: exponent linear in p - q; common bath: squared
        assert indep == pytest.approx(single**2)
        assert common == pytest.approx(single**4)

    def test_multiqubit_diagonal_is_static(self):
        assert multiqubit_offdiagonal(0.4, 20.0, 5.0, 2, 2, True) == 1.0
