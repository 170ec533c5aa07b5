import math

import numpy as np
import pytest
from hypothesis import given, strategies as st

from corrqec.code3 import (
    SYNDROME_TO_QUBIT,
    DensityMatrix2,
    LogicalState,
    cycle_stats,
    density_from_offdiagonal,
    encode,
    encoded_states,
    encoding_circuit,
    entropy_asymptotics,
    history_probability,
    mean_history_offdiagonal,
    phase_flip,
    residual_offdiagonal,
    syndrome_extract,
    von_neumann_entropy,
)
from corrqec.errors import ParameterError

STATE = LogicalState(0.6, 0.8)


class TestEncoding:
    def test_code_words(self):
        up, down = encoded_states()
        assert np.vdot(up, up) == pytest.approx(1.0)
        assert np.vdot(down, down) == pytest.approx(1.0)
        assert np.vdot(up, down) == pytest.approx(0.0)
        for b in range(8):
            parity = bin(b).count("1") % 2
            assert up[b] == (0.5 if parity == 0 else 0.0)
            assert down[b] == (0.5 if parity == 1 else 0.0)

    def test_encode_is_linear_combination_of_code_words(self):
        up, down = encoded_states()
        vec = encode(STATE)
        assert np.allclose(vec, STATE.alpha * up + STATE.beta * down)

    def test_circuit_is_self_inverse(self):
        c = encoding_circuit()
        assert np.allclose(c @ c, np.eye(8))

    def test_logical_state_must_be_normalized(self):
        with pytest.raises(ParameterError):
            LogicalState(1.0, 1.0)


class TestSyndromes:
    def test_clean_cycle(self):
        outcomes = syndrome_extract(encode(STATE))
        p, amps = outcomes[(0, 0)]
        assert p == pytest.approx(1.0)
        assert np.allclose(amps, [STATE.alpha, STATE.beta])
        for synd in ((1, 0), (0, 1), (1, 1)):
            assert outcomes[synd][0] == pytest.approx(0.0)

    @pytest.mark.parametrize("qubit,syndrome", [(1, (1, 1)), (2, (1, 0)), (3, (0, 1))])
    def test_single_flip_is_corrected(self, qubit, syndrome):
        vec = phase_flip(encode(STATE), qubit)
        outcomes = syndrome_extract(vec)
        p, amps = outcomes[syndrome]
        assert p == pytest.approx(1.0)
        assert SYNDROME_TO_QUBIT[syndrome] == qubit
        # recovered amplitudes match the input up to a global phase
        assert abs(np.vdot(amps, [STATE.alpha, STATE.beta])) == pytest.approx(1.0)

    def test_probabilities_sum_to_one_for_partial_rotation(self):
        vec = encode(STATE).astype(complex)
        for qubit, angle in ((1, 0.3), (2, 0.7), (3, 1.1)):
            phase = np.ones(8, dtype=complex)
            for b in range(8):
                sign = -1.0 if (b >> (3 - qubit)) & 1 else 1.0
                phase[b] = np.exp(-0.5j * angle * sign)
            vec = phase * vec
        outcomes = syndrome_extract(vec)
        total = sum(p for p, _ in outcomes.values())
        assert total == pytest.approx(1.0, abs=1e-12)


class TestCycleStats:
    def test_leading_order_values(self):
        s = cycle_stats(0.01)
        assert s.p1 == pytest.approx(0.03)
        assert s.p0 == pytest.approx(0.97)
        assert s.dephasing_error == pytest.approx(0.98)
        assert s.dephasing_no_error == pytest.approx(1.0 - 2e-6)

    def test_epsilon_range(self):
        with pytest.raises(ParameterError):
            cycle_stats(0.5)
        with pytest.raises(ParameterError):
            cycle_stats(-0.01)

    @given(
        eps=st.floats(0.0, 1.0 / 3.0),
        n=st.integers(1, 30),
    )
    def test_history_probabilities_normalize(self, eps, n):
        total = sum(history_probability(n, m, eps) for m in range(n + 1))
        assert total == pytest.approx(1.0, abs=1e-9)

    def test_history_probability_binomial(self):
        assert history_probability(4, 2, 0.1) == pytest.approx(
            6 * 0.7**2 * 0.3**2
        )


class TestResiduals:
    def test_product_form(self):
        off = residual_offdiagonal(5, 2, STATE, 0.1)
        expected = 0.6 * 0.8 * (1 - 2e-3) ** 3 * 0.8**2
        assert off == pytest.approx(expected)

    def test_mean_history(self):
        off = mean_history_offdiagonal(100, STATE, 0.01)
        assert off == pytest.approx(0.48 * math.exp(-6e-2))

    def test_bad_error_count(self):
        with pytest.raises(ParameterError):
            residual_offdiagonal(3, 4, STATE, 0.1)


class TestEntropy:
    def test_pure_and_mixed(self):
        pure = DensityMatrix2(np.array([[1.0, 0.0], [0.0, 0.0]]))
        mixed = DensityMatrix2(0.5 * np.eye(2))
        assert von_neumann_entropy(pure) == pytest.approx(0.0)
        assert von_neumann_entropy(mixed) == pytest.approx(math.log(2.0))

    def test_density_validation(self):
        with pytest.raises(ParameterError):
            DensityMatrix2(np.array([[0.5, 0.9], [0.9, 0.5]]))  # not PSD
        with pytest.raises(ParameterError):
            DensityMatrix2(np.array([[0.7, 0.0], [0.0, 0.7]]))  # trace != 1
        with pytest.raises(ParameterError):
            DensityMatrix2(np.array([[0.5, 1j], [2j, 0.5]]))  # not Hermitian

    def test_asymptotic_limits(self):
        eps = 0.01
        small, large = entropy_asymptotics(10, eps, STATE)
        s = 12.0 * 10 * 0.36 * 0.64 * eps**2
        assert small == pytest.approx(s * (1.0 - math.log(s)))
        assert large == pytest.approx(-(0.36 * math.log(0.36) + 0.64 * math.log(0.64)))

    def test_small_n_formula_tracks_exact_entropy(self):
        # in the heavily protected regime the entropy is dominated by the
        # slightly suppressed coherence
        eps, n = 0.01, 10
        factor = math.exp(-6.0 * n * eps**2)
        rho = density_from_offdiagonal(STATE, factor)
        exact = von_neumann_entropy(rho)
        small, _ = entropy_asymptotics(n, eps, STATE)
        assert exact == pytest.approx(small, rel=0.25)

    def test_large_n_limit_is_full_dephasing(self):
        rho = density_from_offdiagonal(STATE, 0.0)
        _, large = entropy_asymptotics(10**9, 0.01, STATE)
        assert von_neumann_entropy(rho) == pytest.approx(large)
