"""Exact algebra of the 3-qubit phase-flip code.

Basis convention: qubit 1 is the most significant bit, spin-up is bit 0.
The code words are the even- and odd-parity GHZ-like superpositions produced
by two CNOT gates acting on (alpha|0> + beta|1>) (x) |+> (x) |+>.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from math import comb

import numpy as np

from .errors import ParameterError

_NORM_TOL = 1e-12


@dataclass(frozen=True)
class LogicalState:
    """Normalized logical amplitudes (alpha, beta)."""

    alpha: complex
    beta: complex

    def __post_init__(self):
        norm = abs(self.alpha) ** 2 + abs(self.beta) ** 2
        if abs(norm - 1.0) > 1e-10:
            raise ParameterError(f"|alpha|^2 + |beta|^2 = {norm}, expected 1")


@dataclass(frozen=True)
class DensityMatrix2:
    """Validated 2x2 density matrix of a logical qubit."""

    matrix: np.ndarray

    def __post_init__(self):
        m = np.asarray(self.matrix, dtype=complex)
        if m.shape != (2, 2):
            raise ParameterError("density matrix must be 2x2")
        if not np.allclose(m, m.conj().T, atol=_NORM_TOL):
            raise ParameterError("density matrix must be Hermitian")
        if abs(np.trace(m).real - 1.0) > _NORM_TOL:
            raise ParameterError("density matrix must have unit trace")
        evals = np.linalg.eigvalsh(m)
        if evals.min() < -_NORM_TOL or evals.max() > 1.0 + _NORM_TOL:
            raise ParameterError("density matrix eigenvalues outside [0, 1]")
        object.__setattr__(self, "matrix", m)


@dataclass(frozen=True)
class CycleStats:
    """Per-cycle syndrome probabilities and residual dephasing factors."""

    p0: float
    p1: float
    dephasing_no_error: float
    dephasing_error: float


def encoded_states() -> tuple[np.ndarray, np.ndarray]:
    """Code words |bar-up> and |bar-down> as 8-amplitude vectors.

    |bar-up> is the uniform superposition of the four even-parity basis
    states, |bar-down> of the four odd-parity ones.
    """
    up = np.zeros(8)
    down = np.zeros(8)
    for b in range(8):
        parity = bin(b).count("1") % 2
        if parity == 0:
            up[b] = 0.5
        else:
            down[b] = 0.5
    return up, down


def _cnot(control: int, target: int) -> np.ndarray:
    """8x8 CNOT on 3 qubits; qubit 1 is the most significant bit."""
    m = np.zeros((8, 8))
    for b in range(8):
        cbit = (b >> (3 - control)) & 1
        out = b ^ (1 << (3 - target)) if cbit else b
        m[out, b] = 1.0
    return m


def encoding_circuit() -> np.ndarray:
    """Two CNOTs (controls 2 and 3, target 1); also its own inverse."""
    return _cnot(3, 1) @ _cnot(2, 1)


def encode(state: LogicalState) -> np.ndarray:
    """Encode alpha|0> + beta|1> into the 3-qubit code space."""
    plus = np.array([1.0, 1.0]) / math.sqrt(2.0)
    logical = np.array([state.alpha, state.beta], dtype=complex)
    product = np.kron(np.kron(logical, plus), plus)
    return encoding_circuit() @ product


def phase_flip(vec: np.ndarray, qubit: int) -> np.ndarray:
    """Apply sigma^z to one physical qubit (1-indexed)."""
    out = vec.astype(complex).copy()
    for b in range(8):
        if (b >> (3 - qubit)) & 1:
            out[b] = -out[b]
    return out


def syndrome_extract(vec: np.ndarray):
    """Decode and read the X-basis syndrome of qubits 2 and 3.

    Returns a dict mapping syndrome (x2, x3) to (probability, post-recovery
    logical amplitudes).  Syndrome (1, 1) flags a flip on qubit 1, whose
    recovery is a logical Z; (1, 0) and (0, 1) flag qubits 2 and 3, already
    corrected by the decoding itself.
    """
    decoded = encoding_circuit() @ vec
    h = np.array([[1.0, 1.0], [1.0, -1.0]]) / math.sqrt(2.0)
    to_x = np.kron(np.eye(2), np.kron(h, h))
    w = to_x @ decoded
    outcomes = {}
    for x2 in (0, 1):
        for x3 in (0, 1):
            amp = np.array([w[(l << 2) | (x2 << 1) | x3] for l in (0, 1)])
            if (x2, x3) == (1, 1):
                amp = amp * np.array([1.0, -1.0])  # recovery Z-bar
            outcomes[(x2, x3)] = (float(np.vdot(amp, amp).real), amp)
    return outcomes


SYNDROME_TO_QUBIT = {(0, 0): None, (1, 0): 2, (0, 1): 3, (1, 1): 1}


def cycle_stats(epsilon: float) -> CycleStats:
    """Leading-order statistics of one QEC cycle at per-qubit error rate eps.

    p1 = 3*eps is the chance of any phase-flip syndrome; a flagged cycle
    dephases the logical qubit by (1 - 2 eps), a clean cycle only by
    (1 - 2 eps^3).
    """
    if not 0.0 <= epsilon <= 1.0 / 3.0:
        raise ParameterError("epsilon must lie in [0, 1/3] so that p1 <= 1")
    return CycleStats(
        p0=1.0 - 3.0 * epsilon,
        p1=3.0 * epsilon,
        dephasing_no_error=1.0 - 2.0 * epsilon**3,
        dephasing_error=1.0 - 2.0 * epsilon,
    )


def history_probability(n_cycles: int, m_errors: int, epsilon: float) -> float:
    """Binomial probability of m error cycles among N."""
    if not 0 <= m_errors <= n_cycles:
        raise ParameterError("need 0 <= m <= N")
    stats = cycle_stats(epsilon)
    return comb(n_cycles, m_errors) * stats.p0 ** (n_cycles - m_errors) * stats.p1**m_errors


def residual_offdiagonal(
    n_cycles: int,
    m_errors: int,
    state: LogicalState,
    epsilon: float,
) -> complex:
    """Off-diagonal element after N cycles, m of which flagged an error.

    alpha * conj(beta) * (1 - 2 eps^3)^(N - m) * (1 - 2 eps)^m.
    """
    if not 0 <= m_errors <= n_cycles:
        raise ParameterError("need 0 <= m <= N")
    stats = cycle_stats(epsilon)
    return (
        state.alpha
        * np.conj(state.beta)
        * stats.dephasing_no_error ** (n_cycles - m_errors)
        * stats.dephasing_error**m_errors
    )


def mean_history_offdiagonal(
    n_cycles: int, state: LogicalState, epsilon: float
) -> complex:
    """Off-diagonal element of the most likely history: alpha beta* e^(-6 N eps^2)."""
    return state.alpha * np.conj(state.beta) * math.exp(-6.0 * n_cycles * epsilon**2)


def von_neumann_entropy(rho: DensityMatrix2) -> float:
    """S = -tr(rho ln rho), in nats; 0 * ln 0 is taken as 0."""
    evals = np.linalg.eigvalsh(rho.matrix)
    evals = np.clip(evals.real, 0.0, 1.0)
    nz = evals[evals > 0.0]
    return float(-np.sum(nz * np.log(nz)))


def density_from_offdiagonal(state: LogicalState, factor: float) -> DensityMatrix2:
    """Density matrix with populations of `state` and suppressed coherence."""
    a2 = abs(state.alpha) ** 2
    off = state.alpha * np.conj(state.beta) * factor
    return DensityMatrix2(np.array([[a2, off], [np.conj(off), 1.0 - a2]]))


def entropy_asymptotics(
    n_cycles: int, epsilon: float, state: LogicalState
) -> tuple[float, float]:
    """Entropy limits for N << eps^-2 and N >> eps^-2.

    Small N: s (1 - ln s) with s = 12 N |alpha|^2 |beta|^2 eps^2.
    Large N: the Shannon entropy of the populations.
    """
    a2 = abs(state.alpha) ** 2
    b2 = abs(state.beta) ** 2
    s = 12.0 * n_cycles * a2 * b2 * epsilon**2
    small = s * (1.0 - math.log(s)) if s > 0.0 else 0.0
    large = 0.0
    for w in (a2, b2):
        if w > 0.0:
            large -= w * math.log(w)
    return small, large
