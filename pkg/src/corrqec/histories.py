"""Long-time syndrome-history statistics under correlated noise.

Bridges the microscopic correlator to the stochastic error model: the local
error probability is a double time integral of the two-point function over
one QEC cycle, and inter-cycle correlations correct the flawless-evolution
probability and the residual decoherence.
"""

from __future__ import annotations

import enum
import math
import warnings
from dataclasses import dataclass

import numpy as np
from scipy.integrate import quad

from .code3 import LogicalState
from .errors import ParameterError, PerturbativeRangeWarning, QuadratureError, SingularExponentError
from .noise import EnvironmentSpec, four_point_normal_ordered, hypercube_length, two_point_correlator

#: relative tolerance on |z - 2 delta| inside which the marginal resummation applies
MARGINAL_TOL = 1e-9


@dataclass(frozen=True)
class QecSchedule:
    """QEC timing: cycle period Delta, N cycles, M logical qubits."""

    delta: float
    n_cycles: int
    n_logical: int = 1

    def __post_init__(self):
        if self.delta <= 0:
            raise ParameterError("delta must be positive")
        if self.n_cycles < 1:
            raise ParameterError("n_cycles must be >= 1")
        if self.n_logical < 1:
            raise ParameterError("n_logical must be >= 1")


class Outcome(enum.IntEnum):
    NO_ERROR = 0
    ERROR_X = 1
    ERROR_Y = 2
    ERROR_Z = 3


@dataclass(frozen=True)
class SyndromeHistory:
    outcomes: tuple

    def __post_init__(self):
        object.__setattr__(
            self, "outcomes", tuple(Outcome(o) for o in self.outcomes)
        )

    @property
    def error_count(self) -> int:
        return sum(1 for o in self.outcomes if o is not Outcome.NO_ERROR)


def local_error_probability(
    env: EnvironmentSpec, lambda_star: float, delta: float
) -> float:
    """Per-qubit, per-cycle error probability.

    eps = (lambda*/2)^2 * int_0^Delta int_0^Delta <f f> dt1 dt2, evaluated
    through the stationarity reduction to 2 * int_0^Delta (Delta - s) C(s) ds.
    Emits a warning when the result reaches 1, where the probabilistic
    interpretation has broken down.
    """
    if lambda_star < 0:
        raise ParameterError("lambda_star must be non-negative")
    if delta <= 0:
        raise ParameterError("delta must be positive")
    if lambda_star == 0.0:
        return 0.0

    def weighted(s):
        return (delta - s) * two_point_correlator(env, 0.0, s)

    kink = 1.0 / env.cutoff_lambda
    points = [kink] if kink < delta else None
    value, err = quad(weighted, 0.0, delta, points=points, limit=200)
    if not math.isfinite(value) or err > 1e-8 * max(abs(value), 1.0):
        raise QuadratureError(
            f"cycle integral did not converge (value={value}, err={err})"
        )
    eps = (lambda_star / 2.0) ** 2 * 2.0 * value
    if eps >= 1.0:
        warnings.warn(
            f"local error probability {eps:g} >= 1: outside the perturbative range",
            PerturbativeRangeWarning,
            stacklevel=2,
        )
    return eps


class FlawlessBranch(enum.Enum):
    STOCHASTIC = "stochastic"      # lambda* = 0, no correction
    GENERIC = "generic"            # power-law correction in N
    MARGINAL = "marginal"          # z = 2 delta log-resummed form


@dataclass(frozen=True)
class FlawlessProbability:
    value: float          # clamped to [0, 1]
    raw: float            # unclamped closed-form value
    correction: float     # multiplicative correction over e^(-N eps)
    branch: FlawlessBranch


def generic_flawless_correction(
    env: EnvironmentSpec,
    schedule: QecSchedule,
    lambda_star: float,
    epsilon: float,
) -> float:
    """Leading inter-cycle correction factor for the generic exponent.

    1 + (l* Delta / 2)^4 / (1 - eps)^2 * (tau0/Delta)^(4 delta/z)
      * N^(2 (1 - 2 delta/z)) / [2 (1 - 2 delta/z) (1 - 4 delta/z)].
    """
    r = 2.0 * env.scaling_dim / env.dyn_exponent  # 2 delta / z
    n = schedule.n_cycles
    x = lambda_star * schedule.delta / 2.0
    amp = x**4 / (1.0 - epsilon) ** 2 * (env.tau0 / schedule.delta) ** (2.0 * r)
    return 1.0 + amp * n ** (2.0 * (1.0 - r)) / (2.0 * (1.0 - r) * (1.0 - 2.0 * r))


def flawless_probability(
    env: EnvironmentSpec,
    schedule: QecSchedule,
    lambda_star: float,
    epsilon: float,
) -> FlawlessProbability:
    """Probability that all N syndromes come back clean.

    Stochastic part e^(-N eps), multiplied by the correlation correction.
    The marginal branch (z = 2 delta to within MARGINAL_TOL) uses the
    log-resummed form with its printed (l* Delta)^4 coefficient; every other
    exponent uses the generic power-law form.
    """
    if schedule.n_cycles < 1:
        raise ParameterError("need at least one cycle")
    if not 0.0 <= epsilon < 1.0:
        raise ParameterError("epsilon must lie in [0, 1)")
    n = schedule.n_cycles
    base = math.exp(-n * epsilon)
    if lambda_star == 0.0:
        return FlawlessProbability(base, base, 1.0, FlawlessBranch.STOCHASTIC)

    z = env.dyn_exponent
    if abs(z - 2.0 * env.scaling_dim) <= MARGINAL_TOL * z:
        x4 = (lambda_star * schedule.delta) ** 4
        denom = 1.0 - x4 / (1.0 - epsilon) ** 2 * math.log(n)
        if denom <= 0.0:
            # past the resummation pole: the closed form has diverged
            correction = math.inf
            raw = math.inf
        else:
            correction = 1.0 / denom
            raw = base * correction
        value = min(max(raw, 0.0), 1.0)
        return FlawlessProbability(value, raw, correction, FlawlessBranch.MARGINAL)

    if abs(4.0 * env.scaling_dim / z - 1.0) <= MARGINAL_TOL:
        raise SingularExponentError(
            "4 delta / z = 1: the generic closed form is singular here; "
            "evaluate the correction integral numerically instead"
        )
    correction = generic_flawless_correction(env, schedule, lambda_star, epsilon)
    raw = base * correction
    value = min(max(raw, 0.0), 1.0)
    return FlawlessProbability(value, raw, correction, FlawlessBranch.GENERIC)


def marginal_pole_cycles(lambda_star: float, delta: float, epsilon: float) -> float:
    """Cycle count where the marginal resummation diverges.

    ln N_pole = (1 - eps)^2 / (lambda* Delta)^4.
    """
    x = lambda_star * delta
    if x <= 0:
        raise ParameterError("lambda_star * delta must be positive")
    arg = (1.0 - epsilon) ** 2 / x**4
    if arg > 700.0:
        return math.inf
    return math.exp(arg)


def breakdown_cycles(lambda_star: float, delta: float, epsilon: float) -> float:
    """Cycle count where perturbation theory fails: exp[((1-eps)/(l* Delta))^2]."""
    x = lambda_star * delta
    if x <= 0:
        raise ParameterError("lambda_star * delta must be positive")
    arg = ((1.0 - epsilon) / x) ** 2
    if arg > 700.0:
        return math.inf
    return math.exp(arg)


@dataclass(frozen=True)
class ResidualDecoherence:
    offdiagonal: complex
    bracket: float
    stochastic_term: float    # 2 N M eps^3
    correlation_term: float   # 2 eps^4 (l* Delta / 2)^4 * quadruple integral


def flawless_residual_decoherence(
    env: EnvironmentSpec,
    schedule: QecSchedule,
    lambda_star: float,
    epsilon: float,
    state: LogicalState,
) -> ResidualDecoherence:
    """Most off-diagonal element after N flawless cycles of M logical qubits.

    alpha beta* [1 - 2 N M eps^3 - 2 eps^4 (l* Delta/2)^4 * Q], where Q sums
    the normal-ordered four-point function over logical-qubit pairs (spaced
    by the hypercube length) and integrates it over inter-cycle time
    separations; the |t1 - t2| < Delta cell is excluded because those
    contractions already live in eps.
    """
    if epsilon < 0 or lambda_star < 0:
        raise ParameterError("epsilon and lambda_star must be non-negative")
    if epsilon > 0.3 or lambda_star > 0.3:
        warnings.warn(
            "epsilon or lambda_star above 0.3: leading-order bracket is unreliable",
            PerturbativeRangeWarning,
            stacklevel=2,
        )
    n, m_log = schedule.n_cycles, schedule.n_logical
    stochastic = 2.0 * n * m_log * epsilon**3

    correlation = 0.0
    if lambda_star > 0.0 and epsilon > 0.0 and n > 1:
        horizon = n * schedule.delta
        spacing = hypercube_length(env, schedule.delta)

        def time_integral(dx: float) -> float:
            def weighted(s):
                return (horizon - s) * four_point_normal_ordered(env, dx, s)

            val, err = quad(weighted, schedule.delta, horizon, limit=200)
            if not math.isfinite(val):
                raise QuadratureError("four-point time integral diverged")
            return val

        q = 0.0
        # separable kernel: group pairs by |j - k|
        for d in range(m_log):
            weight = m_log if d == 0 else 2.0 * (m_log - d)
            contrib = time_integral(d * spacing)
            if contrib == 0.0 and d > 0:
                break  # purely temporal kernel: no cross-qubit terms
            q += weight * contrib
        correlation = (
            2.0 * epsilon**4 * (lambda_star * schedule.delta / 2.0) ** 4 * q
        )

    bracket = 1.0 - stochastic - correlation
    off = state.alpha * np.conj(state.beta) * bracket
    return ResidualDecoherence(
        offdiagonal=off,
        bracket=bracket,
        stochastic_term=stochastic,
        correlation_term=correlation,
    )


@dataclass(frozen=True)
class HistorySample:
    """Empirical syndrome-history statistics from the stochastic-limit sampler."""

    n_cycles: int
    n_trials: int
    m_counts: np.ndarray       # m_counts[m] = trials that saw m error cycles
    axis_counts: np.ndarray    # total error cycles per axis (x, y, z)


def sample_histories(
    epsilon_by_axis,
    n_cycles: int,
    n_trials: int,
    seed: int,
) -> HistorySample:
    """Draw i.i.d. per-cycle outcomes for many trials.

    Each cycle independently reports no error or an error on one of the
    three axes with the given probabilities.  Deterministic given the seed.
    """
    eps = np.asarray(epsilon_by_axis, dtype=float)
    if eps.shape != (3,) or eps.min() < 0:
        raise ParameterError("epsilon_by_axis must be three non-negative reals")
    if eps.sum() > 1.0:
        raise ParameterError("sum of axis error probabilities exceeds 1")
    if n_cycles < 1 or n_trials < 1:
        raise ParameterError("n_cycles and n_trials must be >= 1")

    rng = np.random.default_rng(np.random.SeedSequence(seed))
    edges = np.cumsum(np.concatenate([[1.0 - eps.sum()], eps]))
    m_counts = np.zeros(n_cycles + 1, dtype=np.int64)
    axis_counts = np.zeros(3, dtype=np.int64)
    chunk = max(1, min(n_trials, 10_000_000 // max(n_cycles, 1)))
    done = 0
    while done < n_trials:
        t = min(chunk, n_trials - done)
        u = rng.random((t, n_cycles))
        outcome = np.searchsorted(edges, u, side="right")  # 0 = no error
        m = (outcome > 0).sum(axis=1)
        m_counts += np.bincount(m, minlength=n_cycles + 1)
        for axis in range(3):
            axis_counts[axis] += int((outcome == axis + 1).sum())
        done += t
    return HistorySample(
        n_cycles=n_cycles,
        n_trials=n_trials,
        m_counts=m_counts,
        axis_counts=axis_counts,
    )
