"""Brute-force ground truth for the dephasing channel.

Pure-dephasing noise commutes with itself, so its reduced dynamics is
exactly reproduced by a classical zero-mean Gaussian phase field.  The
simulator samples correlated phase records, evolves explicit 3-qubit state
vectors through full QEC cycles, and applies syndrome projections exactly.
Everything is deterministic given a seed; trials are drawn in fixed-size
chunks whose substreams derive from (seed, chunk index), so the results do
not depend on execution order.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Callable

import numpy as np

from .code3 import LogicalState, encode, encoding_circuit
from .errors import ModelError, ParameterError
from .histories import QecSchedule
from .noise import EnvironmentSpec, Kernel, two_point_correlator

CHUNK = 1 << 16

#: eigenvalue floor for gridded covariances, relative to the top eigenvalue
EIG_CLIP = -1e-9


def _spawn_rngs(seed: int, n_chunks: int):
    children = np.random.SeedSequence(seed).spawn(n_chunks)
    return [np.random.default_rng(c) for c in children]


def _factor_covariance(cov: np.ndarray) -> np.ndarray:
    """Symmetric factor L with L L^T = cov, clipping tiny negative modes."""
    w, v = np.linalg.eigh(cov)
    top = max(w.max(), 0.0)
    if w.min() < EIG_CLIP * max(top, 1e-300):
        raise ModelError(
            f"covariance is not positive semidefinite (min eigenvalue {w.min():g})"
        )
    w = np.clip(w, 0.0, None)
    return v * np.sqrt(w)


def _temporal_correlator(env: EnvironmentSpec, dt: np.ndarray) -> np.ndarray:
    """Vectorized on-site two-point function for D = 0 kernels."""
    adt = np.maximum(np.abs(dt), 1.0 / env.cutoff_lambda)
    if env.kernel is Kernel.OHMIC_SPIN_BOSON:
        exponent = 2.0
    else:
        exponent = 2.0 * env.scaling_dim / env.dyn_exponent
    return 0.5 * (env.tau0 / adt) ** exponent


@dataclass
class DephasingProcess:
    """Gridded Gaussian phase noise for one qubit.

    covariance(t1, t2) is the field covariance (coupling included); it must
    broadcast over numpy arrays.  The grid uses n_steps midpoints per cycle
    of length delta.
    """

    covariance: Callable
    delta: float
    n_steps: int = 64
    seed: int = 0

    def __post_init__(self):
        if self.delta <= 0 or self.n_steps < 1:
            raise ParameterError("delta must be positive and n_steps >= 1")

    @classmethod
    def from_kernel(
        cls,
        env: EnvironmentSpec,
        lam: float,
        delta: float,
        n_steps: int = 64,
        seed: int = 0,
    ) -> "DephasingProcess":
        lam2 = lam * lam

        def cov(t1, t2):
            return lam2 * _temporal_correlator(env, np.asarray(t1) - np.asarray(t2))

        return cls(covariance=cov, delta=delta, n_steps=n_steps, seed=seed)

    @classmethod
    def white(
        cls, sigma2: float, delta: float, n_steps: int = 64, seed: int = 0
    ) -> "DephasingProcess":
        """White noise sigma^2 delta(t - t'), gridded: Var(phase) = sigma^2 * Delta."""
        dt = delta / n_steps

        def cov(t1, t2):
            return np.where(
                np.abs(np.asarray(t1) - np.asarray(t2)) < 0.5 * dt, sigma2 / dt, 0.0
            )

        return cls(covariance=cov, delta=delta, n_steps=n_steps, seed=seed)

    @property
    def dt(self) -> float:
        return self.delta / self.n_steps

    def times(self, n_cycles: int = 1) -> np.ndarray:
        return (np.arange(n_cycles * self.n_steps) + 0.5) * self.dt

    def field_covariance(self, n_cycles: int = 1) -> np.ndarray:
        t = self.times(n_cycles)
        return np.asarray(self.covariance(t[:, None], t[None, :]), dtype=float)

    def phase_variance(self) -> float:
        """Exact variance of the integrated one-cycle phase on the grid."""
        return float(self.field_covariance(1).sum()) * self.dt**2

    def cycle_phase_covariance(self, n_cycles: int) -> np.ndarray:
        """Covariance matrix of the N per-cycle integrated phases."""
        c = self.field_covariance(n_cycles) * self.dt**2
        n, s = n_cycles, self.n_steps
        return c.reshape(n, s, n, s).sum(axis=(1, 3))


def sample_phases(
    proc: DephasingProcess, n_qubits: int, n_trials: int
) -> np.ndarray:
    """Per-cycle accumulated phases, shape (n_trials, n_qubits).

    Each qubit sees an independent bath (hypercube assumption).  The field
    time series is drawn from the factorized gridded covariance and then
    integrated over the cycle.
    """
    cov = proc.field_covariance(1)
    factor = _factor_covariance(cov)
    out = np.empty((n_trials, n_qubits))
    n_chunks = -(-n_trials // CHUNK)
    rngs = _spawn_rngs(proc.seed, n_chunks)
    for k in range(n_chunks):
        lo, hi = k * CHUNK, min((k + 1) * CHUNK, n_trials)
        z = rngs[k].standard_normal((hi - lo, n_qubits, proc.n_steps))
        series = z @ factor.T
        out[lo:hi] = series.sum(axis=-1) * proc.dt
    return out


# --- exact 3-qubit cycle machinery ------------------------------------------

_ENCODE = encoding_circuit()
_H = np.array([[1.0, 1.0], [1.0, -1.0]]) / math.sqrt(2.0)
_TO_X = np.kron(np.eye(2), np.kron(_H, _H))
_DECODE_MEASURE = _TO_X @ _ENCODE  # decode then rotate syndrome qubits to X basis
# sign of sigma^z per basis state and qubit (qubit 1 = most significant bit)
_SIGNS = np.array(
    [[1.0 if not (b >> (2 - j)) & 1 else -1.0 for j in range(3)] for b in range(8)]
)


def _cycle_amplitudes(phases: np.ndarray, encoded: np.ndarray) -> np.ndarray:
    """Post-cycle amplitudes, shape (trials, 2, 2, 2) indexed (l, x2, x3)."""
    diag = np.exp(-0.5j * phases @ _SIGNS.T)
    out = (diag * encoded[None, :]) @ _DECODE_MEASURE.T
    return out.reshape(-1, 2, 2, 2)


_SYNDROMES = [(0, 0), (1, 0), (0, 1), (1, 1)]


@dataclass(frozen=True)
class CycleEstimates:
    """Single-cycle oracle estimates with standard errors."""

    n_trials: int
    phase_variance: float
    eps_exact: float              # exact Gaussian <sin^2(phi/2)>
    eps_mc: float
    eps_mc_se: float
    p1_sampled: float             # frequency of drawn error syndromes
    p1_sampled_se: float
    p1_weighted: float            # mean exact per-trial error probability
    p1_weighted_se: float
    dephasing_error: float        # conditional coherence factor, error cycles
    dephasing_error_se: float
    dephasing_no_error: float
    dephasing_no_error_se: float
    max_norm_defect: float        # worst |sum_s P_s - 1| over trials


def gaussian_eps(phase_variance: float) -> float:
    """Exact <sin^2(phi/2)> for a centered Gaussian phase."""
    return 0.5 * (1.0 - math.exp(-0.5 * phase_variance))


def exact_cycle_statistics(
    proc: DephasingProcess,
    n_trials: int,
    state: LogicalState | None = None,
) -> CycleEstimates:
    """Run full single-cycle QEC on sampled phases and estimate its statistics.

    Per trial the encoded state is dephased by the sampled phases, decoded,
    and projected on each syndrome exactly.  Syndrome rates are reported
    both as drawn outcomes (binomial errors) and as averaged exact
    probabilities; the conditional dephasing factors are ratio estimates
    with delta-method standard errors.
    """
    if state is None:
        s = 1.0 / math.sqrt(2.0)
        state = LogicalState(s, s)
    encoded = encode(state)
    ab = state.alpha * np.conj(state.beta)
    if abs(ab) < 1e-15:
        raise ParameterError("need a coherent logical state (alpha*beta != 0)")

    cov = proc.field_covariance(1)
    factor = _factor_covariance(cov)
    var = float(cov.sum()) * proc.dt**2

    n_chunks = -(-n_trials // CHUNK)
    rngs = _spawn_rngs(proc.seed, n_chunks)

    sums = {
        "p0": 0.0, "p0_sq": 0.0,
        "perr": 0.0, "perr_sq": 0.0,
        "coh0": 0.0, "coh0_sq": 0.0, "coh0_x_p0": 0.0,
        "coherr": 0.0, "coherr_sq": 0.0, "coherr_x_perr": 0.0,
        "sin2": 0.0, "sin2_sq": 0.0,
    }
    err_drawn = 0
    norm_defect = 0.0

    for k in range(n_chunks):
        t = min(CHUNK, n_trials - k * CHUNK)
        rng = rngs[k]
        z = rng.standard_normal((t, 3, proc.n_steps))
        phases = (z @ factor.T).sum(axis=-1) * proc.dt

        amps = _cycle_amplitudes(phases, encoded)
        probs = np.abs(amps[:, 0]) ** 2 + np.abs(amps[:, 1]) ** 2  # (t, 2, 2)
        coh = amps[:, 0] * np.conj(amps[:, 1])                      # (t, 2, 2)
        coh[:, 1, 1] = -coh[:, 1, 1]                                # recovery Z-bar

        total = probs.sum(axis=(1, 2))
        norm_defect = max(norm_defect, float(np.abs(total - 1.0).max()))

        p0 = probs[:, 0, 0]
        perr = total - p0
        coh0 = (coh[:, 0, 0] / ab).real
        coherr = ((coh[:, 1, 0] + coh[:, 0, 1] + coh[:, 1, 1]) / ab).real

        sums["p0"] += p0.sum(); sums["p0_sq"] += (p0**2).sum()
        sums["perr"] += perr.sum(); sums["perr_sq"] += (perr**2).sum()
        sums["coh0"] += coh0.sum(); sums["coh0_sq"] += (coh0**2).sum()
        sums["coh0_x_p0"] += (coh0 * p0).sum()
        sums["coherr"] += coherr.sum(); sums["coherr_sq"] += (coherr**2).sum()
        sums["coherr_x_perr"] += (coherr * perr).sum()

        sin2 = np.sin(0.5 * phases) ** 2
        sums["sin2"] += sin2.sum(); sums["sin2_sq"] += (sin2**2).sum()

        # draw one syndrome per trial from the exact probabilities
        u = rng.random(t) * total
        err_drawn += int((u >= p0).sum())

    n = float(n_trials)

    def mean_se(total_, total_sq):
        mean = total_ / n
        variance = max(total_sq / n - mean**2, 0.0)
        return mean, math.sqrt(variance / n)

    def ratio_se(num, num_sq, den, den_sq, cross):
        if den == 0.0:  # no trials in this condition
            return math.nan, math.nan
        r = num / den
        resid_var = max(
            (num_sq - 2.0 * r * cross + r * r * den_sq) / n - 0.0, 0.0
        )
        return r, math.sqrt(resid_var / n) / (den / n)

    p1_w, p1_w_se = mean_se(sums["perr"], sums["perr_sq"])
    eps_mc, eps_mc_se = mean_se(sums["sin2"] / 3.0, sums["sin2_sq"] / 9.0)
    coh0_r, coh0_se = ratio_se(
        sums["coh0"], sums["coh0_sq"], sums["p0"], sums["p0_sq"], sums["coh0_x_p0"]
    )
    coherr_r, coherr_se = ratio_se(
        sums["coherr"], sums["coherr_sq"],
        sums["perr"], sums["perr_sq"], sums["coherr_x_perr"],
    )
    p1_hat = err_drawn / n
    return CycleEstimates(
        n_trials=n_trials,
        phase_variance=var,
        eps_exact=gaussian_eps(var),
        eps_mc=eps_mc,
        eps_mc_se=eps_mc_se,
        p1_sampled=p1_hat,
        p1_sampled_se=math.sqrt(max(p1_hat * (1.0 - p1_hat), 0.0) / n),
        p1_weighted=p1_w,
        p1_weighted_se=p1_w_se,
        dephasing_error=coherr_r,
        dephasing_error_se=coherr_se,
        dephasing_no_error=coh0_r,
        dephasing_no_error_se=coh0_se,
        max_norm_defect=norm_defect,
    )


# --- multi-cycle flawless histories -----------------------------------------


@dataclass(frozen=True)
class MultiCycleResult:
    """Flawless-history decay curve from the correlated-phase oracle."""

    checkpoints: np.ndarray      # cycle counts N
    p_flawless: np.ndarray       # MC estimate of P(flawless) at each N
    p_flawless_se: np.ndarray
    p_block: np.ndarray          # exact cycle-independent reference E[P0]^N
    excess: np.ndarray           # p_flawless / p_block - 1, variance reduced
    excess_se: np.ndarray
    coherence: np.ndarray        # conditional off-diagonal factor at each N
    coherence_se: np.ndarray
    eps_exact: float


def block_no_error_probability(phase_variance: float) -> float:
    """Exact single-cycle no-error probability for three i.i.d. Gaussian phases."""
    q = 0.5 * (1.0 + math.exp(-0.5 * phase_variance))
    return q**3 + (1.0 - q) ** 3


def multi_cycle_offdiagonal(
    proc: DephasingProcess,
    schedule: QecSchedule,
    n_trials: int,
    checkpoints=None,
    block_diagonal: bool = False,
    state: LogicalState | None = None,
) -> MultiCycleResult:
    """Evolve N correlated QEC cycles and post-select the flawless history.

    Per trial, per cycle: encode, dephase with the continuous correlated
    phase record, decode, project on the clean syndrome.  The flawless
    weight is the product of per-cycle projection norms; the conditional
    coherence is the accumulated off-diagonal factor.  The excess over the
    exact cycle-independent reference is estimated with a control variate
    built from the per-cycle error probabilities, whose mean is known
    exactly.
    """
    if state is None:
        s = 1.0 / math.sqrt(2.0)
        state = LogicalState(s, s)
    n_cycles = schedule.n_cycles
    if checkpoints is None:
        checkpoints = [n_cycles]
    checkpoints = sorted(set(int(c) for c in checkpoints))
    if checkpoints[0] < 1 or checkpoints[-1] > n_cycles:
        raise ParameterError("checkpoints must lie in [1, n_cycles]")

    kmat = proc.cycle_phase_covariance(n_cycles)
    if block_diagonal:
        kmat = np.diag(np.diag(kmat))
    factor = _factor_covariance(kmat)
    var0 = float(kmat[0, 0])
    p0_exact = block_no_error_probability(var0)
    p1_exact = 1.0 - p0_exact

    v0 = encode(LogicalState(1.0, 0.0))
    v1 = encode(LogicalState(0.0, 1.0))
    row0 = _DECODE_MEASURE[0]   # (l=0, x2=0, x3=0)
    row1 = _DECODE_MEASURE[4]   # (l=1, x2=0, x3=0)

    nck = len(checkpoints)
    acc = {
        name: np.zeros(nck)
        for name in ("w", "w_sq", "s", "s_sq", "ws", "coh", "coh_sq", "coh_w")
    }

    n_chunks = -(-n_trials // CHUNK)
    rngs = _spawn_rngs(proc.seed, n_chunks)
    for k in range(n_chunks):
        t = min(CHUNK, n_trials - k * CHUNK)
        z = rngs[k].standard_normal((t, 3, n_cycles))
        phases = z @ factor.T  # (t, 3, N)

        prod0 = np.ones(t, dtype=complex)
        prod1 = np.ones(t, dtype=complex)
        s_run = np.zeros(t)
        ck = 0
        for cyc in range(n_cycles):
            diag = np.exp(-0.5j * phases[:, :, cyc] @ _SIGNS.T)
            u0 = (diag * v0[None, :]) @ row0
            u1 = (diag * v1[None, :]) @ row1
            prod0 *= u0
            prod1 *= u1
            p0_cyc = np.abs(u0) ** 2
            s_run += (1.0 - p0_cyc) - p1_exact
            if ck < nck and cyc + 1 == checkpoints[ck]:
                a = state.alpha * prod0
                b = state.beta * prod1
                w = np.abs(a) ** 2 + np.abs(b) ** 2
                coh = (a * np.conj(b) / (state.alpha * np.conj(state.beta))).real
                acc["w"][ck] += w.sum()
                acc["w_sq"][ck] += (w**2).sum()
                acc["s"][ck] += s_run.sum()
                acc["s_sq"][ck] += (s_run**2).sum()
                acc["ws"][ck] += (w * s_run).sum()
                acc["coh"][ck] += coh.sum()
                acc["coh_sq"][ck] += (coh**2).sum()
                acc["coh_w"][ck] += (coh * w).sum()
                ck += 1

    n = float(n_trials)
    cps = np.array(checkpoints)
    w_mean = acc["w"] / n
    w_var = np.maximum(acc["w_sq"] / n - w_mean**2, 0.0)
    s_mean = acc["s"] / n
    s_var = np.maximum(acc["s_sq"] / n - s_mean**2, 1e-300)
    ws_cov = acc["ws"] / n - w_mean * s_mean
    beta_cv = ws_cov / s_var
    # E[S] = 0 exactly, so the control variate only removes variance
    p_cv = w_mean - beta_cv * s_mean
    p_cv_var = np.maximum(w_var - ws_cov**2 / s_var, 0.0)
    p_block = p0_exact ** cps.astype(float)

    coh_num = acc["coh"] / n
    coh_ratio = coh_num / w_mean
    coh_resid = np.maximum(
        (acc["coh_sq"] - 2.0 * coh_ratio * acc["coh_w"] + coh_ratio**2 * acc["w_sq"])
        / n,
        0.0,
    )
    coh_se = np.sqrt(coh_resid / n) / w_mean

    return MultiCycleResult(
        checkpoints=cps,
        p_flawless=w_mean,
        p_flawless_se=np.sqrt(w_var / n),
        p_block=p_block,
        excess=p_cv / p_block - 1.0,
        excess_se=np.sqrt(p_cv_var / n) / p_block,
        coherence=coh_ratio,
        coherence_se=coh_se,
        eps_exact=gaussian_eps(var0),
    )


# --- spin-boson and norm-bound checks ---------------------------------------


def ohmic_phase_covariance(lam: float, cutoff: float, times) -> np.ndarray:
    """Covariance of the accumulated ohmic dephasing phase at the given times.

    Var(phi(t)) = 2 lam^2 ln(1 + cutoff * t); increments are stationary, so
    Cov(phi(s), phi(t)) = lam^2 [V(s) + V(t) - V(|t - s|)].
    """
    t = np.asarray(times, dtype=float)

    def v(x):
        return np.log1p(cutoff * np.abs(x))

    return lam**2 * (v(t[:, None]) + v(t[None, :]) - v(t[:, None] - t[None, :]))


def ohmic_decay_mc(lam: float, cutoff: float, times, n_trials: int, seed: int = 0):
    """MC estimate of the single-qubit off-diagonal decay <e^{i phi(t)}>.

    Returns (estimates, standard_errors) aligned with `times`.
    """
    cov = ohmic_phase_covariance(lam, cutoff, times)
    factor = _factor_covariance(cov)
    est = np.zeros(len(cov))
    sq = np.zeros(len(cov))
    n_chunks = -(-n_trials // CHUNK)
    rngs = _spawn_rngs(seed, n_chunks)
    for k in range(n_chunks):
        t = min(CHUNK, n_trials - k * CHUNK)
        phi = rngs[k].standard_normal((t, len(cov))) @ factor.T
        c = np.cos(phi)
        est += c.sum(axis=0)
        sq += (c**2).sum(axis=0)
    mean = est / n_trials
    var = np.maximum(sq / n_trials - mean**2, 0.0)
    return mean, np.sqrt(var / n_trials)


def multiqubit_decay_mc(
    lam: float,
    cutoff: float,
    t: float,
    p_minus_q: int,
    common_bath: bool,
    n_trials: int,
    seed: int = 0,
):
    """MC decay of a (p, q) off-diagonal element at one time.

    Independent baths add |p - q| i.i.d. phases; a common bath multiplies a
    single phase by (p - q).  Returns (estimate, standard_error).
    """
    var1 = 2.0 * lam**2 * math.log1p(cutoff * t)
    rng = np.random.default_rng(np.random.SeedSequence(seed))
    d = abs(p_minus_q)
    if common_bath:
        phi = d * math.sqrt(var1) * rng.standard_normal(n_trials)
    else:
        phi = math.sqrt(var1) * rng.standard_normal((n_trials, d)).sum(axis=1)
    c = np.cos(phi)
    return float(c.mean()), float(c.std(ddof=1) / math.sqrt(n_trials))


def four_point_mc(
    env: EnvironmentSpec, dx: float, dt: float, n_trials: int, seed: int = 0
):
    """MC check of the Wick identity <:f^2::f^2:> = 2 C(dx, dt)^2.

    Samples the field at two spacetime points and subtracts the exactly
    known disconnected part.  Returns (estimate, standard_error, expected).
    """
    c0 = two_point_correlator(env, 0.0, 0.0)
    c12 = two_point_correlator(env, dx, dt)
    cov = np.array([[c0, c12], [c12, c0]])
    factor = _factor_covariance(cov)
    rng = np.random.default_rng(np.random.SeedSequence(seed))
    f = rng.standard_normal((n_trials, 2)) @ factor.T
    prod = f[:, 0] ** 2 * f[:, 1] ** 2
    est = float(prod.mean()) - c0 * c0
    se = float(prod.std(ddof=1) / math.sqrt(n_trials))
    return est, se, 2.0 * c12**2


def dyson_norm_bound(max_eigenvalue: float, t_grid):
    """Exact error norm 2|sin(L t / 2)| against its linear bound L t.

    Returns an array of rows (t, exact_norm, bound).  The bound holds
    pointwise for every t >= 0.
    """
    if max_eigenvalue <= 0:
        raise ParameterError("max_eigenvalue must be positive")
    t = np.asarray(t_grid, dtype=float)
    exact = 2.0 * np.abs(np.sin(0.5 * max_eigenvalue * t))
    bound = max_eigenvalue * t
    if np.any(exact > bound + 1e-12):
        raise ModelError("norm bound violated; inputs are inconsistent")
    return np.column_stack([t, exact, bound])
