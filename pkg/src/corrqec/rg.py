"""Renormalization-group flow of the qubit-environment coupling.

Two ohmic-bath families are supported: the k-channel Kondo flow
d(lambda)/dl = lambda^2 - (k/2) lambda^3 (marginally relevant) and the
quantum-frustrated flow d(lambda)/dl = -lambda^3 (asymptotically free),
normalized so that lambda0 / sqrt(1 + 2 lambda0^2 l) is its exact solution.
The flow runs in l = ln(Lambda/Lambda') from the bare cutoff down to the
QEC frequency.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass, field

import numpy as np
from scipy.integrate import solve_ivp

from .errors import ParameterError, StrongCouplingError

#: running coupling beyond which the flow is declared to have left the
#: perturbative regime (far past validity; prevents numerical overflow)
DIVERGENCE_GUARD = 10.0


class BetaFamily(enum.Enum):
    KONDO_K_CHANNEL = "KondoKChannel"
    QUANTUM_FRUSTRATED = "QuantumFrustrated"


@dataclass(frozen=True)
class BetaFunctionSpec:
    family: BetaFamily
    channels_k: int = 1

    def __post_init__(self):
        if self.family is BetaFamily.KONDO_K_CHANNEL and self.channels_k < 0:
            raise ParameterError("channels_k must be >= 0")


@dataclass
class RgTrajectory:
    """Sampled RG flow: (l, lambda) pairs plus the endpoint coupling."""

    ell: np.ndarray
    lam: np.ndarray
    lambda_star: float
    diverged: bool

    @property
    def samples(self):
        return list(zip(self.ell.tolist(), self.lam.tolist()))


def beta(spec: BetaFunctionSpec, lam: float) -> float:
    """Beta function d(lambda)/dl for the given environment family."""
    if spec.family is BetaFamily.KONDO_K_CHANNEL:
        return lam**2 - 0.5 * spec.channels_k * lam**3
    return -(lam**3)


def integrate_flow(
    spec: BetaFunctionSpec,
    lambda0: float,
    ell_max: float,
    step_control: float = 1e-10,
) -> RgTrajectory:
    """Integrate the flow from l = 0 to l = ell_max = ln(Lambda * Delta).

    Uses an adaptive embedded Runge-Kutta pair.  Integration stops early and
    flags the trajectory as diverged when the running coupling exceeds the
    divergence guard.
    """
    if lambda0 < 0:
        raise ParameterError("lambda0 must be non-negative")
    if ell_max < 0:
        raise ParameterError("ell_max must be non-negative")
    if ell_max == 0.0:
        return RgTrajectory(
            ell=np.array([0.0]), lam=np.array([lambda0]),
            lambda_star=lambda0, diverged=False,
        )

    def rhs(_ell, y):
        return [beta(spec, y[0])]

    def blow_up(_ell, y):
        return y[0] - DIVERGENCE_GUARD

    blow_up.terminal = True
    blow_up.direction = 1.0

    sol = solve_ivp(
        rhs,
        (0.0, ell_max),
        [lambda0],
        method="RK45",
        rtol=step_control,
        atol=1e-14,
        events=blow_up,
        dense_output=False,
    )
    if not sol.success and sol.status != 1:
        raise StrongCouplingError(f"flow integration failed: {sol.message}")

    ell = sol.t
    lam = sol.y[0]
    if ell[0] != 0.0:  # solve_ivp always starts at t0, defensive only
        ell = np.concatenate([[0.0], ell])
        lam = np.concatenate([[lambda0], lam])
    diverged = sol.status == 1
    return RgTrajectory(ell=ell, lam=lam, lambda_star=float(lam[-1]), diverged=diverged)


@dataclass(frozen=True)
class ClosedFormResult:
    lambda_star: float
    valid: bool


def closed_form_lambda_star(
    spec: BetaFunctionSpec, lambda0: float, ell: float
) -> ClosedFormResult:
    """Closed-form renormalized coupling.

    Kondo (small-k approximation): lambda0 / (1 - lambda0 * l), with a
    strong-coupling error at the pole and a validity flag that drops once the
    denominator falls to 0.1.  Frustrated: lambda0 / sqrt(1 + 2 lambda0^2 l),
    which solves the cubic flow exactly.
    """
    if lambda0 < 0:
        raise ParameterError("lambda0 must be non-negative")
    if spec.family is BetaFamily.QUANTUM_FRUSTRATED:
        return ClosedFormResult(
            lambda_star=lambda0 / math.sqrt(1.0 + 2.0 * lambda0**2 * ell),
            valid=True,
        )
    denom = 1.0 - lambda0 * ell
    if denom <= 0.0:
        raise StrongCouplingError(
            f"Kondo closed form has a pole at lambda0*l = 1 (got {lambda0 * ell:g})"
        )
    return ClosedFormResult(lambda_star=lambda0 / denom, valid=denom > 0.1)


def trajectory_to_csv_rows(traj: RgTrajectory):
    """Yield (ell, lambda) rows for CSV export."""
    for e, l in zip(traj.ell, traj.lam):
        yield float(e), float(l)
