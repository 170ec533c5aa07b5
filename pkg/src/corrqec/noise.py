"""Environment correlation kernels and exactly solvable dephasing laws.

The environment is a free field with power-law correlations, characterized by
an ultraviolet cutoff, an excitation velocity, a dynamical exponent z and a
scaling dimension delta.  Everything here is a pure function; hbar = 1.
"""

from __future__ import annotations

import enum
import json
import math
from dataclasses import dataclass, asdict

from .errors import ParameterError


class Kernel(enum.Enum):
    """Correlation-kernel family of the environment."""

    POWER_LAW_TEMPORAL = "PowerLawTemporal"
    POWER_LAW_SPACETIME = "PowerLawSpaceTime"
    OHMIC_SPIN_BOSON = "OhmicSpinBoson"


@dataclass(frozen=True)
class EnvironmentSpec:
    """Parameters of the free-field environment.

    Attributes
    ----------
    cutoff_lambda : float
        Ultraviolet cutoff frequency (1/time).
    velocity : float
        Excitation velocity, units length^z / time.
    dyn_exponent : float
        Dynamical exponent z > 0 (time ~ length^z).
    scaling_dim : float
        Scaling dimension delta > 0 of the coupling operator.
    spatial_dim : int
        Spatial dimension D of the qubit array (0 = purely temporal noise).
    tau0 : float
        Time constant setting the correlator normalization.
    kernel : Kernel
        Kernel family.
    """

    cutoff_lambda: float
    velocity: float
    dyn_exponent: float
    scaling_dim: float
    spatial_dim: int
    tau0: float
    kernel: Kernel = Kernel.POWER_LAW_TEMPORAL

    def __post_init__(self):
        if self.cutoff_lambda <= 0:
            raise ParameterError("cutoff_lambda must be positive")
        if self.velocity <= 0:
            raise ParameterError("velocity must be positive")
        if self.dyn_exponent <= 0:
            raise ParameterError("dyn_exponent must be positive")
        if self.scaling_dim <= 0:
            raise ParameterError("scaling_dim must be positive")
        if self.tau0 <= 0:
            raise ParameterError("tau0 must be positive")
        if self.spatial_dim < 0:
            raise ParameterError("spatial_dim must be non-negative")

    @property
    def xi0(self) -> float:
        """Short-distance regularization scale (v/Lambda)^(1/z)."""
        return (self.velocity / self.cutoff_lambda) ** (1.0 / self.dyn_exponent)

    def to_json(self) -> str:
        d = asdict(self)
        d["kernel"] = self.kernel.value
        return json.dumps(d)

    @classmethod
    def from_json(cls, text: str) -> "EnvironmentSpec":
        d = json.loads(text)
        d["kernel"] = Kernel(d["kernel"])
        return cls(**d)


@dataclass(frozen=True)
class CouplingSet:
    """Bare qubit-environment couplings per error axis."""

    lambda_x: float
    lambda_y: float
    lambda_z: float

    def __post_init__(self):
        if min(self.lambda_x, self.lambda_y, self.lambda_z) < 0:
            raise ParameterError("couplings must be non-negative")


def effective_coupling(c: CouplingSet) -> float:
    """Scalar coupling of the worst-case single-operator interaction.

    The three axis couplings collapse to the Euclidean norm
    sqrt(lx^2 + ly^2 + lz^2).
    """
    return math.sqrt(c.lambda_x**2 + c.lambda_y**2 + c.lambda_z**2)


def two_point_correlator(env: EnvironmentSpec, dx: float, dt: float) -> float:
    """Two-point correlation function of the environment field.

    Power-law decay with exponent 2*delta/z in time and 2*delta in space,
    clamped at the cutoff scales 1/Lambda and (v/Lambda)^(1/z) so the
    asymptotic form stays finite at coincident points.  The purely temporal
    kernel carries no spatial correlations: any dx != 0 gives 0.
    """
    adt = max(abs(dt), 1.0 / env.cutoff_lambda)
    exponent_t = 2.0 * env.scaling_dim / env.dyn_exponent

    if env.kernel is Kernel.POWER_LAW_TEMPORAL:
        if dx != 0.0:
            return 0.0
        return 0.5 * (env.tau0 / adt) ** exponent_t
    if env.kernel is Kernel.POWER_LAW_SPACETIME:
        xi0 = env.xi0
        adx = max(abs(dx), xi0)
        temporal = 0.5 * (env.tau0 / adt) ** exponent_t
        return temporal * (xi0 / adx) ** (2.0 * env.scaling_dim)
    if env.kernel is Kernel.OHMIC_SPIN_BOSON:
        # ohmic bath: correlator falls off as 1/dt^2, no spatial structure
        if dx != 0.0:
            return 0.0
        return 0.5 * (env.tau0 / adt) ** 2
    raise ParameterError(f"unknown kernel {env.kernel!r}")


def four_point_normal_ordered(env: EnvironmentSpec, dx: float, dt: float) -> float:
    """Connected four-point function <:|f|^2::|f|^2:> of a Gaussian field.

    Wick's theorem gives exactly twice the square of the two-point function.
    """
    c = two_point_correlator(env, dx, dt)
    return 2.0 * c * c


def hypercube_length(env: EnvironmentSpec, delta_qec: float) -> float:
    """Minimum qubit separation xi = (v * Delta)^(1/z).

    Qubits at least this far apart have negligible cross-correlations within
    a single QEC cycle, so per-qubit error probabilities are well defined.
    """
    if delta_qec <= 0:
        raise ParameterError("delta_qec must be positive")
    return (env.velocity * delta_qec) ** (1.0 / env.dyn_exponent)


def spin_boson_offdiagonal(lam: float, cutoff_lambda: float, t: float) -> float:
    """Off-diagonal density-matrix decay of one ohmic-dephasing qubit.

    Returns (1 + Lambda*t)^(-lam^2); equal to 1 at t = 0 and strictly
    decreasing for lam > 0.
    """
    if t < 0:
        raise ParameterError("t must be non-negative")
    if lam < 0:
        raise ParameterError("lam must be non-negative")
    if cutoff_lambda <= 0:
        raise ParameterError("cutoff_lambda must be positive")
    return (1.0 + cutoff_lambda * t) ** (-(lam**2))


def multiqubit_offdiagonal(
    lam: float,
    cutoff_lambda: float,
    t: float,
    p: int,
    q: int,
    common_bath: bool = False,
) -> float:
    """Decay factor of the (p, q) off-diagonal element for several qubits.

    p and q are the total magnetizations of the two basis states.  With
    independent baths the decay exponent is proportional to (p - q); a
    common bath squares it.
    """
    if t < 0:
        raise ParameterError("t must be non-negative")
    diff = p - q
    exponent = diff * diff if common_bath else diff
    return (1.0 + cutoff_lambda * t) ** (-(lam**2) * exponent)
