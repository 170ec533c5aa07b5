"""Dimensional criterion for the stability of the stochastic error model.

The sign of D + z - 2*delta decides whether long-range correlations stay
irrelevant under QEC; without QEC the weaker criterion D + z - delta applies.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass

import numpy as np

from .errors import ParameterError

#: half-width of the exactly-marginal band
MARGINAL_BAND = 1e-12


@dataclass(frozen=True)
class PhasePoint:
    spatial_dim: float
    dyn_exponent: float
    scaling_dim: float

    def __post_init__(self):
        if self.dyn_exponent <= 0 or self.scaling_dim <= 0:
            raise ParameterError("z and delta must be positive")
        if self.spatial_dim < 0:
            raise ParameterError("D must be non-negative")


class PhaseLabel(enum.Enum):
    STOCHASTIC_THRESHOLD_HOLDS = "StochasticThresholdHolds"
    MARGINAL = "Marginal"
    CORRELATION_DOMINATED = "CorrelationDominated"


@dataclass(frozen=True)
class PhaseClass:
    label: PhaseLabel
    exponent: float


def _classify(exponent: float) -> PhaseClass:
    if exponent < -MARGINAL_BAND:
        label = PhaseLabel.STOCHASTIC_THRESHOLD_HOLDS
    elif exponent > MARGINAL_BAND:
        label = PhaseLabel.CORRELATION_DOMINATED
    else:
        label = PhaseLabel.MARGINAL
    return PhaseClass(label=label, exponent=exponent)


def classify_qec(point: PhasePoint) -> PhaseClass:
    """Phase of a QEC-protected computer: sign of D + z - 2*delta."""
    return _classify(
        point.spatial_dim + point.dyn_exponent - 2.0 * point.scaling_dim
    )


def classify_unprotected(point: PhasePoint) -> PhaseClass:
    """Convergence criterion without QEC: sign of D + z - delta."""
    return _classify(point.spatial_dim + point.dyn_exponent - point.scaling_dim)


def phi4_relevance(spatial_dim: float, nu: float | None = None):
    """Power-counting exponent of the quartic coupling in phi^4 theory.

    With an explicit field dimension nu/2 the quartic term rescales with
    exponent D + 1 - 2*nu.  In the self-consistent mode (nu = D - 1, fixed
    by scale invariance of the free action) the exponent is 3 - D and the
    marginal point defines the upper critical dimension d_c = 4 (D = 3
    spatial plus one temporal).

    Returns (exponent, label) where label is "relevant", "marginal" or
    "irrelevant".
    """
    if nu is None:
        nu = spatial_dim - 1.0
    exponent = spatial_dim + 1.0 - 2.0 * nu
    if exponent > MARGINAL_BAND:
        label = "relevant"
    elif exponent < -MARGINAL_BAND:
        label = "irrelevant"
    else:
        label = "marginal"
    return exponent, label


UPPER_CRITICAL_DIMENSION = 4  # 3 spatial + 1 temporal


def scan_grid(d_range, z_range, delta_range, resolution):
    """Classify a dense (D, z, delta) grid.

    Ranges are (min, max) pairs; resolution is the point count per axis
    (a single int or one per axis).  Degenerate ranges (min == max) are
    allowed with resolution 1 on that axis.  Returns a list of rows
    (D, z, delta, exponent, label-string) in row-major order.
    """
    if isinstance(resolution, int):
        resolution = (resolution, resolution, resolution)
    axes = []
    for (lo, hi), res in zip((d_range, z_range, delta_range), resolution):
        if res < 1 or (res < 2 and lo != hi):
            raise ParameterError("need >= 2 points per non-degenerate axis")
        axes.append(np.linspace(lo, hi, res))
    d_ax, z_ax, delta_ax = axes
    dd, zz, ll = np.meshgrid(d_ax, z_ax, delta_ax, indexing="ij")
    dd, zz, ll = dd.ravel(), zz.ravel(), ll.ravel()
    exponent = dd + zz - 2.0 * ll
    labels = np.where(
        exponent < -MARGINAL_BAND,
        PhaseLabel.STOCHASTIC_THRESHOLD_HOLDS.value,
        np.where(
            exponent > MARGINAL_BAND,
            PhaseLabel.CORRELATION_DOMINATED.value,
            PhaseLabel.MARGINAL.value,
        ),
    )
    return [
        (float(d), float(z), float(l), float(e), str(lab))
        for d, z, l, e, lab in zip(dd, zz, ll, exponent, labels)
    ]


def boundary_delta(spatial_dim: float, dyn_exponent: float) -> float:
    """Critical scaling dimension delta = (D + z) / 2."""
    return 0.5 * (spatial_dim + dyn_exponent)
