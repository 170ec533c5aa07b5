import pytest
from hypothesis import assume, given, strategies as st

from corrqec.errors import ParameterError
from corrqec.phase import (
    UPPER_CRITICAL_DIMENSION,
    PhaseLabel,
    PhasePoint,
    boundary_delta,
    classify_qec,
    classify_unprotected,
    phi4_relevance,
    scan_grid,
)

points = st.builds(
    PhasePoint,
    spatial_dim=st.floats(0.0, 5.0),
    dyn_exponent=st.floats(0.1, 5.0),
    scaling_dim=st.floats(0.1, 5.0),
)


class TestClassifiers:
    def test_known_points(self):
        p = PhasePoint(0.0, 1.0, 1.0)
        assert classify_qec(p).exponent == pytest.approx(-1.0)
        assert classify_qec(p).label is PhaseLabel.STOCHASTIC_THRESHOLD_HOLDS
        assert classify_unprotected(p).label is PhaseLabel.MARGINAL

        hot = PhasePoint(1.0, 1.0, 0.5)  # D + z - 2*delta = 1 > 0
        assert classify_qec(hot).label is PhaseLabel.CORRELATION_DOMINATED

    def test_validation(self):
        with pytest.raises(ParameterError):
            PhasePoint(0.0, 0.0, 1.0)
        with pytest.raises(ParameterError):
            PhasePoint(-1.0, 1.0, 1.0)

    @given(p=points)
    def test_protected_exponent_offset(self, p):
        # QEC buys exactly one extra power of the scaling dimension
        assert classify_qec(p).exponent == pytest.approx(
            classify_unprotected(p).exponent - p.scaling_dim
        )

    @given(p=points)
    def test_only_the_sum_d_plus_z_matters(self, p):
        assume(p.spatial_dim > 0.01)
        swapped = PhasePoint(p.dyn_exponent, p.spatial_dim, p.scaling_dim)
        assert classify_qec(p).exponent == pytest.approx(
            classify_qec(swapped).exponent
        )

    @given(p=points, bump=st.floats(0.0, 3.0))
    def test_monotone_in_scaling_dim(self, p, bump):
        deeper = PhasePoint(p.spatial_dim, p.dyn_exponent, p.scaling_dim + bump)
        assert classify_qec(deeper).exponent <= classify_qec(p).exponent


class TestPhi4:
    def test_self_consistent_exponent_is_three_minus_d(self):
        for d in (0.0, 1.0, 2.0, 3.0, 4.0, 5.0):
            exponent, _ = phi4_relevance(d)
            assert exponent == 3.0 - d

    def test_upper_critical_dimension(self):
        exponent, label = phi4_relevance(3.0)
        assert exponent == 0.0
        assert label == "marginal"
        assert UPPER_CRITICAL_DIMENSION == 4

    def test_above_critical_dimension(self):
        assert phi4_relevance(4.0) == (-1.0, "irrelevant")

    def test_explicit_field_dimension(self):
        assert phi4_relevance(3.0, nu=1.0) == (2.0, "relevant")


class TestScanGrid:
    def test_degenerate_point(self):
        rows = scan_grid((1.0, 1.0), (1.0, 1.0), (0.5, 0.5), (1, 1, 1))
        assert len(rows) == 1
        d, z, delta, exponent, label = rows[0]
        ref = classify_qec(PhasePoint(d, z, delta))
        assert exponent == pytest.approx(ref.exponent)
        assert label == ref.label.value

    def test_row_count_and_consistency(self):
        rows = scan_grid((0.0, 2.0), (0.5, 1.5), (0.25, 1.75), (5, 3, 7))
        assert len(rows) == 5 * 3 * 7
        for d, z, delta, exponent, label in rows:
            ref = classify_qec(PhasePoint(d, z, delta))
            assert exponent == pytest.approx(ref.exponent)
            assert label == ref.label.value

    def test_resolution_guard(self):
        with pytest.raises(ParameterError):
            scan_grid((0.0, 1.0), (0.0, 1.0), (0.0, 1.0), 1)


def test_boundary_delta():
    assert boundary_delta(1.0, 1.0) == 1.0
    assert boundary_delta(3.0, 2.0) == 2.5
