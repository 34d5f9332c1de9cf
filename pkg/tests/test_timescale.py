"""Time scale constructors, jump operators, and box geometry."""

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from tsverify import Box3, TimeScale
from tsverify.errors import NotInScale, OutOfRange, ReversedInterval, UnsupportedKind

from conftest import random_box, random_scale, unit_box


class TestConstructors:
    def test_finite_sorts_and_dedupes(self):
        ts = TimeScale.finite([3.0, 1.0, 2.0, 1.0])
        assert ts.kind == "finite"
        np.testing.assert_array_equal(ts.points, [1.0, 2.0, 3.0])

    def test_finite_rejects_single_point(self):
        with pytest.raises(ValueError, match="two points"):
            TimeScale.finite([1.0, 1.0])

    def test_finite_rejects_nonfinite(self):
        with pytest.raises(ValueError, match="finite"):
            TimeScale.finite([0.0, np.nan])
        with pytest.raises(ValueError, match="finite"):
            TimeScale.finite([0.0, np.inf])

    def test_points_are_read_only(self):
        ts = TimeScale.finite([0.0, 1.0])
        with pytest.raises(ValueError):
            ts.points[0] = 5.0

    def test_uniform_counts_and_endpoint(self):
        ts = TimeScale.uniform(0.0, 1.0, 0.25)
        assert len(ts) == 5
        assert ts.points[-1] == 1.0
        np.testing.assert_allclose(np.diff(ts.points), 0.25)

    def test_uniform_endpoint_is_exact_despite_rounding(self):
        # 0.1 steps do not sum to 0.7 exactly in binary
        ts = TimeScale.uniform(0.0, 0.7, 0.1)
        assert ts.points[-1] == 0.7

    def test_uniform_rejects_partial_step(self):
        with pytest.raises(ValueError, match="whole number of steps"):
            TimeScale.uniform(0.0, 1.0, 0.3)

    def test_uniform_rejects_bad_step_and_order(self):
        with pytest.raises(ValueError, match="step"):
            TimeScale.uniform(0.0, 1.0, -0.25)
        with pytest.raises(ValueError, match="stop"):
            TimeScale.uniform(1.0, 0.0, 0.25)

    def test_geometric_values(self):
        ts = TimeScale.geometric(1.0, 2.0, 4)
        np.testing.assert_allclose(ts.points, [1.0, 2.0, 4.0, 8.0])

    def test_geometric_descending_ratio_sorted_ascending(self):
        ts = TimeScale.geometric(8.0, 0.5, 4)
        np.testing.assert_allclose(ts.points, [1.0, 2.0, 4.0, 8.0])

    def test_geometric_validation(self):
        with pytest.raises(ValueError, match="start"):
            TimeScale.geometric(0.0, 2.0, 4)
        with pytest.raises(ValueError, match="ratio"):
            TimeScale.geometric(1.0, 1.0, 4)
        with pytest.raises(ValueError, match="count"):
            TimeScale.geometric(1.0, 2.0, 1)

    def test_equality_checks_kind_and_points(self):
        a = TimeScale.finite([0.0, 1.0, 2.0])
        b = TimeScale.finite([0.0, 1.0, 2.0])
        c = TimeScale.uniform(0.0, 2.0, 1.0)
        assert a == b
        assert a != c  # same points, different kind
        assert a != "not a scale"


class TestJumpOperators:
    def test_sigma_interior_and_max(self):
        ts = TimeScale.finite([0.0, 1.0, 3.0])
        assert ts.sigma(0.0) == 1.0
        assert ts.sigma(1.0) == 3.0
        assert ts.sigma(3.0) == 3.0

    def test_rho_interior_and_min(self):
        ts = TimeScale.finite([0.0, 1.0, 3.0])
        assert ts.rho(3.0) == 1.0
        assert ts.rho(1.0) == 0.0
        assert ts.rho(0.0) == 0.0

    def test_graininess_and_alias(self):
        ts = TimeScale.finite([0.0, 1.0, 3.0])
        assert ts.graininess(0.0) == 1.0
        assert ts.graininess(1.0) == 2.0
        assert ts.graininess(3.0) == 0.0
        assert ts.mu(1.0) == 2.0

    def test_snap_tolerance(self):
        ts = TimeScale.finite([0.0, 1.0])
        assert ts.snap(1.0 + 1e-13) == 1.0
        assert 1.0 + 1e-13 in ts
        assert 1.0 + 1e-9 not in ts
        with pytest.raises(NotInScale):
            ts.index_of(0.5)

    def test_snap_tolerance_scales_with_magnitude(self):
        ts = TimeScale.finite([0.0, 1e6])
        assert ts.snap(1e6 + 1e-7) == 1e6


class TestRangesAndRefine:
    def test_points_in_is_half_open(self):
        ts = TimeScale.uniform(0.0, 1.0, 0.25)
        np.testing.assert_allclose(ts.points_in(0.25, 0.75), [0.25, 0.5])
        np.testing.assert_allclose(ts.points_in(0.0, 1.0), [0.0, 0.25, 0.5, 0.75])

    def test_points_in_empty_when_degenerate(self):
        ts = TimeScale.uniform(0.0, 1.0, 0.25)
        assert ts.points_in(0.5, 0.5).size == 0
        assert ts.points_in(0.75, 0.25).size == 0

    def test_points_in_endpoint_tolerance(self):
        ts = TimeScale.uniform(0.0, 1.0, 0.25)
        got = ts.points_in(0.25 + 1e-14, 0.75 - 1e-14)
        np.testing.assert_allclose(got, [0.25, 0.5])

    def test_refine_halves_uniform_step(self):
        ts = TimeScale.uniform(0.0, 1.0, 0.25)
        fine = ts.refine()
        assert len(fine) == 9
        assert fine.min == ts.min and fine.max == ts.max
        # every coarse point survives refinement
        assert all(t in fine for t in ts.points)

    def test_refine_rejects_other_kinds(self):
        with pytest.raises(UnsupportedKind):
            TimeScale.finite([0.0, 1.0, 2.0]).refine()
        with pytest.raises(UnsupportedKind):
            TimeScale.geometric(1.0, 2.0, 3).refine()


class TestBox3:
    def test_snaps_endpoints_and_base(self):
        box = unit_box()
        assert box.a == (0.0, 0.0, 0.0)
        assert box.b == (2.0, 2.0, 2.0)
        assert box.base == (0.0, 0.0, 0.0)

    def test_rejects_reversed_interval(self):
        ts = TimeScale.finite([0.0, 1.0, 2.0])
        with pytest.raises(ReversedInterval):
            Box3([ts] * 3, (2.0, 0.0, 0.0), (0.0, 2.0, 2.0), (0.0, 0.0, 0.0))

    def test_rejects_base_outside_interval(self):
        ts = TimeScale.finite([0.0, 1.0, 2.0, 3.0])
        with pytest.raises(OutOfRange, match="base"):
            Box3([ts] * 3, (0.0,) * 3, (2.0,) * 3, (3.0, 0.0, 0.0))

    def test_rejects_empty_admissible_region(self):
        # base == b on a scattered axis: sigma(base) would leave nothing
        ts = TimeScale.finite([0.0, 1.0, 2.0, 3.0])
        with pytest.raises(OutOfRange, match="sigma"):
            Box3([ts] * 3, (0.0,) * 3, (2.0,) * 3, (2.0, 0.0, 0.0))

    def test_axis_views(self):
        ts = TimeScale.finite([-1.0, 0.0, 1.0, 2.0, 3.0])
        box = Box3([ts] * 3, (0.0,) * 3, (2.0,) * 3, (1.0, 0.0, 0.0))
        np.testing.assert_array_equal(box.axis_points(0), [0.0, 1.0, 2.0])
        np.testing.assert_array_equal(box.axis_mu(0), [1.0, 1.0])
        assert box.grid_shape() == (3, 3, 3)
        assert box.base_offset(0) == 1
        assert box.base_offset(1) == 0

    def test_axis_index_bounds(self):
        box = unit_box()
        assert box.axis_index(0, 1.0) == 1
        ts = TimeScale.finite([-1.0, 0.0, 1.0, 2.0, 3.0])
        wide = Box3([ts] * 3, (0.0,) * 3, (2.0,) * 3, (0.0,) * 3)
        with pytest.raises(OutOfRange):
            wide.axis_index(0, 3.0)
        with pytest.raises(NotInScale):
            wide.axis_index(0, 0.5)

    def test_sigma_base_and_widths(self):
        box = unit_box()  # points 0, 1, 2 per axis, base at 0
        assert box.sigma_base(0) == 1.0
        assert box.s_offset(0) == 1
        assert box.widths() == (1.0, 1.0, 1.0)

    def test_widths_mix_base_positions(self):
        ts = TimeScale.finite([0.0, 1.0, 2.0, 4.0])
        box = Box3([ts] * 3, (0.0,) * 3, (4.0,) * 3, (0.0, 1.0, 2.0))
        assert box.widths() == (3.0, 2.0, 0.0)


# ----------------------------------------------------------------------
# property checks

finite_points = st.lists(
    st.floats(-10.0, 10.0).map(lambda v: round(v, 3)),
    min_size=2,
    max_size=15,
    unique=True,
)


@given(finite_points)
def test_sigma_rho_are_adjacent_inverses(points):
    ts = TimeScale.finite(points)
    for t in ts.points:
        s = ts.sigma(float(t))
        assert ts.rho(s) == (float(t) if s != t else ts.rho(float(t)))
        assert ts.graininess(float(t)) == s - t


@given(finite_points)
def test_points_in_matches_mask(points):
    ts = TimeScale.finite(points)
    a, b = ts.min, ts.max
    got = ts.points_in(a, b)
    expect = ts.points[(ts.points >= a) & (ts.points < b)]
    np.testing.assert_array_equal(got, expect)


@given(st.integers(2, 6))
def test_refine_is_membership_superset(k):
    ts = TimeScale.uniform(0.0, 1.0, 1.0 / k)
    fine = ts.refine()
    assert len(fine) == 2 * len(ts) - 1
    assert all(t in fine for t in ts.points)


def test_random_box_construction_holds_invariants(rng):
    for _ in range(50):
        box = random_box(rng)
        for i in range(3):
            assert box.a[i] <= box.base[i] <= box.b[i]
            assert box.sigma_base(i) <= box.b[i]
            pts = box.axis_points(i)
            assert pts[0] == box.a[i] and pts[-1] == box.b[i]
            assert np.all(np.diff(pts) > 0)


def test_random_scale_kinds_cover_all(rng):
    kinds = {random_scale(rng).kind for _ in range(60)}
    assert kinds == {"finite", "uniform", "geometric"}
