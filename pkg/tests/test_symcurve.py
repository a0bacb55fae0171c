import math
import warnings

import pytest
from hypothesis import given, settings, strategies as st

from oracles import brute_automorphisms, brute_symmetry_degree
from persaut.errors import FeatureError, InputError, ResourceLimitError
from persaut.graph import PointCloud
from persaut.persist import build_filtration
from persaut.symcurve import (
    StepCurve, degree_curve_from_steps, effective_length, ell_feature, evaluate_steps, longest_plateau,
    order_curve_from_steps, symmetry_degree_curve, symmetry_order_curve,
)

SQUARE = PointCloud([[0, 0, 0], [1, 0, 0], [1, 1, 0], [0, 1, 0]])


def test_square_order_curve():
    c = symmetry_order_curve(SQUARE, 2.0)
    assert c.breakpoints[0] == 0.0
    assert c.breakpoints[1:] == (1.0, math.sqrt(2))
    assert c(0.5) == pytest.approx(math.log2(24))
    assert c(1.2) == pytest.approx(3.0)
    assert c(1.5) == pytest.approx(math.log2(24))


def test_square_degree_curve():
    c = symmetry_degree_curve(SQUARE, 2.0)
    assert c(0.5) is None
    assert c(1.0) == pytest.approx(math.log2(19))


def test_two_points():
    pts = PointCloud([[0, 0, 0], [1, 0, 0]])
    order = symmetry_order_curve(pts, 3.0)
    assert set(order.values) == {1.0}
    degree = symmetry_degree_curve(pts, 3.0)
    assert degree(1.0) == pytest.approx(math.log2(3))
    assert degree(0.2) is None


def test_curve_validation():
    with pytest.raises(InputError):
        StepCurve((0.0, 0.0), (1.0, 2.0), 3.0)
    with pytest.raises(InputError):
        StepCurve((0.0, 1.0), (1.0,), 3.0)
    with pytest.raises(InputError):
        StepCurve((0.0, 3.0), (1.0, 2.0), 3.0)
    c = StepCurve((0.0, 1.0), (1.0, None), 2.0)
    with pytest.raises(InputError):
        c(2.0)
    with pytest.raises(InputError):
        symmetry_order_curve(SQUARE, 0.0)


def test_longest_plateau_examples():
    c = StepCurve((0.0, 1.0, 2.5), (5.0, 3.0, 7.0), 3.0)
    assert longest_plateau(c) == (1.0, 2.5, 3.0)
    assert longest_plateau(StepCurve((0.0,), (2.0,), 3.0)) == (0.0, 3.0, 2.0)
    with pytest.raises(FeatureError):
        longest_plateau(StepCurve((0.0, 1.0), (None, None), 3.0))
    with pytest.raises(FeatureError):
        longest_plateau(StepCurve((0.0,), (0.0,), 3.0))


def test_plateau_ties_go_to_the_earliest_run():
    c = StepCurve((0.0, 1.0, 2.0), (4.0, 2.0, 4.0), 3.0)
    assert longest_plateau(c) == (0.0, 1.0, 4.0)


def test_equal_adjacent_steps_merge_into_one_run():
    c = StepCurve((0.0, 1.0, 1.5, 2.2), (1.0, 2.0, 2.0, 5.0), 3.0)
    assert longest_plateau(c) == (1.0, 2.2, 2.0)


def test_effective_length_examples():
    f = effective_length(StepCurve((0.0, 1.0, 2.5), (None, 3.0, None), 3.0))
    assert (f.region_start, f.region_end) == (1.0, 2.5)
    assert f.area == pytest.approx(4.5) and f.length == pytest.approx(1.5) and f.sup == pytest.approx(2.5)
    g = effective_length(StepCurve((0.0, 1.0, 1.4, 2.2, 2.4), (None, 6.0, 3.0, 1.0, None), 3.0))
    assert (g.plateau_start, g.plateau_end, g.value) == (1.4, 2.2, 3.0)
    assert (g.region_start, g.region_end) == (1.0, 2.4)
    assert g.area == pytest.approx(5.0, abs=1e-12)
    assert g.length == pytest.approx(5 / 3, abs=1e-12)
    assert g.sup == pytest.approx(1 + 5 / 3, abs=1e-12)
    h = effective_length(StepCurve((0.0,), (2.5,), 3.0))
    assert h.sup == pytest.approx(3.0)


def test_effective_length_region_stops_at_zero_and_undefined():
    c = StepCurve((0.0, 0.5, 1.0, 2.5), (1.0, 0.0, 4.0, None), 3.0)
    f = effective_length(c)
    assert (f.region_start, f.region_end) == (1.0, 2.5)
    assert f.plateau_start >= f.region_start and f.plateau_end <= f.region_end


def test_ell_examples():
    flat = StepCurve((0.0,), (2.0,), 3.0)
    assert ell_feature(flat, flat) == pytest.approx(3.0)
    a = StepCurve((0.0, 2.2), (1.0, None), 3.0)
    b = StepCurve((0.0, 2.0), (1.0, None), 3.0)
    assert ell_feature(a, b) == pytest.approx(2.1)
    with pytest.raises(FeatureError, match="C99"):
        ell_feature(a, StepCurve((0.0,), (None,), 3.0), name="C99")


def test_cap_marks_degree_undefined_with_warning():
    ring = PointCloud([[math.cos(2 * math.pi * k / 9), math.sin(2 * math.pi * k / 9), 0] for k in range(9)])
    steps = evaluate_steps(ring, 3.0, cap=5)
    with pytest.warns(UserWarning, match="marked undefined"):
        c = degree_curve_from_steps(steps, 3.0)
    assert c.values[1] is None


def test_node_cap_error_names_the_scale():
    ring = PointCloud([[math.cos(2 * math.pi * k / 12), math.sin(2 * math.pi * k / 12), 0] for k in range(12)])
    with pytest.raises(ResourceLimitError) as info:
        evaluate_steps(ring, 3.0, node_cap=2)
    assert info.value.where is not None and "eps" in str(info.value)
    steps = evaluate_steps(ring, 3.0, node_cap=2, keep_going=True)
    assert all(s.error for s in steps if s.log2_order is None)


def test_parallel_steps_match_serial():
    ring = PointCloud([[math.cos(2 * math.pi * k / 7), math.sin(2 * math.pi * k / 7), 0.1 * k] for k in range(7)])
    assert evaluate_steps(ring, 3.0, workers=2) == evaluate_steps(ring, 3.0)


small_clouds = st.integers(2, 6).flatmap(lambda n: st.lists(
    st.tuples(*[st.integers(-4, 4)] * 3), min_size=n, max_size=n, unique=True))


def _curves(pts, eps_max, scale=1.0):
    cloud = PointCloud([[scale * x for x in p] for p in pts])
    steps = evaluate_steps(cloud, eps_max * scale)
    with warnings.catch_warnings():
        warnings.simplefilter("ignore")
        return order_curve_from_steps(steps, eps_max * scale), degree_curve_from_steps(steps, eps_max * scale)


@settings(max_examples=150)
@given(small_clouds, st.sampled_from([0.25, 0.5, 2.0, 4.0, 8.0]))
def test_scaling_by_powers_of_two_is_exact(pts, s):
    d0, g0 = _curves(pts, 6.0)
    d1, g1 = _curves(pts, 6.0, s)
    assert d1.breakpoints == tuple(s * b for b in d0.breakpoints)
    assert d1.values == d0.values
    assert g1.values == g0.values
    for a, b in ((d0, d1), (g0, g1)):
        try:
            fa = effective_length(a)
        except FeatureError:
            continue
        fb = effective_length(b)
        assert fb.sup == pytest.approx(s * fa.sup, rel=1e-12)


@settings(max_examples=100)
@given(small_clouds, st.floats(0.1, 10))
def test_scaling_is_equivariant(pts, s):
    d0, g0 = _curves(pts, 6.0)
    d1, g1 = _curves(pts, 6.0, s)
    assert len(d1) == len(d0)
    assert d1.breakpoints == pytest.approx(tuple(s * b for b in d0.breakpoints), rel=1e-12)
    for x, y in zip(d0.values + g0.values, d1.values + g1.values):
        assert (x is None) == (y is None)
        if x is not None:
            assert y == pytest.approx(x, abs=1e-9)


@settings(max_examples=150)
@given(small_clouds)
def test_curves_match_brute_force_at_every_step(pts):
    cloud = PointCloud(pts)
    filt = build_filtration(cloud, 6.0)
    steps = evaluate_steps(cloud, 6.0)
    assert [s.threshold for s in steps] == [t for t in filt.thresholds if t < 6.0]
    for s, g in zip(steps, filt.graphs):
        assert s.log2_order >= 0
        assert 2 ** s.log2_order == pytest.approx(len(brute_automorphisms(g.n, g.edges)), rel=1e-12)
        assert s.symmetry_degree == brute_symmetry_degree(g.n, g.edges)
        if len(g.components()) == 1:
            assert s.symmetry_degree >= 2 ** s.log2_order - 1e-9


@given(small_clouds)
def test_complete_graph_at_large_scale(pts):
    n = len(pts)
    c = symmetry_order_curve(PointCloud(pts), 20.0)
    assert c.values[0] == pytest.approx(math.log2(math.factorial(n)), abs=1e-9)
    assert c.values[-1] == pytest.approx(math.log2(math.factorial(n)), abs=1e-9)
    assert all(v >= 0 for v in c.values)


def test_effective_length_never_leaves_the_curve():
    c = StepCurve((0.0, 0.5, 1.0, 1.2, 2.0), (2.0, 2.0 * (1 + 1e-13), 1.0, 1.0, 3.0), 2.5)
    f = effective_length(c)
    assert f.plateau_start == 0.0 and f.plateau_end == 1.0
    assert f.region_start == 0.0 and f.region_end == 2.5
