import random

import pytest

from henselian.errors import NotSmooth, PointNotOnVariety
from henselian.local_maps import graph_point
from henselian.mvpoly import MultiPoly
from henselian.ring import RingContext
from henselian.smoothness import Verdict, VarietySpec, implicit_system, select_pivot, smooth_check

from oracles import fraction_det

Z5 = RingContext("zp", 5, 6)


def gens(names, build, ctx=Z5):
    return build(*MultiPoly.variables(ctx, names))


def test_node_is_singular():
    spec = VarietySpec(gens("XY", lambda X, Y: [Y**2 - X**3 - X**2]), 1)
    report = smooth_check(spec)
    assert report.jacobian_rank == 0 and report.verdict is Verdict.NOT_SMOOTH
    assert report.pivot is None
    with pytest.raises(NotSmooth):
        select_pivot(spec, report)


def test_circle_pivots_on_x():
    spec = VarietySpec(gens("XY", lambda X, Y: [X**2 + 2 * X + Y**2]), 1)
    report = smooth_check(spec)
    assert report.jacobian_rank == 1 and report.smooth
    assert report.pivot.cols == (0,) and report.pivot.var_order == ("Y", "X")
    assert report.pivot.minor_det == 2


def test_coordinate_axes_point():
    report = smooth_check(VarietySpec(gens("XY", lambda X, Y: [X, Y]), 0))
    assert report.jacobian_rank == 2 and report.smooth


def test_twisted_cubic_graph():
    spec = VarietySpec(gens("XYZ", lambda X, Y, Z: [Y - X**2, Z - X**3]), 1)
    pv = smooth_check(spec).pivot
    assert pv.var_order == ("X", "Y", "Z") and pv.cols == (1, 2) and pv.minor_det == 1


def test_pivot_prefers_small_valuation():
    spec = VarietySpec(gens("XY", lambda X, Y: [5 * Y + X**2]), 1)
    pv = smooth_check(spec).pivot
    assert pv.cols == (1,) and pv.minor_det == 5 and pv.valuation == 1
    # two candidate minors: 25 (X) and 1 (Y); the unit wins despite coming later
    spec = VarietySpec(gens("XY", lambda X, Y: [25 * X + Y]), 1)
    pv = smooth_check(spec).pivot
    assert pv.cols == (1,) and pv.valuation == 0


def test_wrong_claimed_dim():
    spec = VarietySpec(gens("XY", lambda X, Y: [X, Y]), 1)
    assert smooth_check(spec).verdict is Verdict.RANK_EXCEEDS_CODIM


def test_point_not_on_variety():
    with pytest.raises(PointNotOnVariety):
        VarietySpec(gens("XY", lambda X, Y: [Y - X**2]), 1, point=[1, 2])


def test_smooth_away_from_origin():
    spec = VarietySpec(gens("XY", lambda X, Y: [Y - X**2]), 1, point=[2, 4])
    report = smooth_check(spec)
    assert report.smooth
    # tie between the two unit minors goes to the first column, X
    assert report.pivot.var_order == ("Y", "X")
    sys = implicit_system(spec, report.pivot)
    for u in (5, 10, 125):
        dy, dx = graph_point(sys, [u])
        x, y = 2 + dx, 4 + dy
        assert (y - x * x).is_indeterminate_zero


def test_rank_ignores_generator_order():
    rng = random.Random(1)
    polys = gens("XYZ", lambda X, Y, Z: [Y - X**2, Z - X**3, X * Z - Y**2, Y * Z - X**5])
    expected = smooth_check(VarietySpec(polys, 1)).jacobian_rank
    for _ in range(10):
        shuffled = polys[:]
        rng.shuffle(shuffled)
        assert smooth_check(VarietySpec(shuffled, 1)).jacobian_rank == expected == 2


def test_classical_corpus_trichotomy():
    corpus = [
        (gens("XY", lambda X, Y: [Y**2 - X**3 - X**2]), 1, Verdict.NOT_SMOOTH),
        (gens("XY", lambda X, Y: [Y**2 - X**3]), 1, Verdict.NOT_SMOOTH),
        (gens("XY", lambda X, Y: [X**2 + 2 * X + Y**2]), 1, Verdict.SMOOTH),
        (gens("XY", lambda X, Y: [X * Y + X + Y]), 1, Verdict.SMOOTH),
        (gens("XYZ", lambda X, Y, Z: [Z]), 2, Verdict.SMOOTH),
        (gens("XYZ", lambda X, Y, Z: [Y, Z]), 1, Verdict.SMOOTH),
        (gens("XYZ", lambda X, Y, Z: [Y, Z]), 2, Verdict.RANK_EXCEEDS_CODIM),
    ]
    for polys, dim, verdict in corpus:
        spec = VarietySpec(polys, dim)
        report = smooth_check(spec)
        assert report.verdict is verdict
        assert report.jacobian_rank <= min(len(polys), spec.n)
        if report.smooth:
            J = spec.jacobian_at_point()
            pv = report.pivot
            assert fraction_det([[J[i][j] for j in pv.cols] for i in pv.rows]) == pv.minor_det != 0


def test_series_backend_rank_over_rational_functions():
    F = RingContext("fpt", 3, 4)
    t = F.uniformizer
    spec = VarietySpec(gens("XY", lambda X, Y: [t * X + (1 + t) * Y + X * Y], F), 1)
    report = smooth_check(spec)
    assert report.smooth and report.pivot.cols == (1,) and report.pivot.valuation == 0
