import itertools
import random

import pytest

from henselian import linalg
from henselian.errors import (
    ConstantTermPresent,
    DimensionMismatch,
    PrecisionExhausted,
    TargetOutsideDomain,
    ZeroJacobianDet,
)
from henselian.hensel import HenselProblem, solve_for_target
from henselian.local_maps import ImplicitSystem, graph_point, implicit_eval, inverse_eval, make_chart
from henselian.mvpoly import MultiPoly, PolyMap
from henselian.ring import RingContext

from oracles import IntResidues, map_eval, poly_eval, random_admissible_system


def mp(ctx, names, build):
    return PolyMap(build(*MultiPoly.variables(ctx, names)))


Z5_6 = RingContext("zp", 5, 6)


def test_chart_of_scaled_quadratic():
    f = mp(Z5_6, ["X"], lambda X: [5 * X + X**2])
    chart = make_chart(f)
    X, = MultiPoly.variables(Z5_6, ["X"])
    assert chart.e == 5 and chart.Nadj == [[1]]
    assert chart.g == PolyMap([X**2])
    assert chart.h == PolyMap([X + X**2])
    assert chart.e_valuation == 1 and chart.certified_precision == 5


def test_chart_of_identity():
    chart = make_chart(mp(Z5_6, ["X"], lambda X: [X]))
    X, = MultiPoly.variables(Z5_6, ["X"])
    assert chart.e == 1 and chart.g == PolyMap([X * 0]) and chart.h == PolyMap([X])


def test_chart_of_two_variable_map():
    f = mp(Z5_6, ["X1", "X2"], lambda a, b: [a + b + a**2, a - b])
    chart = make_chart(f)
    assert chart.e == -2
    assert chart.Nadj == [[-1, -1], [-1, 1]]
    X1, X2 = MultiPoly.variables(Z5_6, ["X1", "X2"])
    assert chart.g == PolyMap([X1**2, X1 * 0])
    rng = random.Random(3)
    for _ in range(20):
        x = [rng.randint(-100, 100) for _ in range(2)]
        lhs = f(*[chart.e * xi for xi in x])
        lin = linalg.mat_vec(chart.M0, x)
        rhs = [chart.e * a + chart.e**2 * b for a, b in zip(lin, chart.g(*x))]
        assert lhs == rhs


def test_chart_errors():
    with pytest.raises(ZeroJacobianDet):
        make_chart(mp(Z5_6, ["X"], lambda X: [X**2]))
    with pytest.raises(ConstantTermPresent):
        make_chart(mp(Z5_6, ["X"], lambda X: [X + 5]))


def test_inverse_eval_worked_value_against_search():
    f = mp(Z5_6, ["X"], lambda X: [5 * X + X**2])
    R = IntResidues(5, 6)
    hits = [x for x in range(0, 5**6, 25) if map_eval(R, f, (x,)) == (250,)]
    assert hits and {x % 5**5 for x in hits} == {175}
    assert (5 * 175 + 175**2 - 250) % 5**6 == 0

    x = inverse_eval(make_chart(f), [250])
    assert x[0].rep == 175 and x[0].prec == 5


def test_inverse_eval_identity_chart():
    chart = make_chart(mp(Z5_6, ["X"], lambda X: [X]))
    assert inverse_eval(chart, [5])[0].rep == 5


def test_inverse_eval_round_trip_point():
    f = mp(Z5_6, ["X"], lambda X: [5 * X + X**2])
    y = f.eval([125])
    x = inverse_eval(make_chart(f), y)
    assert x[0].agrees(Z5_6.element(125)) and x[0].prec == 5


def test_inverse_eval_domain_and_precision():
    f = mp(Z5_6, ["X"], lambda X: [5 * X + X**2])
    with pytest.raises(TargetOutsideDomain):
        inverse_eval(make_chart(f), [25])
    tight = RingContext("zp", 5, 2)
    with pytest.raises(PrecisionExhausted):
        inverse_eval(make_chart(mp(tight, ["X"], lambda X: [5 * X + X**2])), [0])


def test_inverse_eval_is_injective_on_small_targets():
    ctx = RingContext("zp", 3, 6)
    f = mp(ctx, ["X1", "X2"], lambda a, b: [3 * a + b**2, b + a * b])
    chart = make_chart(f)
    assert chart.e_valuation == 1
    seen = {}
    for y in itertools.product(range(0, 3**6, 27), repeat=2):
        x = tuple(v.rep for v in inverse_eval(chart, list(y)))
        assert x not in seen
        seen[x] = y


def test_inverse_eval_agrees_with_hensel_when_e_is_unit():
    ctx = RingContext("zp", 3, 5)
    rng = random.Random(5)
    for _ in range(5):
        f = random_admissible_system(ctx, 2, rng)
        f = PolyMap([fi - fi.constant_term() for fi in f])
        chart = make_chart(f)
        assert chart.e_valuation == 0
        prob = HenselProblem(f)
        for _ in range(5):
            y = [3 * rng.randrange(81) for _ in range(2)]
            assert inverse_eval(chart, y) == solve_for_target(prob, y)


def test_implicit_examples():
    ctx = RingContext("zp", 5, 3)
    sys = ImplicitSystem(mp(ctx, ["X", "Y"], lambda X, Y: [Y + X**2 + Y**2]), 1)
    assert sys.e == 1
    zero = implicit_eval(sys, [0])
    assert zero[0].rep == 0
    R = IntResidues(5, 3)
    hits = [y for y in range(0, 125, 5) if poly_eval(R, sys.p[0], (5, y)) == 0]
    assert hits == [100]
    assert implicit_eval(sys, [5])[0].rep == 100

    parab = ImplicitSystem(mp(ctx, ["X", "Y"], lambda X, Y: [Y - X**2]), 1)
    assert implicit_eval(parab, [5])[0].rep == 25


def test_implicit_three_variables_non_unit_e():
    ctx = RingContext("zp", 3, 8)
    # solve for (Y, Z); the minor on those columns is [[3, 1], [0, 1]], e = 3
    p = mp(ctx, ["X", "Y", "Z"], lambda X, Y, Z: [3 * Y + Z + X**2, Z - X * Y + X**3])
    sys = ImplicitSystem(p, 1)
    assert sys.e == 3
    rng = random.Random(9)
    for _ in range(20):
        u = 27 * rng.randrange(1, 243)
        pt = graph_point(sys, [u])
        for pi in p:
            assert pi.eval(pt).valuation() >= ctx.cap - 1


def test_implicit_system_errors():
    ctx = RingContext("zp", 5, 3)
    with pytest.raises(DimensionMismatch):
        ImplicitSystem(mp(ctx, ["X", "Y"], lambda X, Y: [Y, X]), 1)
    with pytest.raises(ZeroJacobianDet):
        ImplicitSystem(mp(ctx, ["X", "Y"], lambda X, Y: [X + Y**2]), 1)
    sys = ImplicitSystem(mp(ctx, ["X", "Y"], lambda X, Y: [Y - X**2]), 1)
    with pytest.raises(TargetOutsideDomain):
        implicit_eval(sys, [1])
