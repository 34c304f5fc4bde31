"""Scaled inverse-mapping and implicit-function evaluators.

When the Jacobian determinant ``e`` of ``f`` at the origin is nonzero but
not a unit, ``f`` is still invertible near 0 after rescaling: writing
``f(eX) = e*M0*X + e^2*g(X)`` and ``N = adj(M0)``,

    f(x) = y   with   x = e * h^{-1}(N * y / e^2),   h(X) = X + N*g(X),

for every ``y`` in ``e^2 * m^n``.  ``h`` has identity Jacobian at 0, so
``h^{-1}`` is evaluated pointwise with the Hensel solver.

Precision: dividing by ``e^2`` costs ``2*v(e)`` digits and the final
multiplication by ``e`` gives ``v(e)`` back, so results are certified to
``cap - v(e)`` digits.
"""

from __future__ import annotations

from dataclasses import dataclass

from . import linalg
from .errors import (
    ConstantTermPresent,
    DimensionMismatch,
    NonSquare,
    PrecisionExhausted,
    TargetOutsideDomain,
    ZeroJacobianDet,
)
from .hensel import HenselProblem, solve_for_target
from .mvpoly import MultiPoly, PolyMap, adjugate, build_h, extract_g


@dataclass(frozen=True, eq=False)
class LocalChart:
    f: PolyMap
    M0: list
    e: object
    Nadj: list
    g: PolyMap
    h: PolyMap
    h_problem: HenselProblem

    @property
    def ctx(self):
        return self.f.ctx

    @property
    def e_valuation(self):
        return self.ctx.scalar_valuation(self.e)

    @property
    def certified_precision(self):
        return self.ctx.cap - self.e_valuation

    @property
    def domain_level(self):
        """Minimal valuation of admissible targets: y in e^2 * m."""
        return 2 * self.e_valuation + 1


def make_chart(f: PolyMap) -> LocalChart:
    if not f.is_square:
        raise NonSquare(f"{f.coarity} components in {f.arity} variables")
    ctx = f.ctx
    for i, fi in enumerate(f):
        if fi.constant_term() != 0:
            raise ConstantTermPresent(f"f({i + 1}) has constant term {fi.constant_term()}; need f(0) = 0")
    M0 = f.linear_part()
    e = linalg.det(M0, ctx.zero_scalar)
    if e == 0:
        raise ZeroJacobianDet("Jacobian determinant at the origin is zero")
    N = adjugate(M0, ctx)
    n = f.arity
    eI = linalg.identity(n, ctx.zero_scalar, e)
    if linalg.mat_mul(N, M0) != eI or linalg.mat_mul(M0, N) != eI:
        raise AssertionError("adjugate identity N*M0 = e*I failed")
    g = extract_g(f, e)
    h = build_h(g, N)
    return LocalChart(f, M0, e, N, g, h, HenselProblem(h))


def inverse_eval(chart: LocalChart, y):
    """Preimage of ``y`` in ``e*m^n``, for ``y`` in ``e^2*m^n``."""
    ctx = chart.ctx
    ve = chart.e_valuation
    if ctx.cap - 2 * ve <= 0:
        raise PrecisionExhausted(
            f"cap {ctx.cap} leaves no digits after dividing by e^2 (v(e) = {ve})")
    y = ctx.vector(y)
    if len(y) != chart.f.coarity:
        raise DimensionMismatch(f"target has {len(y)} components, need {chart.f.coarity}")
    for i, yi in enumerate(y):
        if not yi.in_ball(chart.domain_level):
            raise TargetOutsideDomain(
                f"target component {i + 1} = {yi} has valuation {yi.valuation()}, "
                f"need at least {chart.domain_level} (y in e^2*m)")
    e2 = ctx.element(chart.e * chart.e)
    b = [yi.divide_exact(e2) for yi in y]
    target = linalg.mat_vec(chart.Nadj, b)
    xh = solve_for_target(chart.h_problem, target)
    return [chart.e * xi for xi in xh]


class ImplicitSystem:
    """Equations p(X) = 0 solved for the last n - r variables.

    The chart is built for the augmented map (X_1, ..., X_r, p(X)), whose
    Jacobian determinant at the origin is the minor of Dp(0) on the last
    n - r columns.
    """

    def __init__(self, p: PolyMap, r: int):
        n = p.arity
        if not 0 <= r < n:
            raise DimensionMismatch(f"split index r = {r} outside [0, {n})")
        if p.coarity != n - r:
            raise DimensionMismatch(f"need {n - r} equations in {n} variables for r = {r}, got {p.coarity}")
        for i, pi in enumerate(p):
            if pi.constant_term() != 0:
                raise ConstantTermPresent(f"equation {i + 1} does not vanish at the origin")
        self.p = p
        self.r = r
        lin = p.linear_part()
        e = linalg.det([row[r:] for row in lin], p.ctx.zero_scalar)
        if e == 0:
            raise ZeroJacobianDet("minor of the Jacobian on the solved variables is zero")
        xs = MultiPoly.variables(p.ctx, p.vars)
        self.f = PolyMap(xs[:r] + list(p))
        self.chart = make_chart(self.f)
        assert self.chart.e == e

    @property
    def ctx(self):
        return self.p.ctx

    @property
    def n(self):
        return self.p.arity

    @property
    def e(self):
        return self.chart.e


def implicit_eval(sys: ImplicitSystem, u):
    """phi(u) for u in (e^2*m)^r: the graph point (u, phi(u)) lies on p = 0."""
    ctx = sys.ctx
    u = ctx.vector(u)
    if len(u) != sys.r:
        raise DimensionMismatch(f"parameter has {len(u)} coordinates, need {sys.r}")
    y = u + [ctx.zero()] * (sys.n - sys.r)
    x = inverse_eval(sys.chart, y)
    assert all(xi.agrees(ui) for xi, ui in zip(x, u))
    return x[sys.r:]


def graph_point(sys: ImplicitSystem, u):
    u = sys.ctx.vector(u)
    return u + implicit_eval(sys, u)
