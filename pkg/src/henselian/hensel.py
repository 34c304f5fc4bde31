"""Multivariate Hensel lifting by Newton iteration.

For a square polynomial system ``f`` and a base point ``a`` with
``f(a) = 0 mod m`` and ``det Df(a)`` a unit, there is exactly one root
``x`` with ``x - a`` in ``m^n``.  :func:`hensel_lift` finds it to the full
precision cap; :func:`solve_for_target` inverts ``f`` on ``m^n``.

The Newton step uses the adjugate of the Jacobian and divides by its
determinant, which is a unit along the whole iteration, so no digits are
lost and no pivoting is needed.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

from . import linalg
from .errors import (
    JacobianNotUnit,
    MaxIterationsExceeded,
    NonSquare,
    NotInMaximalIdeal,
    PreconditionError,
    TargetNotInIdeal,
    DimensionMismatch,
)
from .mvpoly import PolyMap, evaluate_matrix, jacobian_matrix
from .ring import Valuation


def min_valuation(vec) -> Valuation:
    return min((x.valuation() for x in vec), key=lambda v: (int(v), not v.exact))


def step_guard(cap):
    return math.ceil(math.log2(cap)) + 4 if cap > 1 else 4


class HenselProblem:
    """A square system together with an approximate root.

    Construction checks ``f(base) in m^n`` and that the Jacobian determinant
    at ``base`` is a unit, raising :class:`NotInMaximalIdeal` or
    :class:`JacobianNotUnit` otherwise.
    """

    def __init__(self, f: PolyMap, base_point=None):
        if not f.is_square:
            raise NonSquare(f"{f.coarity} equations in {f.arity} unknowns")
        self.f = f
        self.ctx = f.ctx
        if base_point is None:
            base_point = [0] * f.arity
        if len(base_point) != f.arity:
            raise DimensionMismatch(f"base point has {len(base_point)} coordinates, need {f.arity}")
        self.base_point = self.ctx.vector(base_point)
        self.jacobian = jacobian_matrix(f)

        values = f.eval(self.base_point)
        for i, v in enumerate(values):
            if not v.in_maximal_ideal():
                raise NotInMaximalIdeal(f"component {i + 1} of f(base) = {v} is not in m")
        J = linalg.det(evaluate_matrix(self.jacobian, self.base_point))
        if not J.is_unit():
            raise JacobianNotUnit(f"Jacobian determinant at base point is {J}, not a unit")

    @property
    def at_origin(self):
        return all(x.is_indeterminate_zero for x in self.base_point)


@dataclass
class LiftResult:
    root: list
    iterations: int
    residual_valuation: Valuation
    trace: list = field(default_factory=list)


def newton(prob: HenselProblem, x0, target=None):
    """Newton iteration for f(x) = target starting at x0.

    Returns ``(root, trace)`` where ``trace`` lists the minimal residual
    valuation before each step, ending with the certified final residual.
    """
    f, ctx = prob.f, prob.ctx
    x = list(x0)
    guard = step_guard(ctx.cap)
    trace = []
    for step in range(guard + 1):
        r = f.eval(x)
        if target is not None:
            r = [ri - ti for ri, ti in zip(r, target)]
        trace.append(min_valuation(r))
        if all(ri.is_indeterminate_zero for ri in r):
            return x, trace
        if step == guard:
            break
        M = evaluate_matrix(prob.jacobian, x)
        d = linalg.det(M)
        if not d.is_unit():
            raise JacobianNotUnit(f"Jacobian determinant {d} stopped being a unit")
        dinv = d.inverse()
        adj = linalg.adjugate(M, ctx.zero(), ctx.one())
        delta = linalg.mat_vec(adj, r)
        x = [xi - di * dinv for xi, di in zip(x, delta)]
    raise MaxIterationsExceeded(f"no convergence after {guard} Newton steps (trace {trace})")


def hensel_lift(prob: HenselProblem) -> LiftResult:
    root, trace = newton(prob, prob.base_point)
    return LiftResult(root, len(trace), trace[-1], trace)


def solve_for_target(prob: HenselProblem, y):
    """The unique x in m^n with f(x) = y, for y in m^n.

    The result is known to the precision of ``y``.
    """
    if not prob.at_origin:
        raise PreconditionError("solve_for_target needs a problem based at the origin")
    y = prob.ctx.vector(y)
    if len(y) != prob.f.coarity:
        raise DimensionMismatch(f"target has {len(y)} components, need {prob.f.coarity}")
    for i, yi in enumerate(y):
        if not yi.in_maximal_ideal():
            raise TargetNotInIdeal(f"target component {i + 1} = {yi} is not in m")
    root, _ = newton(prob, prob.base_point, target=y)
    return root


def check_isometry(prob: HenselProblem, x, xp) -> bool:
    """Does f preserve the minimal valuation of the difference x - x'?"""
    ctx = prob.ctx
    x, xp = ctx.vector(x), ctx.vector(xp)
    d_in = min_valuation([a - b for a, b in zip(x, xp)])
    fx, fxp = prob.f.eval(x), prob.f.eval(xp)
    d_out = min_valuation([a - b for a, b in zip(fx, fxp)])
    return int(d_in) == int(d_out) and d_in.exact == d_out.exact
