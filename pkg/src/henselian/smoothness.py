"""Jacobian criterion for smoothness at a rational point.

Given generators p_1..p_s of an ideal, a point on their common zero set and
the local dimension r of the variety there, the Jacobian matrix at the
point has rank at most n - r, and the variety is smooth at the point
exactly when the rank equals n - r.  In the smooth case a nonzero
(n - r)-minor singles out equations and variables to which the implicit
function machinery applies.

The local dimension is an input: nothing here computes it.
"""

from __future__ import annotations

import enum
import itertools
from dataclasses import dataclass

from . import linalg
from .errors import DimensionMismatch, NoPivotFound, NotSmooth, PointNotOnVariety
from .local_maps import ImplicitSystem
from .mvpoly import PolyMap


class Verdict(enum.Enum):
    SMOOTH = "Smooth"
    NOT_SMOOTH = "NotSmooth"
    RANK_EXCEEDS_CODIM = "RankExceedsCodim"


class VarietySpec:
    def __init__(self, generators, claimed_dim: int, point=None):
        generators = list(generators)
        if not generators:
            raise DimensionMismatch("at least one generator is required")
        self.generators = generators
        self.ctx = generators[0].ctx
        self.vars = generators[0].vars
        n = len(self.vars)
        # PolyMap checks the shared context and variable list
        PolyMap(generators)
        if not 0 <= claimed_dim < n:
            raise DimensionMismatch(f"claimed dimension {claimed_dim} outside [0, {n})")
        self.claimed_dim = claimed_dim
        point = [0] * n if point is None else list(point)
        if len(point) != n:
            raise DimensionMismatch(f"point has {len(point)} coordinates, need {n}")
        self.point = [self.ctx.scalar(a) for a in point]
        for i, gen in enumerate(generators):
            value = gen.eval_exact(self.point)
            if value != 0:
                raise PointNotOnVariety(f"generator {i + 1} ({gen}) takes the value {value} at the point")

    @property
    def n(self):
        return len(self.vars)

    @property
    def codim(self):
        return self.n - self.claimed_dim

    def jacobian_at_point(self):
        return [[gen.diff(j).eval_exact(self.point) for j in range(self.n)] for gen in self.generators]


@dataclass(frozen=True)
class Pivot:
    rows: tuple          # indices of the chosen generators
    cols: tuple          # indices of the solved-for variables
    var_order: tuple     # free variables first, then the solved ones
    minor_det: object    # exact determinant of the chosen minor
    valuation: int


@dataclass(frozen=True)
class SmoothnessReport:
    jacobian_rank: int
    verdict: Verdict
    codim: int
    pivot: Pivot | None = None

    @property
    def smooth(self):
        return self.verdict is Verdict.SMOOTH


def smooth_check(spec: VarietySpec) -> SmoothnessReport:
    rk = linalg.rank(spec.jacobian_at_point())
    if rk == spec.codim:
        verdict = Verdict.SMOOTH
    elif rk < spec.codim:
        verdict = Verdict.NOT_SMOOTH
    else:
        verdict = Verdict.RANK_EXCEEDS_CODIM
    report = SmoothnessReport(rk, verdict, spec.codim)
    if verdict is Verdict.SMOOTH:
        report = SmoothnessReport(rk, verdict, spec.codim, select_pivot(spec, report))
    return report


def select_pivot(spec: VarietySpec, report: SmoothnessReport) -> Pivot:
    """Nonzero (n-r)-minor of minimal determinant valuation.

    Ties go to the lexicographically first (rows, cols) pair.
    """
    if report.verdict is not Verdict.SMOOTH:
        raise NotSmooth(f"no pivot: verdict is {report.verdict.value}")
    k = spec.codim
    J = spec.jacobian_at_point()
    best = None
    for rows in itertools.combinations(range(len(spec.generators)), k):
        for cols in itertools.combinations(range(spec.n), k):
            d = linalg.det([[J[i][j] for j in cols] for i in rows], spec.ctx.zero_scalar)
            if d == 0:
                continue
            v = spec.ctx.scalar_valuation(d)
            if best is None or v < best[0]:
                best = (v, rows, cols, d)
    if best is None:
        raise NoPivotFound("smooth verdict but every maximal minor vanishes")
    v, rows, cols, d = best
    free = [spec.vars[j] for j in range(spec.n) if j not in cols]
    order = tuple(free + [spec.vars[j] for j in cols])
    return Pivot(rows, cols, order, d, v)


def implicit_system(spec: VarietySpec, pivot: Pivot) -> ImplicitSystem:
    """Chosen equations, moved to the origin and written in the pivot variable order."""
    comps = [spec.generators[i].translate(spec.point).reorder(pivot.var_order) for i in pivot.rows]
    sys = ImplicitSystem(PolyMap(comps), spec.claimed_dim)
    assert sys.e == pivot.minor_det
    return sys

