"""Points of a smooth variety arbitrarily close to a given smooth point.

The sampler walks a deterministic fan of small parameters ``u`` (powers of
the uniformizer times units, spread over coordinate subsets), pushes each
through the implicit-function graph map and translates the result back to
the original coordinates.  Every returned point is re-checked by direct
evaluation of all generators; points on which an optional polynomial ``q``
cannot be certified nonzero are skipped.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass

from .errors import AvoidanceExhausted, PrecisionExhausted
from .hensel import min_valuation
from .local_maps import graph_point
from .mvpoly import MultiPoly
from .ring import Valuation
from .smoothness import VarietySpec, implicit_system, select_pivot, smooth_check


@dataclass
class DensityRequest:
    spec: VarietySpec
    count: int = 1
    level: int = 1
    avoid: MultiPoly | None = None
    budget: int | None = None

    def __post_init__(self):
        if self.count < 1:
            raise ValueError("count must be at least 1")
        if self.level < 1:
            raise ValueError("closeness level must be at least 1")
        if self.budget is None:
            self.budget = 64 * self.count


@dataclass
class SamplePoint:
    coords: list
    precision: int
    displacement_valuation: Valuation
    generator_valuations: list
    avoid_valuation: Valuation | None = None


@dataclass
class DensityReport:
    points: list
    e: object
    e_valuation: int
    var_order: tuple
    candidates_tried: int


def _units(ctx, digits):
    """Units whose base-p expansion has exactly ``digits`` digits, in increasing order."""
    lo = 1 if digits == 1 else ctx.p ** (digits - 1)
    for k in range(lo, ctx.p ** digits):
        if k % ctx.p:
            yield ctx.unit_from_index(k)


def parameter_fan(ctx, r, start, stop):
    """Nonzero parameters of valuation in [start, stop) distinct mod uniformizer^stop.

    Ordered by ``j + digits`` (a shrinking-ball sweep), then by the power j,
    then coordinate subsets (smaller first), then units.
    """
    subsets = [s for size in range(1, r + 1) for s in itertools.combinations(range(r), size)]
    pi = ctx.uniformizer
    for total in range(stop - start):
        for j in range(start, start + total + 1):
            digits = total - (j - start) + 1
            if j + digits > stop:
                continue
            for subset in subsets:
                for c in _units(ctx, digits):
                    value = c * pi ** j
                    yield [value if i in subset else ctx.zero_scalar for i in range(r)]


def density_sample(req: DensityRequest) -> DensityReport:
    spec = req.spec
    ctx = spec.ctx
    report = smooth_check(spec)
    pivot = report.pivot if report.smooth else select_pivot(spec, report)
    sys = implicit_system(spec, pivot)
    ve = pivot.valuation
    if req.level + 2 * ve > ctx.cap:
        raise PrecisionExhausted(
            f"closeness level {req.level} with v(e) = {ve} needs cap >= {req.level + 2 * ve}, have {ctx.cap}")
    start = max(req.level + ve, 2 * ve + 1)
    if start >= ctx.cap and spec.claimed_dim > 0:
        raise PrecisionExhausted(
            f"no nonzero parameter of valuation >= {start} exists modulo the cap {ctx.cap}")

    # map from pivot order back to the original variable order
    back = [pivot.var_order.index(v) for v in spec.vars]
    base = [ctx.element(a) for a in spec.point]

    points, seen, tried = [], set(), 0
    for u in parameter_fan(ctx, spec.claimed_dim, start, ctx.cap):
        if tried >= req.budget or len(points) == req.count:
            break
        tried += 1
        local = graph_point(sys, u)
        coords = [base[i] + local[back[i]] for i in range(spec.n)]
        precision = min(c.prec for c in coords)
        gen_vals = [g.eval(coords).valuation() for g in spec.generators]
        if any(v < precision for v in gen_vals):
            continue
        disp = min_valuation([c - b for c, b in zip(coords, base)])
        if disp < req.level or not disp.exact:
            continue
        q_val = None
        if req.avoid is not None:
            q_val = req.avoid.eval(coords).valuation()
            if not q_val.exact:
                continue
        key = tuple((c.rep, c.prec) for c in coords)
        if key in seen:
            continue
        seen.add(key)
        points.append(SamplePoint(coords, precision, disp, gen_vals, q_val))

    if len(points) < req.count:
        raise AvoidanceExhausted(
            f"found only {len(points)} of {req.count} certified points after {tried} candidates",
            found=len(points))
    return DensityReport(points, pivot.minor_det, ve, pivot.var_order, tried)
