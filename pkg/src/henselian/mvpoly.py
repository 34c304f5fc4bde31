"""Multivariate polynomials with exact coefficients, and polynomial maps.

Coefficients are exact scalars of a :class:`~henselian.ring.RingContext`:
Python ints for ``zp`` and :class:`~henselian.fppoly.FpPoly` for ``fpt``.
Nothing here is precision-capped; precision only appears when a polynomial
is evaluated at :class:`~henselian.ring.ValuedElement` coordinates.
"""

from __future__ import annotations

import math

from . import linalg
from .errors import (
    ConstantTermPresent,
    ContextMismatch,
    DimensionMismatch,
    NonSquare,
    PreconditionError,
    ZeroJacobianDet,
)
from .ring import RingContext, ValuedElement


def _gradlex_key(exps):
    return (-sum(exps), tuple(-a for a in exps))


class MultiPoly:
    """Polynomial in the ordered variables ``vars`` over ``ctx``.

    ``terms`` maps exponent tuples to nonzero exact coefficients.  Treat
    instances as immutable.
    """

    __slots__ = ("ctx", "vars", "terms")

    def __init__(self, ctx: RingContext, vars, terms=None):
        self.ctx = ctx
        self.vars = tuple(vars)
        clean = {}
        for exps, c in (terms or {}).items():
            exps = tuple(exps)
            if len(exps) != len(self.vars) or any(a < 0 for a in exps):
                raise DimensionMismatch(f"bad exponent vector {exps} for variables {self.vars}")
            c = ctx.scalar(c)
            if c != 0:
                clean[exps] = c
        self.terms = clean

    @classmethod
    def const(cls, ctx, vars, c):
        return cls(ctx, vars, {(0,) * len(vars): c})

    @classmethod
    def var(cls, ctx, vars, which):
        i = which if isinstance(which, int) else list(vars).index(which)
        exps = [0] * len(vars)
        exps[i] = 1
        return cls(ctx, vars, {tuple(exps): 1})

    @classmethod
    def variables(cls, ctx, vars):
        return [cls.var(ctx, vars, i) for i in range(len(vars))]

    @property
    def nvars(self):
        return len(self.vars)

    def _like(self, terms):
        return MultiPoly(self.ctx, self.vars, terms)

    def _coerce(self, other):
        if isinstance(other, MultiPoly):
            if other.ctx != self.ctx or other.vars != self.vars:
                raise ContextMismatch("polynomials over different rings or variable lists")
            return other
        try:
            return MultiPoly.const(self.ctx, self.vars, self.ctx.scalar(other))
        except ContextMismatch:
            return NotImplemented

    # arithmetic

    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        terms = dict(self.terms)
        for e, c in other.terms.items():
            terms[e] = terms[e] + c if e in terms else c
        return self._like(terms)

    __radd__ = __add__

    def __neg__(self):
        return self._like({e: -c for e, c in self.terms.items()})

    def __sub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return other + (-self)

    def __mul__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        terms = {}
        for e1, c1 in self.terms.items():
            for e2, c2 in other.terms.items():
                e = tuple(a + b for a, b in zip(e1, e2))
                c = c1 * c2
                terms[e] = terms[e] + c if e in terms else c
        return self._like(terms)

    __rmul__ = __mul__

    def __pow__(self, k):
        if not isinstance(k, int) or k < 0:
            raise ValueError("exponent must be a non-negative integer")
        result = MultiPoly.const(self.ctx, self.vars, 1)
        base = self
        while k:
            if k & 1:
                result = result * base
            base = base * base
            k >>= 1
        return result

    def __eq__(self, other):
        if isinstance(other, MultiPoly):
            return self.ctx == other.ctx and self.vars == other.vars and self.terms == other.terms
        try:
            other = self.ctx.scalar(other)
        except ContextMismatch:
            return NotImplemented
        return self.terms == ({(0,) * self.nvars: other} if other != 0 else {})

    __hash__ = None

    def __bool__(self):
        return bool(self.terms)

    # structure

    def degree(self):
        return max((sum(e) for e in self.terms), default=-math.inf)

    def constant_term(self):
        return self.terms.get((0,) * self.nvars, self.ctx.zero_scalar)

    def coefficient(self, exps):
        return self.terms.get(tuple(exps), self.ctx.zero_scalar)

    def linear_coefficients(self):
        n = self.nvars
        return [self.coefficient(tuple(int(i == j) for j in range(n))) for i in range(n)]

    def truncate_below(self, d):
        """Keep only the terms of total degree >= d."""
        return self._like({e: c for e, c in self.terms.items() if sum(e) >= d})

    def diff(self, which):
        i = which if isinstance(which, int) else self.vars.index(which)
        terms = {}
        for e, c in self.terms.items():
            if e[i]:
                e2 = e[:i] + (e[i] - 1,) + e[i + 1:]
                terms[e2] = c * e[i]
        return self._like(terms)

    def scale_vars(self, s):
        """Substitute X -> s*X for an exact scalar s."""
        return self._like({e: c * s ** sum(e) for e, c in self.terms.items()})

    def reorder(self, new_vars):
        """Same polynomial written over a permutation of its variables."""
        new_vars = tuple(new_vars)
        if sorted(new_vars) != sorted(self.vars):
            raise DimensionMismatch(f"{new_vars} is not a permutation of {self.vars}")
        idx = [self.vars.index(v) for v in new_vars]
        return MultiPoly(self.ctx, new_vars, {tuple(e[i] for i in idx): c for e, c in self.terms.items()})

    def translate(self, point):
        """The polynomial X -> self(point + X) for exact scalar coordinates."""
        xs = MultiPoly.variables(self.ctx, self.vars)
        return self(*[x + a for x, a in zip(xs, point)])

    # evaluation

    def _powers(self, point):
        cache = [dict() for _ in point]

        def power(i, k):
            if k not in cache[i]:
                cache[i][k] = point[i] if k == 1 else power(i, k - 1) * point[i]
            return cache[i][k]

        return power

    def __call__(self, *point):
        """Evaluate at any coordinates closed under + and * with scalars.

        Passing MultiPolys composes.  The result of evaluating the zero
        polynomial is the exact scalar zero.
        """
        if len(point) != self.nvars:
            raise DimensionMismatch(f"expected {self.nvars} coordinates, got {len(point)}")
        power = self._powers(point)
        acc = None
        for e, c in self.terms.items():
            term = c
            for i, k in enumerate(e):
                if k:
                    term = power(i, k) * term
            acc = term if acc is None else acc + term
        return self.ctx.zero_scalar if acc is None else acc

    def eval(self, point) -> ValuedElement:
        """Evaluate at a vector of ValuedElements (or exact scalars)."""
        point = self.ctx.vector(point)
        acc = self.ctx.zero()
        return acc + self(*point) if self.terms else acc

    def eval_exact(self, point):
        return self(*[self.ctx.scalar(a) for a in point])

    # printing

    def _monomial_str(self, e):
        parts = []
        for name, k in zip(self.vars, e):
            if k == 1:
                parts.append(name)
            elif k > 1:
                parts.append(f"{name}^{k}")
        return "*".join(parts)

    def __str__(self):
        if not self.terms:
            return "0"
        out = []
        for e in sorted(self.terms, key=_gradlex_key):
            c = self.terms[e]
            mono = self._monomial_str(e)
            if self.ctx.is_series:
                sign = "+"
                body = str(c)
                if " " in body and mono:
                    body = f"({body})"
            else:
                sign = "-" if c < 0 else "+"
                body = str(abs(c))
            if mono:
                body = mono if body == "1" else f"{body}*{mono}"
            if not out:
                out.append(body if sign == "+" else f"-{body}")
            else:
                out.append(f"{sign} {body}")
        return " ".join(out)

    def __repr__(self):
        return f"MultiPoly({self})"


class PolyMap:
    """A tuple of polynomials over a shared variable list, viewed as a map R^n -> R^k."""

    def __init__(self, components):
        components = tuple(components)
        if not components:
            raise DimensionMismatch("a polynomial map needs at least one component")
        first = components[0]
        for c in components[1:]:
            if c.ctx != first.ctx or c.vars != first.vars:
                raise ContextMismatch("components must share context and variables")
        self.components = components
        self.ctx = first.ctx
        self.vars = first.vars

    @property
    def arity(self):
        return len(self.vars)

    @property
    def coarity(self):
        return len(self.components)

    @property
    def is_square(self):
        return self.arity == self.coarity

    def __len__(self):
        return len(self.components)

    def __iter__(self):
        return iter(self.components)

    def __getitem__(self, i):
        return self.components[i]

    def __eq__(self, other):
        return isinstance(other, PolyMap) and self.components == other.components

    __hash__ = None

    def __repr__(self):
        return "PolyMap(" + ", ".join(str(c) for c in self.components) + ")"

    def eval(self, x):
        if len(x) != self.arity:
            raise DimensionMismatch(f"expected {self.arity} coordinates, got {len(x)}")
        x = self.ctx.vector(x)
        return [c.eval(x) for c in self.components]

    def __call__(self, *point):
        return [c(*point) for c in self.components]

    def value_at_origin(self):
        return [c.constant_term() for c in self.components]

    def linear_part(self):
        """Exact matrix of first-order coefficients, i.e. the Jacobian at the origin."""
        return [c.linear_coefficients() for c in self.components]

    def translate(self, point):
        return PolyMap([c.translate(point) for c in self.components])

    def reorder(self, new_vars):
        return PolyMap([c.reorder(new_vars) for c in self.components])


def identity_map(ctx, vars):
    return PolyMap(MultiPoly.variables(ctx, vars))


def jacobian_matrix(f: PolyMap):
    """Matrix of partial derivatives, entry (i, j) = d f_i / d X_j."""
    return [[fi.diff(j) for j in range(f.arity)] for fi in f]


def jacobian_det(f: PolyMap) -> MultiPoly:
    if not f.is_square:
        raise NonSquare(f"{f.coarity} components in {f.arity} variables")
    zero = MultiPoly(f.ctx, f.vars)
    return linalg.det(jacobian_matrix(f), zero)


def evaluate_matrix(M, x):
    """Evaluate a matrix of MultiPolys at a ValuedElement point."""
    return [[entry.eval(x) for entry in row] for row in M]


def adjugate(M, ctx: RingContext | None = None):
    """Adjugate of a square matrix of exact scalars."""
    if ctx is None:
        return linalg.adjugate(M)
    return linalg.adjugate(M, ctx.zero_scalar, ctx.one_scalar)


def extract_g(f: PolyMap, e) -> PolyMap:
    """Remainder g in the exact identity f(e*X) = e*M(0)*X + e^2*g(X).

    ``e`` is normally the Jacobian determinant of ``f`` at the origin.  A
    term of total degree d >= 2 with coefficient c contributes c*e^(d-2), so
    the division by e^2 never leaves the coefficient ring.
    """
    ctx = f.ctx
    e = ctx.scalar(e)
    if e == 0:
        raise ZeroJacobianDet("scaling constant e is zero")
    for i, fi in enumerate(f):
        if fi.constant_term() != 0:
            raise ConstantTermPresent(f"component {i + 1} has constant term {fi.constant_term()}")
    comps = []
    for fi in f:
        terms = {exps: c * e ** (sum(exps) - 2) for exps, c in fi.terms.items() if sum(exps) >= 2}
        comps.append(MultiPoly(ctx, f.vars, terms))
    return PolyMap(comps)


def build_h(g: PolyMap, N) -> PolyMap:
    """The map h(X) = X + N*g(X); its Jacobian at the origin is the identity."""
    n = g.arity
    if g.coarity != n or len(N) != n or any(len(row) != n for row in N):
        raise DimensionMismatch(f"need an {n}x{n} matrix and {n} components")
    for gi in g:
        if gi.constant_term() != 0:
            raise ConstantTermPresent("g must vanish at the origin")
        if any(c != 0 for c in gi.linear_coefficients()):
            raise PreconditionError("g must have no linear terms")
    xs = MultiPoly.variables(g.ctx, g.vars)
    Ng = linalg.mat_vec(N, list(g))
    h = PolyMap([x + t for x, t in zip(xs, Ng)])
    assert h.linear_part() == linalg.identity(n, g.ctx.zero_scalar, g.ctx.one_scalar)
    return h
