"""Independent brute-force oracles.

Nothing here goes through ValuedElement or the Newton solver: residues
modulo p^k are plain ints, residues modulo t^k are digit tuples multiplied
by schoolbook convolution.  Polynomials are read only through their raw
``terms`` dictionaries.
"""

import itertools
import random
from fractions import Fraction

from henselian.fppoly import FpPoly
from henselian.mvpoly import MultiPoly, PolyMap


class IntResidues:
    """Z / p^k Z with plain ints."""

    def __init__(self, p, k):
        self.p, self.k, self.mod = p, k, p**k

    def coerce(self, c):
        return c % self.mod

    def add(self, a, b):
        return (a + b) % self.mod

    def mul(self, a, b):
        return a * b % self.mod

    def zero(self):
        return 0

    def maximal_ideal(self):
        return [self.p * i for i in range(self.p ** (self.k - 1))]

    def valuation(self, a):
        a %= self.mod
        if a == 0:
            return self.k
        v = 0
        while a % self.p == 0:
            a //= self.p
            v += 1
        return v

    def from_element(self, x):
        return x.rep % self.mod


class SeriesResidues:
    """F_p[[t]] / t^k with digit tuples."""

    def __init__(self, p, k):
        self.p, self.k = p, k

    def coerce(self, c):
        if isinstance(c, int):
            c = (c,)
        elif isinstance(c, FpPoly):
            c = c.coeffs
        c = tuple(int(a) % self.p for a in c[: self.k])
        return c + (0,) * (self.k - len(c))

    def add(self, a, b):
        return tuple((x + y) % self.p for x, y in zip(a, b))

    def mul(self, a, b):
        out = [0] * self.k
        for i, x in enumerate(a):
            for j in range(self.k - i):
                out[i + j] += x * b[j]
        return tuple(v % self.p for v in out)

    def zero(self):
        return (0,) * self.k

    def maximal_ideal(self):
        return [(0,) + d for d in itertools.product(range(self.p), repeat=self.k - 1)]

    def valuation(self, a):
        return next((i for i, x in enumerate(a) if x), self.k)

    def from_element(self, x):
        return self.coerce(x.rep)


def residues_for(ctx, k=None):
    k = ctx.cap if k is None else k
    return SeriesResidues(ctx.p, k) if ctx.is_series else IntResidues(ctx.p, k)


def poly_eval(R, poly: MultiPoly, point):
    acc = R.zero()
    for exps, c in poly.terms.items():
        term = R.coerce(c)
        for x, e in zip(point, exps):
            for _ in range(e):
                term = R.mul(term, x)
        acc = R.add(acc, term)
    return acc


def map_eval(R, f, point):
    return tuple(poly_eval(R, fi, point) for fi in f)


def brute_force_roots(f, k=None, target=None):
    """All x in (m mod uniformizer^k)^n with f(x) = target (default 0)."""
    R = residues_for(f.ctx, k)
    target = tuple(R.zero() for _ in f) if target is None else tuple(R.coerce(t) for t in target)
    return [x for x in itertools.product(R.maximal_ideal(), repeat=f.arity) if map_eval(R, f, x) == target]


def brute_force_roots_near(f, base, k):
    """Roots x with x = base mod the maximal ideal, for the integer backend."""
    R = residues_for(f.ctx, k)
    shifts = itertools.product(R.maximal_ideal(), repeat=f.arity)
    found = []
    for s in shifts:
        x = tuple((b + d) % R.mod for b, d in zip(base, s))
        if all(v == 0 for v in map_eval(R, f, x)):
            found.append(x)
    return found


def fraction_det(M):
    """Determinant of an integer matrix by Gaussian elimination over Q."""
    A = [[Fraction(a) for a in row] for row in M]
    n = len(A)
    d = Fraction(1)
    for c in range(n):
        piv = next((i for i in range(c, n) if A[i][c] != 0), None)
        if piv is None:
            return Fraction(0)
        if piv != c:
            A[c], A[piv] = A[piv], A[c]
            d = -d
        d *= A[c][c]
        for i in range(c + 1, n):
            factor = A[i][c] / A[c][c]
            A[i] = [x - factor * y for x, y in zip(A[i], A[c])]
    return d


def _det_mod_p(M, p):
    n = len(M)
    A = [[a % p for a in row] for row in M]
    d = 1
    for c in range(n):
        piv = next((i for i in range(c, n) if A[i][c]), None)
        if piv is None:
            return 0
        if piv != c:
            A[c], A[piv] = A[piv], A[c]
            d = -d
        d = d * A[c][c] % p
        inv = pow(A[c][c], -1, p)
        for i in range(c + 1, n):
            f = A[i][c] * inv % p
            A[i] = [(x - f * y) % p for x, y in zip(A[i], A[c])]
    return d % p


def _random_coeff(ctx, rng):
    if ctx.is_series:
        return FpPoly(ctx.p, [rng.randrange(ctx.p) for _ in range(rng.randint(1, 3))])
    return rng.randint(-ctx.p**2, ctx.p**2)


def _residue(ctx, c):
    return c[0] if ctx.is_series else c % ctx.p


def random_admissible_system(ctx, n, rng: random.Random, degree=3, terms=4):
    """Random square system with f(0) in m^n and a unit Jacobian at 0."""
    names = [f"X{i + 1}" for i in range(n)]
    while True:
        comps = []
        for _ in range(n):
            t = {}
            for _ in range(terms):
                d = rng.randint(2, degree)
                exps = [0] * n
                for _ in range(d):
                    exps[rng.randrange(n)] += 1
                t[tuple(exps)] = _random_coeff(ctx, rng)
            for j in range(n):
                t[tuple(int(i == j) for i in range(n))] = _random_coeff(ctx, rng)
            if ctx.is_series:
                const = _random_coeff(ctx, rng) * ctx.uniformizer
            else:
                const = rng.randint(-ctx.p, ctx.p) * ctx.p
            t[(0,) * n] = const
            comps.append(MultiPoly(ctx, names, t))
        f = PolyMap(comps)
        lin = [[_residue(ctx, c) for c in row] for row in f.linear_part()]
        if _det_mod_p(lin, ctx.p):
            return f
