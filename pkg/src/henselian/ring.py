"""Capped-absolute arithmetic in Z_p and F_p[[t]].

A :class:`RingContext` fixes the backend, the residue characteristic ``p``
and the precision cap ``N``.  Elements (:class:`ValuedElement`) are
residues modulo ``uniformizer**prec`` with ``prec <= N``.  Polynomial
coefficients and other *exact* scalars are plain ints (``zp``) or
:class:`~henselian.fppoly.FpPoly` instances (``fpt``); they enter the
valued world through :meth:`RingContext.element` at full precision.

    >>> R = RingContext("zp", 5, 4)
    >>> R.element(13) + R.element(14)
    ValuedElement(27 mod 5^4)
    >>> (R.element(250) * R.element(250)).valuation()
    Valuation(>= 4)
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from .errors import (
    ContextMismatch,
    DivisionByHigherValuation,
    IndeterminateDivisor,
    InvalidRing,
)
from .fppoly import FpPoly

BACKENDS = ("zp", "fpt")


def is_prime(n: int) -> bool:
    if n < 2:
        return False
    if n % 2 == 0:
        return n == 2
    d = 3
    while d * d <= n:
        if n % d == 0:
            return False
        d += 2
    return True


class Valuation(int):
    """An int that may only be a lower bound.

    ``exact`` is False for an element that is zero at its known precision:
    then the value is the precision and the true valuation is at least that.
    Comparisons treat the number at face value, which is the sound reading
    for every ``v >= level`` membership test.
    """

    def __new__(cls, value, exact=True):
        obj = super().__new__(cls, value)
        obj.exact = exact
        return obj

    def __repr__(self):
        return f"Valuation({int(self)})" if self.exact else f"Valuation(>= {int(self)})"

    def __str__(self):
        return str(int(self)) if self.exact else f"≥ {int(self)}"


@dataclass(frozen=True)
class RingContext:
    backend: str
    p: int
    cap: int

    def __post_init__(self):
        if self.backend not in BACKENDS:
            raise InvalidRing(f"unknown backend {self.backend!r} (expected zp or fpt)")
        if not isinstance(self.p, int) or not is_prime(self.p) or self.p >= 2**31:
            raise InvalidRing(f"p = {self.p} is not a prime below 2^31")
        if not isinstance(self.cap, int) or self.cap < 1:
            raise InvalidRing(f"cap = {self.cap} must be a positive integer")

    @property
    def is_series(self):
        return self.backend == "fpt"

    @property
    def uniformizer_name(self):
        return "t" if self.is_series else str(self.p)

    def __str__(self):
        if self.is_series:
            return f"F_{self.p}[[t]] mod t^{self.cap}"
        return f"Z_{self.p} mod {self.p}^{self.cap}"

    # exact scalars

    def scalar(self, c):
        """Canonical exact scalar (int for zp, FpPoly for fpt)."""
        if self.is_series:
            if isinstance(c, FpPoly):
                if c.p != self.p:
                    raise ContextMismatch(f"coefficient over F_{c.p} in F_{self.p} context")
                return c
            if isinstance(c, int):
                return FpPoly(self.p, (c,))
        elif isinstance(c, int) and not isinstance(c, bool):
            return c
        raise ContextMismatch(f"{c!r} is not a scalar of {self}")

    @property
    def zero_scalar(self):
        return self.scalar(0)

    @property
    def one_scalar(self):
        return self.scalar(1)

    @property
    def uniformizer(self):
        return FpPoly.gen(self.p) if self.is_series else self.p

    def scalar_valuation(self, c):
        """Exact valuation of an exact scalar (``math.inf`` for zero)."""
        if self.is_series:
            return self.scalar(c).order()
        if c == 0:
            return math.inf
        v = 0
        while c % self.p == 0:
            c //= self.p
            v += 1
        return v

    def reduce(self, c, k):
        """Canonical residue of ``c`` modulo uniformizer^k."""
        if self.is_series:
            return self.scalar(c).truncate(k)
        return c % self.p**k

    def _strip(self, c, v):
        # divide by uniformizer^v, exact
        if self.is_series:
            return c.shift(-v)
        return c // self.p**v

    def _inverse(self, u, k):
        if k <= 0:
            return self.zero_scalar
        if self.is_series:
            return u.inverse_series(k)
        return pow(u, -1, self.p**k)

    def unit_from_index(self, n):
        """Scalar whose base-p digits are those of the non-negative int ``n``."""
        if self.is_series:
            return FpPoly.from_digits(self.p, n)
        return n

    def format_scalar(self, c):
        return str(self.scalar(c))

    # valued elements

    def element(self, c, prec=None):
        prec = self.cap if prec is None else prec
        if not 0 <= prec <= self.cap:
            raise ValueError(f"precision {prec} outside [0, {self.cap}]")
        return ValuedElement(self, self.reduce(self.scalar(c), prec), prec)

    def zero(self, prec=None):
        return self.element(0, prec)

    def one(self):
        return self.element(1)

    def vector(self, values, prec=None):
        return [v if isinstance(v, ValuedElement) else self.element(v, prec) for v in values]


class ValuedElement:
    """Residue of a ring element modulo uniformizer^prec.

    Instances are immutable; all operations return new elements.  Use
    :meth:`RingContext.element` to construct them.
    """

    __slots__ = ("ctx", "rep", "prec")

    def __init__(self, ctx: RingContext, rep, prec: int):
        object.__setattr__(self, "ctx", ctx)
        object.__setattr__(self, "rep", rep)
        object.__setattr__(self, "prec", prec)

    def __setattr__(self, name, value):
        raise AttributeError("ValuedElement is immutable")

    def valuation(self) -> Valuation:
        v = self.ctx.scalar_valuation(self.rep)
        if v == math.inf:
            return Valuation(self.prec, exact=False)
        return Valuation(v)

    @property
    def is_indeterminate_zero(self):
        return not self.rep

    def in_maximal_ideal(self):
        return self.valuation() >= 1

    def is_unit(self):
        v = self.valuation()
        return v.exact and v == 0

    def in_ball(self, level):
        """Certified membership in uniformizer^level * R."""
        return self.valuation() >= level

    def in_scaled_ideal(self, e, power=1):
        """Certified membership in e^power * m for an exact nonzero scalar e."""
        return self.in_ball(power * self.ctx.scalar_valuation(e) + 1)

    def _coerce(self, other):
        if isinstance(other, ValuedElement):
            if other.ctx != self.ctx:
                raise ContextMismatch(f"cannot combine elements of {self.ctx} and {other.ctx}")
            return other
        try:
            return self.ctx.element(other)
        except ContextMismatch:
            return NotImplemented

    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        k = min(self.prec, other.prec)
        return ValuedElement(self.ctx, self.ctx.reduce(self.rep + other.rep, k), k)

    __radd__ = __add__

    def __neg__(self):
        return ValuedElement(self.ctx, self.ctx.reduce(-self.rep, self.prec), self.prec)

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
        k = min(self.prec + other.valuation(), other.prec + self.valuation(), self.ctx.cap)
        return ValuedElement(self.ctx, self.ctx.reduce(self.rep * other.rep, k), k)

    __rmul__ = __mul__

    def __pow__(self, n):
        result = self.ctx.one()
        for _ in range(n):
            result = result * self
        return result

    def divide_exact(self, other) -> "ValuedElement":
        """Return c with other * c = self.

        The result is known to ``self.prec - v(other)`` digits when the divisor
        is known to full precision; a less precise divisor can cost more.
        """
        other = self._coerce(other)
        if other is NotImplemented:
            raise ContextMismatch("divisor is not an element of this ring")
        vb = other.valuation()
        if not vb.exact:
            raise IndeterminateDivisor(f"divisor is zero modulo {self.ctx.uniformizer_name}^{other.prec}")
        va = self.valuation()
        if va < vb:
            if va.exact:
                raise DivisionByHigherValuation(f"valuation {va} < divisor valuation {vb}")
            raise DivisionByHigherValuation(
                f"dividend only known to valuation {va}, divisor has valuation {vb}")
        k = min(self.prec - vb, other.prec - 2 * vb + va)
        ctx = self.ctx
        a = ctx._strip(ctx.reduce(self.rep, self.prec), vb)
        u = ctx._strip(other.rep, vb)
        return ValuedElement(ctx, ctx.reduce(a * ctx._inverse(u, k), k), k)

    def inverse(self):
        if not self.is_unit():
            raise DivisionByHigherValuation(f"{self} is not a unit")
        return self.ctx.one().divide_exact(self)

    def truncate(self, k):
        """Forget digits beyond uniformizer^k."""
        k = min(k, self.prec)
        return ValuedElement(self.ctx, self.ctx.reduce(self.rep, k), k)

    def lift(self):
        """Same representative, promoted to full precision (digits padded with zeros)."""
        return ValuedElement(self.ctx, self.rep, self.ctx.cap)

    def agrees(self, other, k=None):
        """Equal modulo uniformizer^k (default: the common known precision)."""
        other = self._coerce(other)
        k = min(self.prec, other.prec) if k is None else k
        return self.ctx.reduce(self.rep - other.rep, k) == 0

    def residue(self):
        """Image in the residue field, as an int in range(p)."""
        if self.prec < 1:
            raise ValueError("residue unknown at precision 0")
        return self.rep[0] if self.ctx.is_series else self.rep % self.ctx.p

    def __eq__(self, other):
        if not isinstance(other, ValuedElement):
            return NotImplemented
        return self.ctx == other.ctx and self.prec == other.prec and self.rep == other.rep

    def __hash__(self):
        return hash((self.ctx, self.prec, self.rep))

    def __str__(self):
        ctx = self.ctx
        if ctx.is_series:
            body = str(self.rep)
            return f"O(t^{self.prec})" if body == "0" else f"{body} + O(t^{self.prec})"
        return f"{self.rep} mod {ctx.p}^{self.prec}"

    def __repr__(self):
        return f"ValuedElement({self})"
