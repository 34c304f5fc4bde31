"""Polynomials in ``t`` over the prime field GF(p).

These are the exact coefficients of the series backend: an element of
F_p[[t]] known modulo t^k is stored as an ``FpPoly`` of degree < k, and
polynomial coefficients in F_p[t] are stored untruncated.

Coefficients are kept as a tuple of ints in ``range(p)``, lowest degree
first, with no trailing zeros (the zero polynomial is the empty tuple).
Plain ints coerce to constants, so ``1 + t`` and ``t * 3`` both work.
"""

import math


class FpPoly:
    __slots__ = ("p", "coeffs")

    def __init__(self, p, coeffs=()):
        if isinstance(coeffs, int):
            coeffs = (coeffs,)
        c = [int(a) % p for a in coeffs]
        while c and c[-1] == 0:
            c.pop()
        self.p = p
        self.coeffs = tuple(c)

    @classmethod
    def gen(cls, p):
        return cls(p, (0, 1))

    @classmethod
    def monomial(cls, p, k, c=1):
        return cls(p, (0,) * k + (c,))

    @classmethod
    def from_digits(cls, p, n):
        """Read the base-p digits of the integer ``n`` as coefficients."""
        digits = []
        while n:
            n, d = divmod(n, p)
            digits.append(d)
        return cls(p, digits)

    def _coerce(self, other):
        if isinstance(other, FpPoly):
            if other.p != self.p:
                raise ValueError(f"characteristic mismatch: {self.p} vs {other.p}")
            return other
        if isinstance(other, int):
            return FpPoly(self.p, (other,))
        return NotImplemented

    @property
    def degree(self):
        return len(self.coeffs) - 1

    def order(self):
        """t-adic valuation; ``math.inf`` for zero."""
        for i, a in enumerate(self.coeffs):
            if a:
                return i
        return math.inf

    def __getitem__(self, i):
        return self.coeffs[i] if 0 <= i < len(self.coeffs) else 0

    def __bool__(self):
        return bool(self.coeffs)

    def __eq__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return self.coeffs == other.coeffs

    def __hash__(self):
        if len(self.coeffs) <= 1:
            return hash(self[0])
        return hash((self.p, self.coeffs))

    def __repr__(self):
        return f"FpPoly({self.p}, {list(self.coeffs)})"

    def __str__(self):
        if not self.coeffs:
            return "0"
        parts = []
        for i, a in enumerate(self.coeffs):
            if not a:
                continue
            if i == 0:
                parts.append(str(a))
            else:
                mono = "t" if i == 1 else f"t^{i}"
                parts.append(mono if a == 1 else f"{a}*{mono}")
        return " + ".join(parts)

    def __neg__(self):
        return FpPoly(self.p, [-a for a in self.coeffs])

    def __pos__(self):
        return self

    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        n = max(len(self.coeffs), len(other.coeffs))
        return FpPoly(self.p, [self[i] + other[i] for i in range(n)])

    __radd__ = __add__

    def __sub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        n = max(len(self.coeffs), len(other.coeffs))
        return FpPoly(self.p, [self[i] - other[i] for i in range(n)])

    def __rsub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return other - self

    def __mul__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        a, b = self.coeffs, other.coeffs
        if not a or not b:
            return FpPoly(self.p)
        out = [0] * (len(a) + len(b) - 1)
        for i, x in enumerate(a):
            if x:
                for j, y in enumerate(b):
                    out[i + j] += x * y
        return FpPoly(self.p, out)

    __rmul__ = __mul__

    def __pow__(self, k):
        if k < 0:
            raise ValueError("negative exponent")
        result = FpPoly(self.p, (1,))
        base = self
        while k:
            if k & 1:
                result = result * base
            base = base * base
            k >>= 1
        return result

    def __divmod__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        if not other:
            raise ZeroDivisionError("polynomial division by zero")
        p = self.p
        inv_lead = pow(other.coeffs[-1], -1, p)
        rem = list(self.coeffs)
        db = other.degree
        quot = [0] * max(len(rem) - db, 0)
        for k in range(len(rem) - 1, db - 1, -1):
            c = rem[k] * inv_lead % p
            if c:
                quot[k - db] = c
                for j, b in enumerate(other.coeffs):
                    rem[k - db + j] = (rem[k - db + j] - c * b) % p
        return FpPoly(p, quot), FpPoly(p, rem)

    def __floordiv__(self, other):
        return divmod(self, other)[0]

    def __mod__(self, other):
        return divmod(self, other)[1]

    def exact_div(self, other):
        q, r = divmod(self, other)
        if r:
            raise ArithmeticError(f"{other} does not divide {self}")
        return q

    def truncate(self, k):
        """Reduce modulo t^k."""
        return FpPoly(self.p, self.coeffs[:max(k, 0)])

    def shift(self, k):
        """Multiply by t^k (k >= 0) or drop the lowest -k coefficients."""
        if k >= 0:
            return FpPoly(self.p, (0,) * k + self.coeffs)
        return FpPoly(self.p, self.coeffs[-k:])

    def inverse_series(self, k):
        """Inverse of a unit (nonzero constant term) modulo t^k."""
        if not self[0]:
            raise ZeroDivisionError("not a unit in F_p[[t]]")
        p = self.p
        inv0 = pow(self[0], -1, p)
        out = [inv0]
        for n in range(1, k):
            s = sum(self[i] * out[n - i] for i in range(1, min(n, self.degree) + 1))
            out.append(-inv0 * s % p)
        return FpPoly(p, out[:k])
