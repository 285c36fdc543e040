"""Exact arithmetic in the quadratic field Q(sqrt(2)).

Midpoint-displacement constructions place new values at ``chord +/- lam*sqrt(mu)``.
On a dyadic grid over [0, 1] the graininess is ``2**-m``, whose square root is
rational for even ``m`` and a rational multiple of sqrt(2) for odd ``m``.  Numbers
of the form ``p + q*sqrt(2)`` with rational ``p, q`` are closed under the
arithmetic the library performs, so the quadratic-variation identity
``mu * C**2 == lam**2`` can be checked with *exact* equality instead of a float
tolerance.
"""

from __future__ import annotations

import math
from fractions import Fraction

_SQRT2 = math.sqrt(2.0)


def _coerce(x):
    if isinstance(x, Root2):
        return x
    if isinstance(x, (int, Fraction)):
        return Root2(Fraction(x), Fraction(0))
    return NotImplemented


class Root2:
    """An element ``a + b*sqrt(2)`` of Q(sqrt(2)), with exact Fraction coefficients."""

    __slots__ = ("a", "b")

    def __init__(self, a=0, b=0):
        self.a = a if type(a) is Fraction else Fraction(a)
        self.b = b if type(b) is Fraction else Fraction(b)

    def __repr__(self):
        return f"Root2({self.a!r}, {self.b!r})"

    def __float__(self):
        return float(self.a) + float(self.b) * _SQRT2

    def __eq__(self, other):
        other = _coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return self.a == other.a and self.b == other.b

    def __hash__(self):
        if self.b == 0:
            return hash(self.a)
        return hash((self.a, self.b))

    def __neg__(self):
        return Root2(-self.a, -self.b)

    def __add__(self, other):
        other = _coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return Root2(self.a + other.a, self.b + other.b)

    __radd__ = __add__

    def __sub__(self, other):
        other = _coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return Root2(self.a - other.a, self.b - other.b)

    def __rsub__(self, other):
        other = _coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return other - self

    def __mul__(self, other):
        other = _coerce(other)
        if other is NotImplemented:
            return NotImplemented
        if not other.b:  # rational factor, no cross terms
            return Root2(self.a * other.a, self.b * other.a)
        # (a + b r)(c + d r) = ac + 2bd + (ad + bc) r,  r**2 = 2
        return Root2(self.a * other.a + 2 * self.b * other.b,
                     self.a * other.b + self.b * other.a)

    __rmul__ = __mul__

    def __truediv__(self, other):
        other = _coerce(other)
        if other is NotImplemented:
            return NotImplemented
        if not other.b:  # rational divisor
            if not other.a:
                raise ZeroDivisionError("division by zero in Q(sqrt(2))")
            return Root2(self.a / other.a, self.b / other.a)
        # multiply by the conjugate; the norm a**2 - 2 b**2 is nonzero for
        # nonzero elements because sqrt(2) is irrational
        norm = other.a * other.a - 2 * other.b * other.b
        if norm == 0:
            raise ZeroDivisionError("division by zero in Q(sqrt(2))")
        conj = Root2(other.a, -other.b)
        num = self * conj
        return Root2(num.a / norm, num.b / norm)

    def __rtruediv__(self, other):
        other = _coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return other / self

    def __pow__(self, n):
        if not isinstance(n, int) or n < 0:
            return NotImplemented
        out = Root2(1, 0)
        for _ in range(n):
            out = out * self
        return out

    def _sign(self) -> int:
        if self.a == 0 and self.b == 0:
            return 0
        if self.a >= 0 and self.b >= 0:
            return 1
        if self.a <= 0 and self.b <= 0:
            return -1
        # mixed signs: a + b*sqrt(2) has the sign of a iff a**2 > 2*b**2
        bigger_a = self.a * self.a > 2 * self.b * self.b
        if self.a > 0:
            return 1 if bigger_a else -1
        return -1 if bigger_a else 1

    def __lt__(self, other):
        other = _coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return (self - other)._sign() < 0

    def __le__(self, other):
        other = _coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return (self - other)._sign() <= 0

    def __gt__(self, other):
        other = _coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return (self - other)._sign() > 0

    def __ge__(self, other):
        other = _coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return (self - other)._sign() >= 0

    def __abs__(self):
        return self if self._sign() >= 0 else -self


def sqrt_dyadic(value) -> Root2:
    """Exact square root of ``2**k`` (k any integer), as an element of Q(sqrt(2))."""
    f = Fraction(value)
    num, den = f.numerator, f.denominator
    if num <= 0 or (num & (num - 1)) or (den & (den - 1)):
        raise ValueError(f"{value} is not a power of two")
    k = num.bit_length() - 1 - (den.bit_length() - 1)
    half, odd = divmod(k, 2)
    base = Fraction(2) ** half
    if odd:
        # sqrt(2**(2h+1)) = 2**h * sqrt(2)
        return Root2(0, base)
    return Root2(base, 0)
