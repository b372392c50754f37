"""Quotients of Laurent polynomials in t and M, kept in lowest terms."""

from __future__ import annotations

from .gcd import normalize_gcd, poly_gcd
from .laurent import ONE, MultiLaurent, exact_div, invert_M, qshift
from .text import format_poly


class RationalFunction:
    """``num / den`` with den a monomial-free primitive polynomial, positive lex leading coefficient.

    With that normalization equal rational functions have identical
    ``(num, den)`` pairs, so equality is structural.
    """

    __slots__ = ("num", "den")

    def __init__(self, num, den=ONE, reduced=False):
        num = MultiLaurent.coerce(num)
        den = MultiLaurent.coerce(den)
        if not den:
            raise ZeroDivisionError("rational function with zero denominator")
        if not num:
            self.num, self.den = num, ONE
            return
        if not reduced:
            g = poly_gcd(num, den)
            if not g.is_constant():
                num = exact_div(num, g)
                den = exact_div(den, g)
        nd = normalize_gcd(den)
        # den = unit * nd with unit a scalar monomial; move the unit into num
        unit = exact_div(den, nd)
        self.num = num * unit ** -1
        self.den = nd

    @classmethod
    def coerce(cls, x):
        if isinstance(x, RationalFunction):
            return x
        return cls(MultiLaurent.coerce(x), ONE, reduced=True)

    def is_laurent(self):
        return self.den == ONE

    def as_laurent(self):
        if not self.is_laurent():
            raise ValueError(f"not a Laurent polynomial: denominator {self.den}")
        return self.num

    def __bool__(self):
        return bool(self.num)

    def __eq__(self, other):
        try:
            other = RationalFunction.coerce(other)
        except TypeError:
            return NotImplemented
        return self.num == other.num and self.den == other.den

    def __hash__(self):
        return hash((self.num, self.den))

    def __add__(self, other):
        try:
            other = RationalFunction.coerce(other)
        except TypeError:
            return NotImplemented
        if self.den == other.den:
            return RationalFunction(self.num + other.num, self.den)
        if other.den == ONE:
            return RationalFunction(self.num + other.num * self.den, self.den, reduced=True)
        if self.den == ONE:
            return RationalFunction(self.num * other.den + other.num, other.den, reduced=True)
        return RationalFunction(self.num * other.den + other.num * self.den, self.den * other.den)

    __radd__ = __add__

    def __neg__(self):
        return RationalFunction(-self.num, self.den, reduced=True)

    def __sub__(self, other):
        return self + (-RationalFunction.coerce(other))

    def __rsub__(self, other):
        return RationalFunction.coerce(other) - self

    def __mul__(self, other):
        try:
            other = RationalFunction.coerce(other)
        except TypeError:
            return NotImplemented
        if self.den == ONE and other.den == ONE:
            return RationalFunction(self.num * other.num, ONE, reduced=True)
        return RationalFunction(self.num * other.num, self.den * other.den)

    __rmul__ = __mul__

    def inverse(self):
        if not self.num:
            raise ZeroDivisionError("inverse of zero")
        return RationalFunction(self.den, self.num, reduced=True)

    def __truediv__(self, other):
        return self * RationalFunction.coerce(other).inverse()

    def __rtruediv__(self, other):
        return RationalFunction.coerce(other) * self.inverse()

    def __pow__(self, n):
        if n < 0:
            return self.inverse() ** -n
        return RationalFunction(self.num ** n, self.den ** n, reduced=True)

    def map(self, fn):
        """Apply a ring endomorphism of the Laurent ring to both parts."""
        return RationalFunction(fn(self.num), fn(self.den))

    def qshift(self, k):
        return self.map(lambda p: qshift(p, k))

    def invert_M(self):
        return self.map(invert_M)

    def subs(self, fn):
        return self.map(fn)

    def __repr__(self):
        return f"RationalFunction({self})"

    def __str__(self):
        if self.den == ONE:
            return format_poly(self.num)
        return f"({format_poly(self.num)})/({format_poly(self.den)})"


def as_rational(x):
    return RationalFunction.coerce(x)

