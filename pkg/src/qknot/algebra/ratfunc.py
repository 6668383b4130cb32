"""Reduced rational functions in q and M."""

from __future__ import annotations

from fractions import Fraction

from .gcd import reduce_fraction
from .laurent import LaurentPoly, format_poly, norm_coeff


class PoleAtQ1(ArithmeticError):
    """Specializing q to 1 hits a vanishing denominator."""


class RatFunc:
    """``num / den`` in canonical form.

    ``den`` is a primitive polynomial with positive leading coefficient and
    no monomial factor; every unit lives in ``num``. A RatFunc whose
    denominator is 1 is a Laurent polynomial.
    """

    __slots__ = ("num", "den")

    def __init__(self, num, den=None, *, _reduced=False):
        num = LaurentPoly.coerce(num)
        if den is None:
            self.num, self.den = num, LaurentPoly.const(1)
            return
        den = LaurentPoly.coerce(den)
        if _reduced:
            self.num, self.den = num, den
            return
        if den.is_zero():
            raise ZeroDivisionError("rational function with zero denominator")
        self.num, self.den = reduce_fraction(num, den)

    @classmethod
    def coerce(cls, x) -> "RatFunc":
        if isinstance(x, RatFunc):
            return x
        return cls(LaurentPoly.coerce(x))

    def is_poly(self) -> bool:
        return self.den.is_const()

    def as_poly(self) -> LaurentPoly:
        if not self.is_poly():
            raise ValueError("not a Laurent polynomial")
        return self.num

    def is_zero(self) -> bool:
        return self.num.is_zero()

    def __bool__(self):
        return not self.num.is_zero()

    def __eq__(self, other):
        if isinstance(other, RatFunc):
            return self.num == other.num and self.den == other.den
        if isinstance(other, (LaurentPoly, int, Fraction)):
            return self.is_poly() and self.num == other
        return NotImplemented

    def __hash__(self):
        return hash((self.num, self.den))

    def __neg__(self):
        return RatFunc(-self.num, self.den, _reduced=True)

    def __add__(self, other):
        if not isinstance(other, RatFunc):
            try:
                other = RatFunc.coerce(other)
            except TypeError:
                return NotImplemented
        if self.is_poly() and other.is_poly():
            return RatFunc(self.num + other.num)
        if self.den == other.den:
            return RatFunc(self.num + other.num, self.den)
        return RatFunc(self.num * other.den + other.num * self.den, self.den * other.den)

    __radd__ = __add__

    def __sub__(self, other):
        if not isinstance(other, RatFunc):
            try:
                other = RatFunc.coerce(other)
            except TypeError:
                return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if not isinstance(other, RatFunc):
            try:
                other = RatFunc.coerce(other)
            except TypeError:
                return NotImplemented
        if self.is_poly() and other.is_poly():
            return RatFunc(self.num * other.num)
        return RatFunc(self.num * other.num, self.den * other.den)

    __rmul__ = __mul__

    def inverse(self) -> "RatFunc":
        if self.is_zero():
            raise ZeroDivisionError("inverse of zero")
        return RatFunc(self.den, self.num)

    def __truediv__(self, other):
        if not isinstance(other, RatFunc):
            try:
                other = RatFunc.coerce(other)
            except TypeError:
                return NotImplemented
        return self * other.inverse()

    def __rtruediv__(self, other):
        return RatFunc.coerce(other) * self.inverse()

    def __pow__(self, n: int):
        if n < 0:
            return self.inverse() ** (-n)
        return RatFunc(self.num ** n, self.den ** n, _reduced=True) if n else RatFunc(1)

    # substitution

    def shift_M(self, s) -> "RatFunc":
        return RatFunc(self.num.shift_M(s), self.den.shift_M(s))

    def invert_M(self) -> "RatFunc":
        return RatFunc(self.num.invert_M(), self.den.invert_M())

    def at_M_qpow(self, n):
        """Substitute ``M -> q^n``; a LaurentPoly when the division is exact."""
        from .gcd import exact_quotient

        num = self.num.at_M_qpow(n)
        if self.is_poly():
            return num
        den = self.den.at_M_qpow(n)
        if den.is_zero():
            raise ZeroDivisionError(f"denominator vanishes at M = q^{n}")
        qt = exact_quotient(num, den)
        return qt if qt is not None else RatFunc(num, den)

    def at_q1(self) -> "RatFunc":
        den = self.den.at_q1()
        if den.is_zero():
            raise PoleAtQ1("denominator vanishes at q = 1")
        return RatFunc(self.num.at_q1(), den)

    def evaluate(self, q, M):
        d = self.den.evaluate(q, M)
        if d == 0:
            raise ZeroDivisionError("denominator vanishes at the point")
        return self.num.evaluate(q, M) / d

    def __str__(self):
        if self.is_poly():
            return format_poly(self.num)
        return f"({format_poly(self.num)})*({format_poly(self.den)})^-1"

    def __repr__(self):
        return f"RatFunc({str(self)!r})"


def as_ratfunc(x) -> RatFunc:
    return RatFunc.coerce(x)


__all__ = ["RatFunc", "PoleAtQ1", "as_ratfunc", "norm_coeff"]
