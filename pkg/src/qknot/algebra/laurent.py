"""Exact Laurent polynomials in ``q`` and ``M`` over the rationals.

Exponents of ``q`` are stored doubled so that half-integer powers of ``q``
stay exact. All public accessors speak in true exponents; a half-integer
exponent comes back as a :class:`fractions.Fraction`.
"""

from __future__ import annotations

from fractions import Fraction
from numbers import Rational
from typing import Dict, Iterable, Iterator, Mapping, Tuple

BigRational = Fraction

Key = Tuple[int, int]  # (doubled q exponent, M exponent)


def norm_coeff(c):
    """Return ``c`` as an ``int`` when it is integral, else as a Fraction."""
    if type(c) is int:
        return c
    if isinstance(c, Fraction):
        return c.numerator if c.denominator == 1 else c
    if isinstance(c, Rational):
        c = Fraction(c)
        return c.numerator if c.denominator == 1 else c
    raise TypeError(f"unsupported coefficient {c!r}")


def double_exp(e) -> int:
    """Doubled form of a q exponent given as int or half-integer."""
    if type(e) is int:
        return 2 * e
    e2 = Fraction(e) * 2
    if e2.denominator != 1:
        raise ValueError(f"q exponent {e} is not a half-integer")
    return int(e2)


def half(e2: int):
    return e2 // 2 if e2 % 2 == 0 else Fraction(e2, 2)


class LaurentPoly:
    """Immutable element of Q[q^(1/2), q^(-1/2), M, M^-1]."""

    __slots__ = ("_t", "_hash")

    def __init__(self, terms: Mapping[Key, object] | None = None, *, _raw=False):
        if _raw:
            self._t = terms
        else:
            t = {}
            if terms:
                for k, c in terms.items():
                    c = norm_coeff(c)
                    if c:
                        t[k] = c
            self._t = t
        self._hash = None

    # construction

    @classmethod
    def _from_raw(cls, terms: Dict[Key, object]) -> "LaurentPoly":
        return cls(terms, _raw=True)

    @classmethod
    def const(cls, c) -> "LaurentPoly":
        c = norm_coeff(c)
        return cls._from_raw({(0, 0): c} if c else {})

    @classmethod
    def monomial(cls, coeff=1, q=0, M=0) -> "LaurentPoly":
        coeff = norm_coeff(coeff)
        return cls._from_raw({(double_exp(q), int(M)): coeff} if coeff else {})

    @classmethod
    def from_terms(cls, items: Iterable[Tuple[object, int, object]]) -> "LaurentPoly":
        """Build from ``(q_exp, M_exp, coeff)`` triples, summing repeats."""
        t: Dict[Key, object] = {}
        for eq, em, c in items:
            k = (double_exp(eq), int(em))
            t[k] = t.get(k, 0) + c
        return cls(t)

    @classmethod
    def from_q_coeffs(cls, coeffs, offset=0) -> "LaurentPoly":
        """Univariate ``sum coeffs[i] q^(offset+i)``."""
        return cls({(2 * (offset + i), 0): c for i, c in enumerate(coeffs) if c})

    @classmethod
    def coerce(cls, x) -> "LaurentPoly":
        if isinstance(x, LaurentPoly):
            return x
        if isinstance(x, (int, Fraction)) or isinstance(x, Rational):
            return cls.const(x)
        raise TypeError(f"cannot coerce {type(x).__name__} to LaurentPoly")

    # basic queries

    @property
    def raw(self) -> Dict[Key, object]:
        """Internal term map keyed by (doubled q exponent, M exponent)."""
        return self._t

    def terms(self) -> Iterator[Tuple[object, int, object]]:
        """Yield ``(q_exp, M_exp, coeff)`` in print order."""
        for (e2, m) in sorted(self._t, reverse=True):
            yield half(e2), m, self._t[(e2, m)]

    def __len__(self):
        return len(self._t)

    def __bool__(self):
        return bool(self._t)

    def is_zero(self) -> bool:
        return not self._t

    def is_const(self) -> bool:
        return not self._t or (len(self._t) == 1 and (0, 0) in self._t)

    def is_monomial(self) -> bool:
        return len(self._t) == 1

    def constant_value(self):
        """The rational value of a constant polynomial."""
        if not self._t:
            return 0
        if not self.is_const():
            raise ValueError("not a constant")
        return self._t[(0, 0)]

    def coeff(self, q=0, M=0):
        return self._t.get((double_exp(q), M), 0)

    def has_half_q(self) -> bool:
        return any(e2 & 1 for e2, _ in self._t)

    def variables(self):
        vs = set()
        for e2, m in self._t:
            if e2:
                vs.add("q")
            if m:
                vs.add("M")
        return vs

    def _need_nonzero(self):
        if not self._t:
            raise ValueError("degree of the zero polynomial")

    def deg_q(self):
        self._need_nonzero()
        return half(max(e2 for e2, _ in self._t))

    def ldeg_q(self):
        self._need_nonzero()
        return half(min(e2 for e2, _ in self._t))

    def deg_M(self) -> int:
        self._need_nonzero()
        return max(m for _, m in self._t)

    def ldeg_M(self) -> int:
        self._need_nonzero()
        return min(m for _, m in self._t)

    def lead(self) -> Tuple[Key, object]:
        """Leading raw term in the (q, M) lexicographic order."""
        self._need_nonzero()
        k = max(self._t)
        return k, self._t[k]

    def lead_coeff(self):
        return self.lead()[1]

    def coeff_M(self, m: int) -> "LaurentPoly":
        """Coefficient of ``M^m`` as a polynomial in ``q``."""
        return LaurentPoly._from_raw({(e2, 0): c for (e2, mm), c in self._t.items() if mm == m})

    def by_M(self) -> Dict[int, "LaurentPoly"]:
        out: Dict[int, Dict[Key, object]] = {}
        for (e2, m), c in self._t.items():
            out.setdefault(m, {})[(e2, 0)] = c
        return {m: LaurentPoly._from_raw(d) for m, d in out.items()}

    # arithmetic

    def __eq__(self, other):
        if isinstance(other, LaurentPoly):
            return self._t == other._t
        if isinstance(other, (int, Fraction)):
            return self._t == LaurentPoly.const(other)._t
        return NotImplemented

    def __hash__(self):
        if self._hash is None:
            self._hash = hash(frozenset(self._t.items()))
        return self._hash

    def __neg__(self):
        return LaurentPoly._from_raw({k: -c for k, c in self._t.items()})

    def __pos__(self):
        return self

    def _add(self, other, sign):
        t = dict(self._t)
        for k, c in other._t.items():
            v = t.get(k, 0) + sign * c
            if v:
                t[k] = norm_coeff(v) if type(v) is not int else v
            else:
                t.pop(k, None)
        return LaurentPoly._from_raw(t)

    def __add__(self, other):
        if not isinstance(other, LaurentPoly):
            if isinstance(other, (int, Fraction)):
                other = LaurentPoly.const(other)
            else:
                return NotImplemented
        return self._add(other, 1)

    __radd__ = __add__

    def __sub__(self, other):
        if not isinstance(other, LaurentPoly):
            if isinstance(other, (int, Fraction)):
                other = LaurentPoly.const(other)
            else:
                return NotImplemented
        return self._add(other, -1)

    def __rsub__(self, other):
        return (-self).__add__(other)

    def __mul__(self, other):
        if not isinstance(other, LaurentPoly):
            if isinstance(other, (int, Fraction)):
                c = norm_coeff(other)
                if not c:
                    return LaurentPoly()
                return LaurentPoly._from_raw({k: norm_coeff(v * c) for k, v in self._t.items()})
            return NotImplemented
        a, b = self._t, other._t
        if len(a) < len(b):
            a, b = b, a
        t: Dict[Key, object] = {}
        get = t.get
        for (e1, m1), c1 in b.items():
            for (e2, m2), c2 in a.items():
                k = (e1 + e2, m1 + m2)
                t[k] = get(k, 0) + c1 * c2
        return LaurentPoly._from_raw({k: norm_coeff(v) for k, v in t.items() if v})

    __rmul__ = __mul__

    def __pow__(self, n: int):
        if not isinstance(n, int):
            return NotImplemented
        if n < 0:
            if not self.is_monomial():
                raise ValueError("negative power of a non-monomial")
            (e2, m), c = next(iter(self._t.items()))
            return LaurentPoly._from_raw({(e2 * n, m * n): norm_coeff(Fraction(1) / c ** -n)})
        result = LaurentPoly.const(1)
        base = self
        while n:
            if n & 1:
                result = result * base
            n >>= 1
            if n:
                base = base * base
        return result

    def scale(self, c) -> "LaurentPoly":
        return self * c

    def shift(self, q=0, M=0) -> "LaurentPoly":
        """Multiply by the monomial ``q^q M^M``."""
        d2 = double_exp(q)
        return LaurentPoly._from_raw({(e2 + d2, m + M): c for (e2, m), c in self._t.items()})

    def _shift_raw(self, d2: int, dm: int) -> "LaurentPoly":
        if not d2 and not dm:
            return self
        return LaurentPoly._from_raw({(e2 + d2, m + dm): c for (e2, m), c in self._t.items()})

    def monomial_content(self) -> Key:
        """Raw (doubled q, M) exponents of the largest monomial dividing self."""
        self._need_nonzero()
        return min(e2 for e2, _ in self._t), min(m for _, m in self._t)

    def poly_part(self) -> "LaurentPoly":
        """Self divided by its monomial content."""
        e2, m = self.monomial_content()
        return self._shift_raw(-e2, -m)

    def is_polynomial(self) -> bool:
        return all(e2 >= 0 and m >= 0 for e2, m in self._t)

    def content(self) -> Fraction:
        """Positive rational content, so that self/content has coprime integers."""
        from math import gcd, lcm

        self._need_nonzero()
        num = 0
        den = 1
        for c in self._t.values():
            if type(c) is int:
                num = gcd(num, c)
            else:
                num = gcd(num, c.numerator)
                den = lcm(den, c.denominator)
        return Fraction(num, den)

    def primitive(self) -> "LaurentPoly":
        """Integer-primitive associate with positive leading coefficient."""
        if not self._t:
            return self
        c = self.content()
        if self.lead_coeff() < 0:
            c = -c
        if c == 1:
            return self
        return self * (1 / c)

    def canonical(self) -> "LaurentPoly":
        """Unit-free representative: monomial content removed, primitive."""
        if not self._t:
            return self
        return self.poly_part().primitive()

    # substitution

    def shift_M(self, s) -> "LaurentPoly":
        """Substitute ``M -> q^s M``."""
        s2 = double_exp(s)
        if not s2:
            return self
        return LaurentPoly._from_raw({(e2 + s2 * m, m): c for (e2, m), c in self._t.items()})

    def _shift_M_raw(self, s2: int) -> "LaurentPoly":
        if not s2:
            return self
        return LaurentPoly._from_raw({(e2 + s2 * m, m): c for (e2, m), c in self._t.items()})

    def at_M_qpow(self, n) -> "LaurentPoly":
        """Substitute ``M -> q^n``; the result is univariate in q."""
        n2 = double_exp(n)
        t: Dict[Key, object] = {}
        for (e2, m), c in self._t.items():
            k = (e2 + n2 * m, 0)
            t[k] = t.get(k, 0) + c
        return LaurentPoly({k: v for k, v in t.items() if v})

    def invert_M(self) -> "LaurentPoly":
        return LaurentPoly._from_raw({(e2, -m): c for (e2, m), c in self._t.items()})

    def invert_q(self) -> "LaurentPoly":
        return LaurentPoly._from_raw({(-e2, m): c for (e2, m), c in self._t.items()})

    def scale_M(self, k: int) -> "LaurentPoly":
        """Substitute ``M -> M^k``."""
        return LaurentPoly._from_raw({(e2, m * k): c for (e2, m), c in self._t.items()})

    def at_q1(self) -> "LaurentPoly":
        """Substitute ``q -> 1``; the result only involves M."""
        t: Dict[Key, object] = {}
        for (e2, m), c in self._t.items():
            k = (0, m)
            t[k] = t.get(k, 0) + c
        return LaurentPoly({k: v for k, v in t.items() if v})

    def at_M1(self) -> "LaurentPoly":
        t: Dict[Key, object] = {}
        for (e2, m), c in self._t.items():
            k = (e2, 0)
            t[k] = t.get(k, 0) + c
        return LaurentPoly({k: v for k, v in t.items() if v})

    def evaluate(self, q=None, M=None):
        """Evaluate at rational ``q`` and/or ``M``.

        With both given the result is a Fraction. Half-integer q exponents
        need ``q`` to be a perfect rational square.
        """
        if q is None and M is None:
            return self
        if q is not None:
            q = Fraction(q)
            root = _sqrt_fraction(q) if self.has_half_q() else None
        total = 0
        part: Dict[Key, object] = {}
        for (e2, m), c in self._t.items():
            v = Fraction(c)
            ke, km = e2, m
            if q is not None:
                if e2 & 1:
                    if root is None:
                        raise ValueError("half-integer q exponent needs a square q")
                    v *= root ** e2
                else:
                    v *= q ** (e2 // 2)
                ke = 0
            if M is not None:
                v *= Fraction(M) ** m
                km = 0
            if q is not None and M is not None:
                total += v
            else:
                part[(ke, km)] = part.get((ke, km), 0) + v
        if q is not None and M is not None:
            return total
        return LaurentPoly({k: v for k, v in part.items() if v})

    def eval_mod(self, t: int, M: int, p: int) -> int:
        """Value at ``q^(1/2) = t``, ``M`` modulo the prime ``p``."""
        total = 0
        for (e2, m), c in self._t.items():
            if type(c) is int:
                cv = c % p
            else:
                cv = c.numerator * pow(c.denominator, -1, p) % p
            total += cv * pow(t, e2, p) * pow(M, m, p)
        return total % p

    # divisibility

    def exact_div(self, other: "LaurentPoly") -> "LaurentPoly":
        """Exact quotient; raises ValueError if ``other`` does not divide."""
        from .gcd import exact_quotient

        q = exact_quotient(self, other)
        if q is None:
            raise ValueError("inexact division")
        return q

    def divides(self, other: "LaurentPoly") -> bool:
        from .gcd import exact_quotient

        return exact_quotient(other, self) is not None

    # printing

    def __str__(self):
        return format_poly(self)

    def __repr__(self):
        return f"LaurentPoly({format_poly(self)!r})"

    def __reduce__(self):
        return (LaurentPoly._from_raw, (dict(self._t),))


def _sqrt_fraction(x: Fraction):
    from math import isqrt

    if x < 0:
        return None
    a, b = isqrt(x.numerator), isqrt(x.denominator)
    if a * a == x.numerator and b * b == x.denominator:
        return Fraction(a, b)
    return None


def _fmt_q(e2: int) -> str:
    if e2 == 2:
        return "q"
    if e2 & 1:
        return f"q^({e2}/2)"
    return f"q^{e2 // 2}"


def _fmt_M(m: int) -> str:
    return "M" if m == 1 else f"M^{m}"


def format_monomial_term(c, e2: int, m: int) -> Tuple[str, str]:
    """Return ``(sign, body)`` for one term; ``sign`` is '+' or '-'."""
    sign = "-" if c < 0 else "+"
    a = abs(c)
    parts = []
    if e2:
        parts.append(_fmt_q(e2))
    if m:
        parts.append(_fmt_M(m))
    if a != 1 or not parts:
        parts.insert(0, str(a))
    return sign, "*".join(parts)


def format_poly(p: LaurentPoly) -> str:
    t = p.raw
    if not t:
        return "0"
    out = []
    for k in sorted(t, reverse=True):
        sign, body = format_monomial_term(t[k], *k)
        if not out:
            out.append(("-" if sign == "-" else "") + body)
        else:
            out.append(f" {sign} {body}")
    return "".join(out)


ZERO = LaurentPoly()
ONE = LaurentPoly.const(1)
Q = LaurentPoly.monomial(1, q=1)
M = LaurentPoly.monomial(1, M=1)
