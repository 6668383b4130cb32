"""Operators in the localized q-Weyl algebra ``Q(q, M)<L>`` with ``L M = q M L``.

An operator is stored as polynomial numerators ``n_0 .. n_d`` over one
shared denominator, i.e. ``P = den^-1 * sum n_j L^j``. The same container
with a trivial twist models commutative polynomials in ``L`` over ``Q(M)``,
which is what an operator becomes after ``q -> 1``.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from fractions import Fraction
from math import gcd as igcd, lcm as ilcm
from typing import Callable, Dict, Iterable, List, Optional, Sequence, Tuple, Union

from .algebra import LaurentPoly, PoleAtQ1, RatFunc, parse
from .algebra.gcd import exact_quotient, poly_gcd
from .algebra.laurent import format_monomial_term, format_poly, norm_coeff


class DivisionByZeroOperator(ZeroDivisionError):
    pass


class ZeroRHS(ValueError):
    pass


class CoefficientPole(ZeroDivisionError):
    """A coefficient denominator vanishes at ``M = q^n``."""


Coef = Union[LaurentPoly, RatFunc, int, Fraction]

_ONE = LaurentPoly.const(1)


def _lcm(a: LaurentPoly, b: LaurentPoly) -> LaurentPoly:
    if a.is_const():
        return b
    if b.is_const() or a == b:
        return a
    g = poly_gcd(a, b)
    return (a * exact_quotient(b, g)).canonical()


class _LPoly:
    """Shared machinery for twisted and commutative polynomials in L."""

    _twist = 1
    __slots__ = ("nums", "den", "_hash")

    def __init__(self, coeffs: Iterable[Coef] = (), den: Optional[LaurentPoly] = None):
        cs = list(coeffs)
        rats = [c if isinstance(c, RatFunc) else None for c in cs]
        if any(r is not None and not r.is_poly() for r in rats):
            D = _ONE
            for r in rats:
                if r is not None:
                    D = _lcm(D, r.den)
            nums = []
            for c in cs:
                if isinstance(c, RatFunc):
                    nums.append(c.num * exact_quotient(D, c.den))
                else:
                    nums.append(LaurentPoly.coerce(c) * D)
        else:
            D = _ONE
            nums = [c.num if isinstance(c, RatFunc) else LaurentPoly.coerce(c) for c in cs]
        if den is not None:
            den = LaurentPoly.coerce(den)
            if den.is_zero():
                raise ZeroDivisionError("zero denominator")
            D = D * den
        while nums and nums[-1].is_zero():
            nums.pop()
        self.nums: Tuple[LaurentPoly, ...] = tuple(nums)
        self.den = _ONE
        self._hash = None
        if not nums:
            return
        if not D.is_const() or D != _ONE:
            self._set_den(D)

    def _set_den(self, D: LaurentPoly):
        # move units of D into the numerators, then cancel common factors
        canon = D.canonical()
        inv = exact_quotient(D, canon) ** -1
        nums = [n * inv for n in self.nums]
        if not canon.is_const():
            g = canon
            for n in nums:
                if n.is_zero():
                    continue
                g = poly_gcd(g, n)
                if g.is_const():
                    break
            if not g.is_const():
                canon = exact_quotient(canon, g)
                nums = [exact_quotient(n, g) for n in nums]
        self.nums = tuple(nums)
        self.den = canon

    @classmethod
    def _make(cls, nums, den=_ONE):
        obj = cls.__new__(cls)
        _LPoly.__init__(obj, nums, den if not den.is_const() or den != _ONE else None)
        return obj

    # queries

    @property
    def order(self) -> int:
        """Degree in L; -1 for the zero operator."""
        return len(self.nums) - 1

    deg_L = order

    def ldeg_L(self) -> int:
        for j, n in enumerate(self.nums):
            if not n.is_zero():
                return j
        raise ValueError("zero operator")

    def is_zero(self) -> bool:
        return not self.nums

    def __bool__(self):
        return bool(self.nums)

    def coeff(self, j: int) -> RatFunc:
        if j < 0 or j >= len(self.nums):
            return RatFunc(0)
        if self.den == _ONE:
            return RatFunc(self.nums[j])
        return RatFunc(self.nums[j], self.den)

    @property
    def coeffs(self) -> List[RatFunc]:
        return [self.coeff(j) for j in range(len(self.nums))]

    def poly_coeffs(self) -> List[LaurentPoly]:
        """Numerators; equal to the coefficients when the denominator is 1."""
        return list(self.nums)

    def lead(self) -> RatFunc:
        return self.coeff(self.order)

    def sigma(self, p, j: int = 1):
        """Apply the twist ``M -> q^j M`` (identity for commutative ones)."""
        s2 = 2 * j * self._twist
        if isinstance(p, RatFunc):
            return p if not s2 else RatFunc(p.num._shift_M_raw(s2), p.den._shift_M_raw(s2))
        return p._shift_M_raw(s2)

    # arithmetic

    def __eq__(self, other):
        if isinstance(other, _LPoly):
            return type(self) is type(other) and self.nums == other.nums and self.den == other.den
        return NotImplemented

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((type(self).__name__, self.nums, self.den))
        return self._hash

    def _coerce(self, other):
        if isinstance(other, type(self)):
            return other
        if isinstance(other, (LaurentPoly, RatFunc, int, Fraction)):
            return type(self)([other])
        return None

    def __neg__(self):
        return type(self)._make([-n for n in self.nums], self.den)

    def __add__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        if self.den == o.den:
            D, a, b = self.den, self.nums, o.nums
        else:
            D = _lcm(self.den, o.den)
            fa, fb = exact_quotient(D, self.den), exact_quotient(D, o.den)
            a = [n * fa for n in self.nums]
            b = [n * fb for n in o.nums]
        n = max(len(a), len(b))
        z = LaurentPoly()
        nums = [(a[j] if j < len(a) else z) + (b[j] if j < len(b) else z) for j in range(n)]
        return type(self)._make(nums, D)

    __radd__ = __add__

    def __sub__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return self + (-o)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return self.mul(o)

    def __rmul__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return o.mul(self)

    def __pow__(self, n: int):
        out = type(self)([1])
        for _ in range(n):
            out = out * self
        return out

    def mul(self, R: "_LPoly") -> "_LPoly":
        """Product ``self * R`` honouring ``L^i f(M) = f(q^i M) L^i``."""
        Q = self
        if Q.is_zero() or R.is_zero():
            return type(self)()
        dR = R.den
        if dR == _ONE:
            shifted = {}
            out: List[LaurentPoly] = [LaurentPoly()] * (Q.order + R.order + 1)
            for i, qi in enumerate(Q.nums):
                if qi.is_zero():
                    continue
                for j, rj in enumerate(R.nums):
                    if rj.is_zero():
                        continue
                    out[i + j] = out[i + j] + qi * self.sigma(rj, i)
            return type(self)._make(out, Q.den)
        # common denominator D = lcm_i sigma^i(dR)
        idx = [i for i, qi in enumerate(Q.nums) if not qi.is_zero()]
        sd = {i: self.sigma(dR, i) for i in idx}
        D = _ONE
        for i in idx:
            D = _lcm(D, sd[i])
        out = [LaurentPoly()] * (Q.order + R.order + 1)
        for i in idx:
            f = Q.nums[i] * exact_quotient(D, sd[i])
            for j, rj in enumerate(R.nums):
                if not rj.is_zero():
                    out[i + j] = out[i + j] + f * self.sigma(rj, i)
        return type(self)._make(out, Q.den * D)

    def lmul(self, c: Coef) -> "_LPoly":
        """Left multiplication by a function ``c``."""
        c = RatFunc.coerce(c)
        return type(self)._make([n * c.num for n in self.nums], self.den * c.den)

    def shift_L(self, k: int) -> "_LPoly":
        """``L^k * self``."""
        nums = [LaurentPoly()] * k + [self.sigma(n, k) for n in self.nums]
        return type(self)._make(nums, self.sigma(self.den, k))

    def divmod_right(self, R: "_LPoly"):
        """Return ``(Q, rem)`` with ``self = Q * R + rem`` and ``deg rem < deg R``."""
        if R.is_zero():
            raise DivisionByZeroOperator("division by the zero operator")
        k = R.order
        rem = self.coeffs
        rc = R.coeffs
        quo: Dict[int, RatFunc] = {}
        for s in range(len(rem) - 1 - k, -1, -1):
            top = rem[s + k]
            if top.is_zero():
                continue
            c = top / self.sigma(rc[k], s)
            quo[s] = c
            for j in range(k):
                if not rc[j].is_zero():
                    rem[s + j] = rem[s + j] - c * self.sigma(rc[j], s)
            rem[s + k] = RatFunc(0)
        n = max(quo) + 1 if quo else 0
        Qo = type(self)([quo.get(s, RatFunc(0)) for s in range(n)])
        return Qo, type(self)(rem[:k])

    def normalize(self) -> "_LPoly":
        """Content-free representative with polynomial coefficients.

        Denominators are cleared, common polynomial and monomial content is
        removed, integer content is divided out and the lex-leading term of
        the leading coefficient is made positive.
        """
        if self.is_zero():
            raise ValueError("normalize of the zero operator")
        nz = [n for n in self.nums if not n.is_zero()]
        g = nz[0].canonical()
        for n in nz[1:]:
            if g.is_const():
                break
            g = poly_gcd(g, n)
        e2 = min(n.monomial_content()[0] for n in nz)
        em = min(n.monomial_content()[1] for n in nz)
        nums = [exact_quotient(n, g)._shift_raw(-e2, -em) if not n.is_zero() else n for n in self.nums]
        num_g = 0
        den_l = 1
        for n in nums:
            for c in n.raw.values():
                if type(c) is int:
                    num_g = igcd(num_g, c)
                else:
                    num_g = igcd(num_g, c.numerator)
                    den_l = ilcm(den_l, c.denominator)
        scale = Fraction(den_l, num_g)
        if nums[-1].lead_coeff() < 0:
            scale = -scale
        if scale != 1:
            nums = [n * scale for n in nums]
        return type(self)._make(nums)

    def scale_to_poly(self) -> List[LaurentPoly]:
        """Numerators after clearing the shared denominator."""
        return list(self.nums)

    def at_q1(self):
        """Literal ``q -> 1`` of each coefficient; raises PoleAtQ1."""
        den = self.den.at_q1()
        if den.is_zero():
            raise PoleAtQ1("denominator vanishes at q = 1")
        return CommPoly([RatFunc(n.at_q1(), den) for n in self.nums])

    def evaluate(self, q, M) -> List[Fraction]:
        """Coefficient values at a rational point."""
        d = self.den.evaluate(q, M)
        if d == 0:
            raise ZeroDivisionError("denominator vanishes at the point")
        return [n.evaluate(q, M) / d for n in self.nums]

    # text forms

    def __str__(self):
        if self.is_zero():
            return "0"
        out = []
        for j in range(self.order, -1, -1):
            if self.nums[j].is_zero():
                continue
            c = self.coeff(j)
            Lp = "" if j == 0 else ("L" if j == 1 else f"L^{j}")
            if c.is_poly() and c.num.is_monomial():
                (e2, m), k = c.num.lead()
                sign, body = format_monomial_term(k, e2, m)
                if Lp:
                    body = Lp if body == "1" else f"{body}*{Lp}"
            else:
                sign = "+"
                if c.is_poly():
                    body = f"({format_poly(c.num)})"
                else:
                    body = f"({format_poly(c.num)})*({format_poly(c.den)})^-1"
                if Lp:
                    body += f"*{Lp}"
            if not out:
                out.append(("-" if sign == "-" else "") + body)
            else:
                out.append(f" {sign} {body}")
        return "".join(out)

    def __repr__(self):
        return f"{type(self).__name__}({str(self)!r})"

    def to_json(self) -> dict:
        return {"op": [[j, str(self.coeff(j))] for j in range(len(self.nums)) if not self.nums[j].is_zero()]}

    @classmethod
    def from_json(cls, obj) -> "_LPoly":
        if isinstance(obj, str):
            obj = json.loads(obj)
        if not isinstance(obj, dict) or "op" not in obj:
            raise ValueError("operator JSON must be an object with key 'op'")
        parts: Dict[int, RatFunc] = {}
        for item in obj["op"]:
            j, text = item
            c = parse(text, "poly")
            parts[int(j)] = parts.get(int(j), RatFunc(0)) + RatFunc.coerce(c)
        n = max(parts) + 1 if parts else 0
        return cls([parts.get(j, RatFunc(0)) for j in range(n)])

    @classmethod
    def parse(cls, text: str) -> "_LPoly":
        text = text.strip()
        if text.startswith("{"):
            return cls.from_json(text)
        kind = "commutative" if cls._twist == 0 else "operator"
        return parse(text, kind)

    def __reduce__(self):
        return (type(self)._make, (list(self.nums), self.den))


class OreOperator(_LPoly):
    """``sum a_j(q, M) L^j`` acting by ``(L f)_n = f_{n+1}``, ``(M f)_n = q^n f_n``."""

    _twist = 1
    __slots__ = ()


class CommPoly(_LPoly):
    """Commutative polynomial in L with coefficients in ``Q(q, M)``."""

    _twist = 0
    __slots__ = ()

    def as_operator(self) -> OreOperator:
        return OreOperator._make(list(self.nums), self.den)


L = OreOperator([0, 1])


def operator(x) -> OreOperator:
    if isinstance(x, OreOperator):
        return x
    if isinstance(x, str):
        return OreOperator.parse(x)
    return OreOperator([x])


# module-level operations


def op_mul(Q: OreOperator, R: OreOperator) -> OreOperator:
    return Q.mul(R)


def op_divmod_right(P: OreOperator, R: OreOperator):
    return P.divmod_right(R)


def normalize(P):
    return P.normalize()


def is_palindromic(P: OreOperator) -> Optional[Tuple[int, object]]:
    """Palindromy witnesses ``(a mod 2, b)`` or None.

    After normalization write ``P = sum p_{i,j}(q) M^i L^j``. ``P`` is
    palindromic when ``p_{i,j} = (-1)^a q^(b(i - m/2)) p_{m-i, l-j}`` for all
    ``i, j``, with ``m`` the M-degree span and ``l = deg_L + ldeg_L``. When no
    term has ``i != m/2`` the value of ``b`` is free and 0 is reported.
    """
    N = P.normalize()
    nums = N.nums
    ell = N.order + N.ldeg_L()
    m = max(n.deg_M() for n in nums if n)
    table: Dict[Tuple[int, int], LaurentPoly] = {}
    for j, n in enumerate(nums):
        for i, c in n.by_M().items():
            table[(i, j)] = c
    # b from the q-degrees of one pair with 2i != m
    b = 0
    for (i, j), c in table.items():
        if 2 * i != m:
            partner = table.get((m - i, ell - j))
            if partner is None:
                return None
            num = c.lead()[0][0] - partner.lead()[0][0]
            if num % (2 * i - m):
                return None
            b = num // (2 * i - m)
            break
    for a in (0, 1):
        sgn = -1 if a else 1
        ok = True
        for (i, j), c in table.items():
            partner = table.get((m - i, ell - j))
            if partner is None:
                ok = False
                break
            # exponent b*(i - m/2) doubled: b*(2i - m)
            if c != partner._shift_raw(b * (2 * i - m), 0) * sgn:
                ok = False
                break
        if ok:
            return a, b
    return None


def homogenize(rec: "InhomRecurrence") -> OreOperator:
    """Annihilator ``(L - 1) * b^-1 * P`` of all solutions of ``P f = b``, normalized."""
    b = RatFunc.coerce(rec.b)
    if b.is_zero():
        raise ZeroRHS("right-hand side is zero")
    X = rec.P.lmul(b.inverse())
    return (OreOperator([-1, 1]) * X).normalize()


def apply_to_sequence(P: OreOperator, f: Callable[[int], LaurentPoly], n: int):
    """``sum_j a_j(q, q^n) f(n + j)``.

    Returns a LaurentPoly in q when the shared denominator divides exactly,
    otherwise a RatFunc.
    """
    den = P.den.at_M_qpow(n) if P.den != _ONE else _ONE
    if den.is_zero():
        raise CoefficientPole(f"coefficient denominator vanishes at M = q^{n}")
    total = LaurentPoly()
    for j, a in enumerate(P.nums):
        if a.is_zero():
            continue
        total = total + a.at_M_qpow(n) * LaurentPoly.coerce(f(n + j))
    if den == _ONE:
        return total
    qt = exact_quotient(total, den)
    return qt if qt is not None else RatFunc(total, den)


def specialize_q1(P: OreOperator) -> CommPoly:
    return P.at_q1()


@dataclass(frozen=True)
class InhomRecurrence:
    """The equation ``P f = b``."""

    P: OreOperator
    b: RatFunc

    @classmethod
    def from_json(cls, obj) -> "InhomRecurrence":
        if isinstance(obj, str):
            obj = json.loads(obj)
        P = obj["P"]
        P = OreOperator.from_json(P) if isinstance(P, dict) else OreOperator.parse(P)
        b = RatFunc.coerce(parse(obj["b"], "poly"))
        return cls(P, b)

    def to_json(self) -> dict:
        return {"P": self.P.to_json(), "b": str(self.b)}

    def residual(self, f: Callable[[int], LaurentPoly], n: int):
        """``(P f)_n - b(q, q^n)``."""
        lhs = apply_to_sequence(self.P, f, n)
        rhs = self.b.at_M_qpow(n)
        return RatFunc.coerce(lhs) - RatFunc.coerce(rhs)
