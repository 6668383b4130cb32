"""Parser for the plain-text expression grammar.

::

    expr   := ['-'] term (('+'|'-') term)*
    term   := factor ('*' factor)*
    factor := atom ('^' exp)?
    exp    := sint | '(' sint ')' | '(' sint '/' '2' ')'
    atom   := uint ('/' uint)? | 'q' | 'M' | 'L' | '(' expr ')'

The leading minus and the parenthesised exponents are extensions used by the
printer (half-integer powers of q only ever appear as ``q^(k/2)``).
"""

from __future__ import annotations

import re
from fractions import Fraction
from typing import Dict, List, Tuple, Union

from .laurent import LaurentPoly, double_exp
from .ratfunc import RatFunc


class ParseError(ValueError):
    """Malformed input; ``pos`` is the 0-based character offset."""

    def __init__(self, msg: str, pos: int = -1, text: str = ""):
        self.pos = pos
        self.text = text
        where = f" at position {pos}" if pos >= 0 else ""
        super().__init__(f"{msg}{where}")


class NonNormalOrder(ParseError):
    """A q or M factor stands to the right of L inside an operator term."""


_TOKEN = re.compile(r"\s*(?:(\d+)|([qML])|(\*\*|[-+*/^()]))")

Coef = Union[LaurentPoly, RatFunc]


class _Val:
    """Sum of ``coeff * L^j`` built during parsing."""

    __slots__ = ("parts",)

    def __init__(self, parts: Dict[int, Coef]):
        self.parts = {j: c for j, c in parts.items() if not c.is_zero()}

    @classmethod
    def coef(cls, c: Coef) -> "_Val":
        return cls({0: c})

    def has_L(self) -> bool:
        return any(j for j in self.parts)

    def has_vars(self) -> bool:
        for c in self.parts.values():
            if isinstance(c, RatFunc):
                if not (c.is_poly() and c.num.is_const()):
                    return True
            elif not c.is_const():
                return True
        return False

    def add(self, other: "_Val", sign: int) -> "_Val":
        out = dict(self.parts)
        for j, c in other.parts.items():
            if sign < 0:
                c = -c
            out[j] = out[j] + c if j in out else c
        return _Val(out)

    def mul(self, other: "_Val") -> "_Val":
        out: Dict[int, Coef] = {}
        for i, a in self.parts.items():
            for j, b in other.parts.items():
                p = a * b
                out[i + j] = out[i + j] + p if i + j in out else p
        return _Val(out)


def _simplify(c: Coef) -> Coef:
    if isinstance(c, RatFunc) and c.is_poly():
        return c.num
    return c


class _Parser:
    def __init__(self, text: str, commutative: bool):
        self.text = text
        self.commutative = commutative
        self.toks: List[Tuple[str, str, int]] = []
        pos = 0
        n = len(text)
        while pos < n:
            if text[pos].isspace():
                pos += 1
                continue
            m = _TOKEN.match(text, pos)
            if not m or m.end() == pos:
                raise ParseError(f"unexpected character {text[pos]!r}", pos, text)
            start = m.start(m.lastindex)
            if m.group(1) is not None:
                self.toks.append(("num", m.group(1), start))
            elif m.group(2) is not None:
                self.toks.append(("var", m.group(2), start))
            else:
                op = m.group(3)
                if op == "**":
                    op = "^"
                self.toks.append(("op", op, start))
            pos = m.end()
        self.i = 0

    def peek(self):
        return self.toks[self.i] if self.i < len(self.toks) else ("end", "", len(self.text))

    def take(self):
        t = self.peek()
        self.i += 1
        return t

    def expect(self, val):
        t = self.take()
        if t[1] != val or t[0] == "end":
            raise ParseError(f"expected {val!r}", t[2], self.text)
        return t

    def parse(self) -> _Val:
        if not self.toks:
            raise ParseError("empty expression", 0, self.text)
        v = self.expr()
        t = self.peek()
        if t[0] != "end":
            raise ParseError(f"unexpected token {t[1]!r}", t[2], self.text)
        return v

    def expr(self) -> _Val:
        neg = False
        if self.peek()[1] == "-" and self.peek()[0] == "op":
            self.take()
            neg = True
        v = self.term()
        if neg:
            v = _Val.coef(LaurentPoly.const(0)).add(v, -1)
        while self.peek()[0] == "op" and self.peek()[1] in "+-":
            op = self.take()[1]
            w = self.term()
            v = v.add(w, 1 if op == "+" else -1)
        return v

    def term(self) -> _Val:
        v = self.factor()
        while self.peek()[0] == "op" and self.peek()[1] == "*":
            self.take()
            pos = self.peek()[2]
            w = self.factor()
            if not self.commutative and v.has_L() and w.has_vars():
                raise NonNormalOrder("q or M to the right of L", pos, self.text)
            v = v.mul(w)
        return v

    def exponent(self):
        t = self.take()
        if t[0] == "op" and t[1] == "(":
            e = self._sint()
            if self.peek()[1] == "/":
                self.take()
                d = self.take()
                if d[0] != "num":
                    raise ParseError("expected denominator", d[2], self.text)
                e = Fraction(e, int(d[1]))
            self.expect(")")
            return e
        self.i -= 1
        return self._sint()

    def _sint(self) -> int:
        t = self.take()
        sign = 1
        if t[0] == "op" and t[1] == "-":
            sign = -1
            t = self.take()
        if t[0] != "num":
            raise ParseError("expected integer exponent", t[2], self.text)
        return sign * int(t[1])

    def factor(self) -> _Val:
        start = self.peek()[2]
        base, atom_kind = self.atom()
        if self.peek()[0] == "op" and self.peek()[1] == "^":
            self.take()
            epos = self.peek()[2]
            e = self.exponent()
            return self.power(base, e, atom_kind, epos)
        return base

    def power(self, base: _Val, e, atom_kind: str, pos: int) -> _Val:
        if isinstance(e, Fraction) and e.denominator != 1:
            if atom_kind != "q":
                raise ParseError("fractional exponent only allowed on q", pos, self.text)
            return _Val.coef(LaurentPoly.monomial(1, q=e))
        e = int(e)
        if base.has_L():
            if e < 0:
                raise ParseError("negative power of an operator", pos, self.text)
            if e >= 2 and base.has_vars() and not self.commutative:
                raise NonNormalOrder("power of an operator with q or M coefficients", pos, self.text)
            out = _Val.coef(LaurentPoly.const(1))
            for _ in range(e):
                out = out.mul(base)
            return out
        c = base.parts.get(0, LaurentPoly())
        if isinstance(c, LaurentPoly):
            if e >= 0 or c.is_monomial():
                return _Val.coef(c ** e)
            if c.is_zero():
                raise ParseError("zero to a negative power", pos, self.text)
            return _Val.coef(_simplify(RatFunc(1, c ** (-e))))
        return _Val.coef(_simplify(c ** e))

    def atom(self):
        t = self.take()
        kind, val, pos = t
        if kind == "num":
            n = int(val)
            if self.peek()[0] == "op" and self.peek()[1] == "/" and self._next_is_num():
                self.take()
                d = int(self.take()[1])
                if d == 0:
                    raise ParseError("zero denominator", pos, self.text)
                return _Val.coef(LaurentPoly.const(Fraction(n, d))), "num"
            return _Val.coef(LaurentPoly.const(n)), "num"
        if kind == "var":
            if val == "q":
                return _Val.coef(LaurentPoly.monomial(1, q=1)), "q"
            if val == "M":
                return _Val.coef(LaurentPoly.monomial(1, M=1)), "M"
            return _Val({1: LaurentPoly.const(1)}), "L"
        if kind == "op" and val == "(":
            v = self.expr()
            self.expect(")")
            return v, "paren"
        if kind == "end":
            raise ParseError("unexpected end of input", pos, self.text)
        raise ParseError(f"unexpected token {val!r}", pos, self.text)

    def _next_is_num(self):
        j = self.i + 1
        return j < len(self.toks) and self.toks[j][0] == "num"


def parse_value(text: str, commutative: bool = False) -> Dict[int, Coef]:
    """Parse ``text`` into a map ``L-exponent -> coefficient``."""
    v = _Parser(text, commutative).parse()
    return {j: _simplify(c) for j, c in v.parts.items()}


def parse(text: str, kind: str = "auto"):
    """Parse an expression.

    ``kind`` is ``"auto"`` (Laurent polynomial, rational function or
    operator, whichever fits), ``"poly"`` (no L allowed), ``"operator"``
    (always an OreOperator) or ``"commutative"`` (a polynomial in L over
    Q(M) where factor order does not matter).
    """
    commutative = kind == "commutative"
    parts = parse_value(text, commutative)
    has_L = any(j for j in parts)
    if kind == "poly" or (kind == "auto" and not has_L):
        if has_L:
            raise ParseError("operator where a coefficient was expected", 0, text)
        return parts.get(0, LaurentPoly())
    from ..qweyl import CommPoly, OreOperator

    n = max(parts) + 1 if parts else 1
    coeffs = [parts.get(j, LaurentPoly()) for j in range(n)]
    if commutative:
        return CommPoly(coeffs)
    return OreOperator(coeffs)


def parse_poly(text: str) -> LaurentPoly:
    """Parse a coefficient expression that must be a Laurent polynomial."""
    v = parse(text, "poly")
    if isinstance(v, RatFunc):
        raise ParseError("expected a Laurent polynomial, got a rational function", 0, text)
    return v
