"""Adams operations ``psi_k`` on polynomials in L with constant term 1.

``psi_k`` sends ``prod (1 + x_i L)`` to ``prod_{|S| = k} (1 + x_S L)``. Its
L-coefficients are the plethysms ``e_i o e_k``, computed here by direct
expansion over k-subsets followed by conversion to the elementary basis.
"""

from __future__ import annotations

import re
from functools import lru_cache
from itertools import combinations
from math import comb
from typing import Dict, List, Sequence, Tuple

import flint

from .algebra import LaurentPoly, RatFunc
from .qweyl import CommPoly


class ConstantTermNotOne(ValueError):
    pass


Mono = Tuple[int, ...]  # sorted e-indices with repetition, e.g. (1, 1, 3) = e1^2 e3


class SymPoly:
    """Integer combination of monomials in ``e_1 .. e_d``."""

    __slots__ = ("terms",)

    def __init__(self, terms: Dict[Mono, int] | None = None):
        self.terms = {tuple(sorted(m)): int(c) for m, c in (terms or {}).items() if c}

    @classmethod
    def e(cls, i: int) -> "SymPoly":
        return cls({(i,) if i else (): 1})

    def __eq__(self, other):
        if isinstance(other, SymPoly):
            return self.terms == other.terms
        return NotImplemented

    def __hash__(self):
        return hash(frozenset(self.terms.items()))

    def __add__(self, other: "SymPoly") -> "SymPoly":
        out = dict(self.terms)
        for m, c in other.terms.items():
            out[m] = out.get(m, 0) + c
        return SymPoly(out)

    def __neg__(self):
        return SymPoly({m: -c for m, c in self.terms.items()})

    def __sub__(self, other):
        return self + (-other)

    def __mul__(self, other: "SymPoly") -> "SymPoly":
        out: Dict[Mono, int] = {}
        for m1, c1 in self.terms.items():
            for m2, c2 in other.terms.items():
                m = tuple(sorted(m1 + m2))
                out[m] = out.get(m, 0) + c1 * c2
        return SymPoly(out)

    def degree(self) -> int:
        """Weighted degree, ``e_i`` having weight ``i``."""
        return max((sum(m) for m in self.terms), default=0)

    def substitute(self, values: Sequence) -> object:
        """Evaluate with ``e_i = values[i]`` (``values[0]`` is ignored)."""
        total = None
        for m, c in sorted(self.terms.items()):
            t = c
            for i in m:
                t = values[i] * t
            total = t if total is None else total + t
        return 0 if total is None else total

    def __str__(self):
        if not self.terms:
            return "0"
        parts = []
        for m, c in sorted(self.terms.items(), key=lambda mc: (len(mc[0]), mc[0])):
            body = _fmt_mono(m)
            if body == "1":
                s = str(abs(c))
            elif abs(c) == 1:
                s = body
            else:
                s = f"{abs(c)}*{body}"
            sign = "-" if c < 0 else "+"
            parts.append((sign, s))
        out = ("-" if parts[0][0] == "-" else "") + parts[0][1]
        for sign, s in parts[1:]:
            out += f" {sign} {s}"
        return out

    def __repr__(self):
        return f"SymPoly({str(self)!r})"

    @classmethod
    def parse(cls, text: str) -> "SymPoly":
        """Read sums of products like ``-2e_2e_4+e_3^2`` or ``2*e2*e4 - e1^2*e5``."""
        s = text.replace(" ", "").replace("*", "").replace("_", "")
        if not s:
            raise ValueError("empty symmetric polynomial")
        if s[0] not in "+-":
            s = "+" + s
        out: Dict[Mono, int] = {}
        for sign, coef, body in re.findall(r"([+-])(\d*)((?:e\d(?:\^\d+)?)*)", s):
            if not coef and not body:
                raise ValueError(f"cannot parse {text!r}")
            m: List[int] = []
            for i, p in re.findall(r"e(\d)(?:\^(\d+))?", body):
                m.extend([int(i)] * int(p or 1))
            c = int(coef or 1) * (-1 if sign == "-" else 1)
            key = tuple(sorted(m))
            out[key] = out.get(key, 0) + c
        return cls(out)


def _fmt_mono(m: Mono) -> str:
    if not m:
        return "1"
    parts = []
    for i in sorted(set(m)):
        p = m.count(i)
        parts.append(f"e{i}" if p == 1 else f"e{i}^{p}")
    return "*".join(parts)


# expansion in the roots


@lru_cache(maxsize=None)
def _ring(d: int):
    names = tuple(f"x{i}" for i in range(1, d + 1)) + ("L",)
    return flint.fmpz_mpoly_ctx.get(names, "lex")


@lru_cache(maxsize=None)
def _elementary(d: int) -> Tuple:
    ctx = _ring(d)
    xs = ctx.gens()[:d]
    es = [ctx.from_dict({(0,) * (d + 1): 1})]
    for i in range(1, d + 1):
        e = ctx.from_dict({})
        for S in combinations(range(d), i):
            t = xs[S[0]]
            for s in S[1:]:
                t = t * xs[s]
            e = e + t
        es.append(e)
    return tuple(es)


def _expand_mono(d: int, m: Mono, cache: Dict[Mono, object]):
    if m in cache:
        return cache[m]
    es = _elementary(d)
    if not m:
        v = es[0]
    else:
        v = _expand_mono(d, m[:-1], cache) * es[m[-1]]
    cache[m] = v
    return v


def to_e_basis(f, d: int) -> SymPoly:
    """Write a symmetric polynomial in ``x_1..x_d`` (L-free) in the e-basis."""
    cache: Dict[Mono, object] = {}
    out: Dict[Mono, int] = {}
    rest = f
    while not rest.is_zero():
        exps = rest.monoms()[0]
        c = int(rest.coeffs()[0])
        a = list(exps[:d]) + [0]
        if any(a[i] < a[i + 1] for i in range(d)):
            raise ValueError("input is not symmetric")
        m: List[int] = []
        for i in range(d):
            m.extend([i + 1] * (a[i] - a[i + 1]))
        m_t = tuple(m)
        out[m_t] = out.get(m_t, 0) + c
        rest = rest - _expand_mono(d, m_t, cache) * c
    return SymPoly(out)


def from_e_basis(s: SymPoly, d: int):
    cache: Dict[Mono, object] = {}
    f = _ring(d).from_dict({})
    for m, c in s.terms.items():
        f = f + _expand_mono(d, m, cache) * c
    return f


@lru_cache(maxsize=None)
def psi_table(d: int, k: int) -> Tuple[SymPoly, ...]:
    """Coefficients of ``L^0 .. L^C(d,k)`` in ``psi_k(1 + e_1 L + ... + e_d L^d)``."""
    if not 1 <= k <= d:
        raise ValueError("need 1 <= k <= d")
    ctx = _ring(d)
    gens = ctx.gens()
    xs, L = gens[:d], gens[d]
    one = ctx.from_dict({(0,) * (d + 1): 1})
    prod = one
    for S in combinations(range(d), k):
        t = L
        for s in S:
            t = t * xs[s]
        prod = prod * (one + t)
    cols: Dict[int, Dict[Tuple[int, ...], int]] = {}
    for exps, c in zip(prod.monoms(), prod.coeffs()):
        cols.setdefault(exps[d], {})[tuple(exps[:d]) + (0,)] = int(c)
    out = []
    for i in range(comb(d, k) + 1):
        out.append(to_e_basis(ctx.from_dict(cols.get(i, {})), d))
    return tuple(out)


def plethysm_ee(i: int, k: int, d: int) -> SymPoly:
    """``e_i o e_k`` in ``d`` variables."""
    if not 0 <= i <= comb(d, k):
        raise ValueError("i out of range")
    return psi_table(d, k)[i]


# application to polynomials in L


def apply_psi(p: CommPoly, k: int) -> CommPoly:
    """``psi_k(p)`` for ``p`` with constant term 1."""
    if p.is_zero() or p.coeff(0) != RatFunc(1):
        raise ConstantTermNotOne("psi_k needs constant term 1")
    d = p.order
    table = psi_table(d, k)
    vals = [p.coeff(i) for i in range(d + 1)]
    return CommPoly([RatFunc.coerce(t.substitute(vals)) for t in table])


def reverse(p: CommPoly) -> CommPoly:
    """``L^d p(1/L)`` scaled to constant term 1; the roots get inverted."""
    if p.coeff(0).is_zero():
        raise ConstantTermNotOne("reversal needs a nonzero constant term")
    d = p.order
    lc = p.lead()
    return CommPoly([p.coeff(d - i) / lc for i in range(d + 1)])


def negate_L(p: CommPoly) -> CommPoly:
    return CommPoly([c if i % 2 == 0 else -c for i, c in enumerate(p.coeffs)])


def monic(p: CommPoly) -> CommPoly:
    lc = p.lead()
    return CommPoly([c / lc for c in p.coeffs])


def wedge_q1(p: CommPoly, k: int) -> CommPoly:
    """Monic polynomial whose roots are the products of ``k`` distinct roots of ``p``.

    ``psi_k`` is stated for ``prod (1 + x_i L)``; feeding it ``reverse(p)(-L)``
    makes ``x_i`` the roots of ``p`` themselves, and reversing back with
    ``L -> -L`` undoes the sign on the product roots.
    """
    pt = negate_L(reverse(p))
    r = apply_psi(pt, k)
    return monic(negate_L(reverse(r)))
