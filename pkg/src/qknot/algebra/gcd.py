"""Polynomial gcd, exact division and conversion to FLINT.

The default gcd goes through FLINT's multivariate gcd. A pure Python
subresultant PRS in ``M`` over ``Z[t]`` (``t = q^(1/2)``) is kept as an
independent route and is used to cross-check the fast one.
"""

from __future__ import annotations

from fractions import Fraction
from math import gcd as igcd, lcm as ilcm
from typing import List, Optional, Tuple

import flint

from .laurent import LaurentPoly

CTX = flint.fmpz_mpoly_ctx.get(("t", "M"), "lex")
T_GEN, M_GEN = CTX.gens()


# conversion


def to_flint(p: LaurentPoly) -> Tuple[flint.fmpz_mpoly, Tuple[int, int], Fraction]:
    """Write ``p = scale * t^e2 * M^m * f`` with ``f`` an integer polynomial.

    Returns ``(f, (e2, m), scale)``; ``f`` has no monomial content.
    """
    e2, m = p.monomial_content()
    den = 1
    for c in p.raw.values():
        if type(c) is not int:
            den = ilcm(den, c.denominator)
    d = {}
    for (a, b), c in p.raw.items():
        d[(a - e2, b - m)] = int(c * den) if den != 1 else c
    return CTX.from_dict(d), (e2, m), Fraction(1, den)


def poly_to_flint(p: LaurentPoly) -> flint.fmpz_mpoly:
    """Integer polynomial ``p`` (nonnegative exponents, integer coefficients)."""
    return CTX.from_dict({k: int(c) for k, c in p.raw.items()})


def from_flint(f, shift=(0, 0), scale=1) -> LaurentPoly:
    e2, m = shift
    t = {}
    for (a, b), c in f.to_dict().items():
        v = int(c)
        if scale != 1:
            v = Fraction(v) * scale
            if v.denominator == 1:
                v = v.numerator
        t[(int(a) + e2, int(b) + m)] = v
    return LaurentPoly._from_raw(t)


def _canon_flint(f):
    """Primitive associate with positive lex-leading coefficient."""
    if f.is_zero():
        return f
    c, g = f.primitive()
    if int(g.leading_coefficient()) < 0:
        g = -g
    return g


# gcd


def poly_gcd(a: LaurentPoly, b: LaurentPoly, method: str = "flint") -> LaurentPoly:
    """Gcd of the polynomial parts of ``a`` and ``b``.

    Monomial content is ignored; the result is a primitive integer
    polynomial with positive leading coefficient in the (q, M) lex order.
    """
    if a.is_zero() and b.is_zero():
        raise ValueError("gcd of two zero polynomials")
    if a.is_zero():
        return b.canonical()
    if b.is_zero():
        return a.canonical()
    if method == "prs":
        return prs_gcd(a, b)
    fa = to_flint(a)[0]
    fb = to_flint(b)[0]
    return from_flint(_canon_flint(fa.gcd(fb)))


def exact_quotient(a: LaurentPoly, b: LaurentPoly) -> Optional[LaurentPoly]:
    """``a / b`` if it is a Laurent polynomial, else None."""
    if b.is_zero():
        raise ZeroDivisionError("division by the zero polynomial")
    if a.is_zero():
        return a
    fa, sa, ca = to_flint(a)
    fb, sb, cb = to_flint(b)
    ka, pa = fa.primitive()
    kb, pb = fb.primitive()
    try:
        qf = pa / pb
    except Exception:
        return None
    scale = ca * int(ka) / (cb * int(kb))
    return from_flint(qf, (sa[0] - sb[0], sa[1] - sb[1]), scale)


def reduce_fraction(num: LaurentPoly, den: LaurentPoly) -> Tuple[LaurentPoly, LaurentPoly]:
    """Cancel the polynomial gcd of ``num`` and ``den``.

    ``den`` comes back as a primitive polynomial with positive leading
    coefficient; all units are moved into the numerator.
    """
    if den.is_zero():
        raise ZeroDivisionError("zero denominator")
    if num.is_zero():
        return num, LaurentPoly.const(1)
    fd, sd, cd = to_flint(den)
    kd, pd = fd.primitive()
    if int(pd.leading_coefficient()) < 0:
        pd = -pd
        kd = -kd
    # den = cd * kd * mono(sd) * pd
    unit = cd * int(kd)
    fn, sn, cn = to_flint(num)
    if pd.is_one():
        return num._shift_raw(-sd[0], -sd[1]) * (1 / unit), LaurentPoly.const(1)
    g = fn.gcd(pd)
    if not g.is_one():
        if int(g.leading_coefficient()) < 0:
            g = -g
        fn = fn / g
        pd = pd / g
    n = from_flint(fn, (sn[0] - sd[0], sn[1] - sd[1]), cn / unit)
    return n, from_flint(pd)


def factor_poly(p: LaurentPoly):
    """Irreducible factorization over Q of the polynomial part of ``p``.

    Returns ``(unit, [(factor, multiplicity), ...])`` with ``p`` equal to
    ``unit`` times the product; ``unit`` is a rational times a monomial and
    every factor is primitive with positive leading coefficient.
    """
    f, shift, scale = to_flint(p)
    c, facs = f.factor()
    unit = LaurentPoly.monomial(1)._shift_raw(*shift) * (Fraction(int(c)) * scale)
    out = []
    for g, e in facs:
        g = flint.fmpz_mpoly(g) if not isinstance(g, flint.fmpz_mpoly) else g
        if int(g.leading_coefficient()) < 0:
            g = -g
            if e % 2:
                unit = -unit
        out.append((from_flint(g), int(e)))
    return unit, out


# pure Python route: dense univariate Z[t] helpers (lists, low degree first)


def _trim(a: List[int]) -> List[int]:
    while a and a[-1] == 0:
        a.pop()
    return a


def _u_mul(a, b):
    if not a or not b:
        return []
    r = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                r[i + j] += x * y
    return r


def _u_sub(a, b):
    n = max(len(a), len(b))
    r = [(a[i] if i < len(a) else 0) - (b[i] if i < len(b) else 0) for i in range(n)]
    return _trim(r)


def _u_scale(a, c):
    return [x * c for x in a] if c else []


def _u_divexact(a, b):
    """Exact division in Z[t]."""
    a = list(a)
    db = len(b) - 1
    if len(a) - 1 < db:
        if any(a):
            raise ArithmeticError("inexact division")
        return []
    qt = [0] * (len(a) - db)
    lb = b[-1]
    for i in range(len(a) - 1, db - 1, -1):
        c = a[i]
        if c:
            qq, r = divmod(c, lb)
            if r:
                raise ArithmeticError("inexact division")
            qt[i - db] = qq
            for j in range(db + 1):
                a[i - db + j] -= qq * b[j]
    if any(a):
        raise ArithmeticError("inexact division")
    return _trim(qt)


def _u_content(a) -> int:
    g = 0
    for x in a:
        g = igcd(g, x)
    return g


def _u_prim(a):
    g = _u_content(a)
    if g == 0:
        return []
    if a[-1] < 0:
        g = -g
    return [x // g for x in a]


def _u_prem(a, b):
    """Pseudo-remainder of a by b in Z[t]."""
    a = list(a)
    db = len(b) - 1
    lb = b[-1]
    while len(a) - 1 >= db and a:
        c = a[-1]
        sh = len(a) - 1 - db
        a = [x * lb for x in a]
        for j in range(db + 1):
            a[sh + j] -= c * b[j]
        _trim(a)
    return a


def _u_gcd(a, b):
    a, b = _trim(list(a)), _trim(list(b))
    if not a:
        return _u_prim(b) if b else []
    if not b:
        return _u_prim(a)
    g = igcd(_u_content(a), _u_content(b))
    a, b = _u_prim(a), _u_prim(b)
    if len(a) < len(b):
        a, b = b, a
    while b:
        r = _u_prem(a, b)
        a, b = b, _u_prim(r) if r else []
    return [x * g for x in _u_prim(a)]


# bivariate polynomials as lists over M of Z[t] lists


def _to_dense(p: LaurentPoly) -> Tuple[List[List[int]], Fraction]:
    f, _, scale = to_flint(p)
    rows: dict = {}
    for (a, b), c in f.to_dict().items():
        rows.setdefault(b, {})[a] = int(c)
    dm = max(rows)
    out = []
    for m in range(dm + 1):
        r = rows.get(m, {})
        out.append(_trim([r.get(i, 0) for i in range(max(r) + 1)]) if r else [])
    return out, scale


def _b_prem(A, B):
    A = [list(x) for x in A]
    db = len(B) - 1
    lb = B[-1]
    while len(A) - 1 >= db and A:
        c = A[-1]
        sh = len(A) - 1 - db
        A = [_u_mul(x, lb) for x in A]
        for j in range(db + 1):
            A[sh + j] = _u_sub(A[sh + j], _u_mul(c, B[j]))
        while A and not A[-1]:
            A.pop()
    return A


def _b_content(A):
    g: List[int] = []
    for x in A:
        g = _u_gcd(g, x)
        if len(g) == 1 and abs(g[0]) == 1:
            break
    return g


def prs_gcd(a: LaurentPoly, b: LaurentPoly) -> LaurentPoly:
    """Gcd by the subresultant polynomial remainder sequence in M."""
    A, _ = _to_dense(a)
    B, _ = _to_dense(b)
    if len(A) < len(B):
        A, B = B, A
    ca, cb = _b_content(A), _b_content(B)
    c = _u_gcd(ca, cb)
    A = [_u_divexact(x, ca) for x in A]
    B = [_u_divexact(x, cb) for x in B]
    g: List[int] = [1]
    h: List[int] = [1]
    while True:
        delta = len(A) - len(B)
        R = _b_prem(A, B)
        if not R:
            break
        if len(R) == 1:
            B = [[1]]
            break
        A = B
        div = _u_mul(g, _u_pow(h, delta))
        B = [_u_divexact(x, div) for x in R]
        g = A[-1]
        if delta == 0:
            pass
        elif delta == 1:
            h = g
        else:
            h = _u_divexact(_u_pow(g, delta), _u_pow(h, delta - 1))
    cB = _b_content(B)
    B = [_u_mul(_u_divexact(x, cB), c) for x in B]
    t = {}
    for m, row in enumerate(B):
        for i, v in enumerate(row):
            if v:
                t[(i, m)] = v
    return LaurentPoly._from_raw(t).primitive()


def _u_pow(a, n):
    r = [1]
    for _ in range(n):
        r = _u_mul(r, a)
    return r
