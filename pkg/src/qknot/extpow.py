"""Exterior powers and associated operators of q-difference operators.

For solutions ``f^(1) .. f^(k)`` of ``P f = 0`` with ``d = deg_L P`` write
``det_S(n)`` for the determinant whose rows are the shifts ``n + s``,
``s`` in a k-subset ``S`` of ``{0 .. d-1}``. Shifting ``det_S`` and reducing
the row ``n + d`` with ``P`` gives a linear map on the span of the
``det_S``. Iterating it with the twist ``M -> q M`` and looking for the first
linear dependency gives the minimal annihilator of any fixed combination,
in particular of the Casoratian ``det_{0..k-1}``.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field
from fractions import Fraction
from itertools import combinations
from math import comb
from typing import Dict, Iterable, List, Optional, Sequence, Set, Tuple

import flint

from .algebra import LaurentPoly, RatFunc
from .algebra.gcd import CTX, from_flint
from .algebra.linalg import PRIME, check_kernel, modular_rank, nullspace, random_point
from .newton import FactorizationCertificate, subset_sums
from .qweyl import OreOperator

DEFAULT_BUDGET = 200_000

_T, _M = CTX.gens()
_ZERO = CTX.from_dict({})
_ONE = CTX.from_dict({(0, 0): 1})


class BudgetExceeded(RuntimeError):
    """The running state grew past the configured term budget."""

    def __init__(self, terms: int, budget: int, step: int):
        super().__init__(f"term budget {budget} exceeded at step {step} ({terms} terms)")
        self.terms = terms
        self.budget = budget
        self.step = step


@dataclass
class WedgeState:
    """Combination ``sum_S vector[S] * det_S`` of wedge basis elements."""

    basis: List[Tuple[int, ...]]
    vector: Dict[Tuple[int, ...], RatFunc] = field(default_factory=dict)

    @classmethod
    def unit(cls, d: int, rows: Tuple[int, ...]) -> "WedgeState":
        k = len(rows)
        basis = list(combinations(range(d), k))
        if tuple(sorted(rows)) not in basis:
            raise ValueError(f"rows {rows} are not a {k}-subset of 0..{d - 1}")
        return cls(basis, {tuple(sorted(rows)): RatFunc(1)})


@dataclass
class ShiftMatrix:
    """Row ``S`` expresses ``det_S(n+1)`` in the basis ``det_T(n)``.

    Entries are ``numer[S][T] / den`` with ``den = a_d``. Before a state is
    multiplied by the matrix its coefficients are twisted by ``M -> q M``.
    """

    basis: List[Tuple[int, ...]]
    numer: Dict[Tuple[int, ...], Dict[Tuple[int, ...], LaurentPoly]]
    den: LaurentPoly
    twist: int = 1

    def entry(self, S, T) -> RatFunc:
        n = self.numer.get(S, {}).get(T)
        return RatFunc(0) if n is None else RatFunc(n, self.den)

    def apply(self, state: WedgeState) -> WedgeState:
        out: Dict[Tuple[int, ...], RatFunc] = {}
        for S, c in state.vector.items():
            c = c.shift_M(self.twist)
            for T, e in self.numer.get(S, {}).items():
                out[T] = out.get(T, RatFunc(0)) + c * RatFunc(e, self.den)
        return WedgeState(self.basis, {T: v for T, v in out.items() if not v.is_zero()})


# preparation


def _poly_coeffs(P: OreOperator) -> List[flint.fmpz_mpoly]:
    """Integer polynomial coefficients of a normalized multiple of ``P``."""
    N = P.normalize()
    nums = N.nums
    e2 = min(n.monomial_content()[0] for n in nums if n)
    m = min(n.monomial_content()[1] for n in nums if n)
    out = []
    for n in nums:
        d = {(a - e2, b - m): int(c) for (a, b), c in n.raw.items()}
        out.append(CTX.from_dict(d))
    return out


def _sigma(f):
    if f.is_zero() or f.degrees()[1] == 0:
        return f
    return f.compose(_T, _T * _T * _M)


def _shift_rows(a: List, k: int):
    """Fraction-free shift matrix ``a_d * N`` over the k-subsets of ``0..d-1``."""
    d = len(a) - 1
    basis = list(combinations(range(d), k))
    rows: Dict[Tuple[int, ...], Dict[Tuple[int, ...], object]] = {}
    for S in basis:
        sh = tuple(s + 1 for s in S)
        if sh[-1] < d:
            rows[S] = {sh: a[d]}
            continue
        head = sh[:-1]
        entries = {}
        for j in range(d):
            if j in head or a[j].is_zero():
                continue
            T = tuple(sorted(head + (j,)))
            # moving row j into sorted position passes the rows above it
            sign = -1 if sum(1 for s in head if s > j) % 2 else 1
            entries[T] = -a[j] if sign > 0 else a[j]
        rows[S] = entries
    return basis, rows


def shift_matrix(P: OreOperator, k: int) -> ShiftMatrix:
    a = _poly_coeffs(P)
    basis, rows = _shift_rows(a, k)
    numer = {S: {T: from_flint(e) for T, e in r.items()} for S, r in rows.items()}
    return ShiftMatrix(basis, numer, from_flint(a[-1]))


# dependency search


def _terms(vec, D) -> int:
    return sum(len(v) for v in vec if not v.is_zero()) + len(D)


def _strip(vec: List, D):
    g = D
    for v in vec:
        if g.is_one():
            return vec, D
        if not v.is_zero():
            g = g.gcd(v)
    if g.is_one():
        return vec, D
    return [v / g if not v.is_zero() else v for v in vec], D / g


def _annihilator(a: List, init: Tuple[int, ...], budget: int, seed: int = 0) -> OreOperator:
    d = len(a) - 1
    k = len(init)
    basis, rows = _shift_rows(a, k)
    index = {S: i for i, S in enumerate(basis)}
    dim = len(basis)
    u = [_ZERO] * dim
    u[index[tuple(sorted(init))]] = _ONE
    cols = [u]
    dens = [_ONE]
    rng = random.Random(seed)
    for ell in range(1, dim + 1):
        prev = cols[-1]
        nxt = [_ZERO] * dim
        for S, i in index.items():
            if prev[i].is_zero():
                continue
            c = _sigma(prev[i])
            for T, e in rows[S].items():
                j = index[T]
                nxt[j] = nxt[j] + c * e
        D = _sigma(dens[-1]) * a[d]
        nxt, D = _strip(nxt, D)
        size = _terms(nxt, D) + sum(_terms(c, dd) for c, dd in zip(cols, dens))
        if size > budget:
            raise BudgetExceeded(size, budget, ell)
        cols.append(nxt)
        dens.append(D)
        A = [[cols[c][r] for c in range(ell + 1)] for r in range(dim)]
        for _attempt in range(4):
            pts = [random_point(2, rng) for _ in range(2)]
            rank = max(modular_rank(A, pt)[0] for pt in pts)
            if rank == ell + 1:
                break
            _, chosen = modular_rank(A, pts[0], ncols=ell)
            if len(chosen) < ell:
                continue
            sub = [A[r] for r in chosen]
            ys = nullspace(sub, _ZERO)
            if len(ys) != 1 or not check_kernel(A, ys[0]):
                continue
            y = ys[0]
            cs = [from_flint(yi * Di) if not yi.is_zero() else LaurentPoly() for yi, Di in zip(y, dens)]
            return OreOperator(cs).normalize()
        else:
            raise ArithmeticError("modular rank test kept failing")
    raise ArithmeticError("no dependency found up to the wedge dimension")


def exterior_power(P: OreOperator, k: int, budget: int = DEFAULT_BUDGET, seed: int = 0) -> OreOperator:
    """Minimal annihilator of the Casoratian of ``k`` solutions of ``P``, normalized."""
    d = P.order
    if d < 1:
        raise ValueError("operator must have positive order")
    if not 1 <= k <= d:
        raise ValueError(f"need 1 <= k <= {d}")
    return _annihilator(_poly_coeffs(P), tuple(range(k)), budget, seed)


def associated_operator(P: OreOperator, k: int, j: int, budget: int = DEFAULT_BUDGET,
                        seed: int = 0) -> OreOperator:
    """Annihilator of the minor ``w^(k-j)``, the coefficient of ``L^j f``.

    That minor is, up to sign, the determinant over the shift rows
    ``{0..k} minus {j}``; for ``j = k`` it is the Casoratian, so
    ``associated_operator(P, k, k) == exterior_power(P, k)``.
    """
    d = P.order
    if not 1 <= k < d:
        raise ValueError(f"need 1 <= k < {d}")
    if not 0 <= j <= k:
        raise ValueError(f"need 0 <= j <= {k}")
    rows = tuple(r for r in range(k + 1) if r != j)
    return _annihilator(_poly_coeffs(P), rows, budget, seed)


def waj_operator(R: OreOperator, j: int) -> OreOperator:
    """First-order operator satisfied by ``a_j * W`` for a monic right factor ``R``.

    ``R = L^k + ... + a_0`` and ``W`` the Casoratian of a basis of its
    solutions: ``a_j(q^n) w_{n+1} - (-1)^k a_j(q^(n+1)) a_0(q^n) w_n = 0``.
    """
    k = R.order
    lead = R.lead()
    a_j = R.coeff(j) / lead
    a_0 = R.coeff(0) / lead
    if a_j.is_zero():
        raise ValueError("a_j vanishes")
    sign = -1 if k % 2 else 1
    return OreOperator([-sign * a_j.shift_M(1) * a_0, a_j]).normalize()


def waj_consistent(R: OreOperator, j: int, factor: OreOperator) -> bool:
    """True if ``factor`` (first order) satisfies the first-order relation of ``a_j * W`` for ``R``."""
    if factor.order != 1:
        return False
    return factor.normalize() == waj_operator(R, j)


def factor_order_candidates(cert, d: Optional[int] = None) -> Set[int]:
    degs = cert.degrees if isinstance(cert, FactorizationCertificate) else list(cert)
    if d is None:
        d = sum(degs)
    return {s for s in subset_sums(degs) if 1 <= s <= d - 1}


# numeric oracle at a specialized q


def coefficient_values(P: OreOperator, q0: Fraction, n: int) -> List[Fraction]:
    return P.evaluate(q0, q0 ** n)


def iterate_solution(P: OreOperator, q0: Fraction, init: Sequence[Fraction], count: int,
                     start: int = 0) -> List[Fraction]:
    """Values ``f_start .. f_{start+count-1}`` of the solution of ``P f = 0`` with the given start.

    ``start`` skips the small n where the leading coefficient may vanish.
    """
    d = P.order
    f = [Fraction(x) for x in init]
    if len(f) != d:
        raise ValueError(f"need {d} initial values")
    n = 0
    while len(f) < count:
        a = coefficient_values(P, q0, start + n)
        if a[d] == 0:
            raise ZeroDivisionError(f"leading coefficient vanishes at n = {start + n}")
        f.append(-sum(a[j] * f[n + j] for j in range(d)) / a[d])
        n += 1
    return f


def _det(rows: List[List[Fraction]]) -> Fraction:
    m = [r[:] for r in rows]
    n = len(m)
    det = Fraction(1)
    for c in range(n):
        p = next((i for i in range(c, n) if m[i][c] != 0), None)
        if p is None:
            return Fraction(0)
        if p != c:
            m[c], m[p] = m[p], m[c]
            det = -det
        det *= m[c][c]
        for i in range(c + 1, n):
            f = m[i][c] / m[c][c]
            if f:
                m[i] = [x - f * y for x, y in zip(m[i], m[c])]
    return det


def minor_sequence(sols: Sequence[Sequence[Fraction]], rows: Sequence[int], count: int) -> List[Fraction]:
    """``n -> det(f^(i)_{n+r})`` for ``r`` in ``rows``; rows index the matrix rows."""
    return [_det([[s[n + r] for s in sols] for r in rows]) for n in range(count)]


def apply_numeric(P: OreOperator, q0: Fraction, seq: Sequence[Fraction], n: int, start: int = 0) -> Fraction:
    """``(P f)_{start+n}`` where ``seq[i]`` holds ``f_{start+i}``."""
    a = coefficient_values(P, q0, start + n)
    return sum(a[j] * seq[n + j] for j in range(len(a)))
