"""Guessing q-holonomic recurrences from exact sequence values.

The ansatz ``sum_j c_j(q, q^n) f_{n+j} = b(q, q^n)`` with ``c_j`` and ``b``
polynomials in M of bounded degree turns every known index n into one linear
equation over Q(q) for the unknown coefficients. The kernel is computed by
fraction-free elimination over ``Z[q^(1/2)]``.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from fractions import Fraction
from math import lcm
from typing import List, Optional, Sequence

from .algebra import LaurentPoly, RatFunc, parse_poly
from .algebra.gcd import CTX, from_flint
from .algebra.linalg import check_kernel, nullspace
from .jones import QSeries
from .qweyl import InhomRecurrence, OreOperator

HELD_OUT = 5
SAFETY = 5

_ZERO = CTX.from_dict({})


class InsufficientData(ValueError):
    pass


@dataclass
class GuessProblem:
    values: List[LaurentPoly]
    order: int
    degM: int
    degq: Optional[int] = None
    inhomogeneous: bool = False
    offset: int = 0  # values[i] is f at index offset + i

    def __post_init__(self):
        self.values = [v.to_laurent() if isinstance(v, QSeries) else LaurentPoly.coerce(v) for v in self.values]
        if self.order < 1 or self.degM < 0:
            raise ValueError("need order >= 1 and degM >= 0")

    @property
    def unknowns(self) -> int:
        return (self.order + 1 + (1 if self.inhomogeneous else 0)) * (self.degM + 1)

    def needed(self, order: Optional[int] = None) -> int:
        r = self.order if order is None else order
        return (r + 1 + (1 if self.inhomogeneous else 0)) * (self.degM + 1) + r + SAFETY

    def check(self):
        if len(self.values) < self.needed():
            raise InsufficientData(f"need at least {self.needed()} values, got {len(self.values)}")

    @classmethod
    def from_json(cls, obj, order: int, degM: int, inhomogeneous: bool = False) -> "GuessProblem":
        if isinstance(obj, str):
            obj = json.loads(obj)
        offset = 0
        if isinstance(obj, dict):
            offset = int(obj.get("offset", 0))
            obj = obj["values"]
        return cls([parse_poly(str(v)) for v in obj], order, degM, None, inhomogeneous, offset)


def _row(p: GuessProblem, r: int, n: int) -> List[LaurentPoly]:
    """Coefficients of the unknowns ``c_{j,i}`` (then ``b_i``) at index n."""
    f = p.values
    k = n - p.offset
    row = []
    for j in range(r + 1):
        for i in range(p.degM + 1):
            row.append(f[k + j].shift(q=n * i))
    if p.inhomogeneous:
        for i in range(p.degM + 1):
            row.append(-LaurentPoly.monomial(1, q=n * i))
    return row


def _to_ring(row: List[LaurentPoly]):
    nz = [x for x in row if not x.is_zero()]
    if not nz:
        return None
    e2 = min(x.monomial_content()[0] for x in nz)
    den = 1
    for x in nz:
        for c in x.raw.values():
            if isinstance(c, Fraction):
                den = lcm(den, c.denominator)
    return [CTX.from_dict({(a - e2, 0): int(c * den) for (a, _m), c in x.raw.items()}) if not x.is_zero() else _ZERO
            for x in row]


def _assemble(p: GuessProblem, r: int, y) -> InhomRecurrence:
    w = p.degM + 1
    coef = [from_flint(v) if not v.is_zero() else LaurentPoly() for v in y]
    cs = []
    for j in range(r + 1):
        c = LaurentPoly()
        for i in range(w):
            c = c + coef[j * w + i].shift(M=i)
        cs.append(c)
    b = LaurentPoly()
    if p.inhomogeneous:
        for i in range(w):
            b = b + coef[(r + 1) * w + i].shift(M=i)
    P = OreOperator(cs)
    N = P.normalize()
    # P = unit * N with unit a rational constant times a monomial; rescale b alike
    if not b.is_zero():
        j = next(i for i, c in enumerate(cs) if not c.is_zero())
        unit = RatFunc(N.nums[j] * N.den) / RatFunc(cs[j])
        b_r = RatFunc(b) * unit
    else:
        b_r = RatFunc(0)
    return InhomRecurrence(N, b_r)


def _verifies(rec: InhomRecurrence, p: GuessProblem, indices) -> bool:
    f = lambda n: p.values[n - p.offset]
    return all(rec.residual(f, n).is_zero() for n in indices)


def guess_recurrence(p: GuessProblem) -> Optional[InhomRecurrence]:
    """Lowest-order recurrence in the ansatz that also fits the held-out values."""
    p.check()
    last = p.offset + len(p.values) - 1
    for r in range(1, p.order + 1):
        if len(p.values) < p.needed(r):
            break
        # equations use n = offset .. last - r - HELD_OUT; the rest is held out
        top = last - r - HELD_OUT
        idx = list(range(p.offset, top + 1))
        rows = [x for x in (_to_ring(_row(p, r, n)) for n in idx) if x is not None]
        if not rows:
            continue
        width = len(rows[0])
        # start from the lowest indices (smallest entries); add rows until the kernel is stable
        take = min(len(rows), width + 2)
        while True:
            ker = nullspace(rows[:take], _ZERO)
            if not ker or take == len(rows):
                break
            if all(check_kernel(rows, y) for y in ker):
                break
            take = min(len(rows), take + width)
        for y in ker:
            if not check_kernel(rows, y):
                continue
            nz = [k for k in range(width) if not y[k].is_zero()]
            w = p.degM + 1
            if not any(k < (r + 1) * w for k in nz):
                continue
            rec = _assemble(p, r, y)
            if rec.P.order < 1:
                continue
            held = range(p.offset, last - rec.P.order + 1)
            if _verifies(rec, p, held):
                return rec
    return None


def sequence_values(f, start: int, count: int) -> List[LaurentPoly]:
    out = []
    for n in range(start, start + count):
        v = f(n)
        out.append(v.to_laurent() if isinstance(v, QSeries) else LaurentPoly.coerce(v))
    return out
