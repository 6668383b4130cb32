"""Colored Jones polynomials of double twist knots ``K_{p,p'}``.

Values are computed from the twist-coefficient double sum. Univariate
arithmetic runs on FLINT integer polynomials; every division by a factor
``1 - q^j`` is checked to be exact.
"""

from __future__ import annotations

import threading
from dataclasses import dataclass, field
from typing import Callable, Dict, Iterable, List, Optional, Tuple

import flint

from .algebra import LaurentPoly
from .qweyl import InhomRecurrence, OreOperator, RatFunc, apply_to_sequence


class NonIntegerExponent(ArithmeticError):
    pass


class QSeries:
    """Laurent polynomial in q with integer exponents: ``q^offset * poly(q)``."""

    __slots__ = ("offset", "poly")

    def __init__(self, poly=None, offset: int = 0):
        if poly is None:
            poly = flint.fmpz_poly(0)
        elif not isinstance(poly, flint.fmpz_poly):
            poly = flint.fmpz_poly(list(poly))
        # move trailing zeros into the offset
        if poly != 0:
            cs = poly.coeffs()
            k = 0
            while cs[k] == 0:
                k += 1
            if k:
                poly = flint.fmpz_poly(cs[k:])
                offset += k
        else:
            offset = 0
        self.poly = poly
        self.offset = offset

    @classmethod
    def monomial(cls, c: int = 1, e: int = 0) -> "QSeries":
        return cls(flint.fmpz_poly([c]), e)

    @classmethod
    def from_laurent(cls, p: LaurentPoly) -> "QSeries":
        if p.is_zero():
            return cls()
        lo = p.ldeg_q()
        if not isinstance(lo, int):
            raise NonIntegerExponent("half-integer q exponent")
        cs = [0] * (p.deg_q() - lo + 1)
        for e, m, c in p.terms():
            if m or not isinstance(e, int):
                raise ValueError("not a univariate Laurent polynomial in q")
            cs[e - lo] = int(c)
        return cls(flint.fmpz_poly(cs), lo)

    def to_laurent(self) -> LaurentPoly:
        return LaurentPoly._from_raw(
            {(2 * (self.offset + i), 0): int(c) for i, c in enumerate(self.poly.coeffs()) if c}
        )

    def is_zero(self) -> bool:
        return self.poly == 0

    def deg_q(self) -> int:
        if self.is_zero():
            raise ValueError("degree of zero")
        return self.offset + self.poly.degree()

    def ldeg_q(self) -> int:
        if self.is_zero():
            raise ValueError("degree of zero")
        return self.offset

    def coeffs(self) -> Dict[int, int]:
        return {self.offset + i: int(c) for i, c in enumerate(self.poly.coeffs()) if c}

    def __eq__(self, other):
        if isinstance(other, QSeries):
            return self.offset == other.offset and self.poly == other.poly
        if isinstance(other, LaurentPoly):
            return self.to_laurent() == other
        if isinstance(other, int):
            return self == QSeries.monomial(other, 0) if other else self.is_zero()
        return NotImplemented

    def __hash__(self):
        return hash((self.offset, tuple(int(c) for c in self.poly.coeffs())))

    def __add__(self, other: "QSeries") -> "QSeries":
        if self.is_zero():
            return other
        if other.is_zero():
            return self
        lo = min(self.offset, other.offset)
        a = self.poly * flint.fmpz_poly([0] * (self.offset - lo) + [1])
        b = other.poly * flint.fmpz_poly([0] * (other.offset - lo) + [1])
        return QSeries(a + b, lo)

    def __neg__(self):
        return QSeries(-self.poly, self.offset)

    def __sub__(self, other):
        return self + (-other)

    def __mul__(self, other: "QSeries") -> "QSeries":
        return QSeries(self.poly * other.poly, self.offset + other.offset)

    def times_qpow(self, e: int) -> "QSeries":
        return QSeries(self.poly, self.offset + e)

    def __str__(self):
        return str(self.to_laurent())

    def __repr__(self):
        return f"QSeries({str(self)!r})"


def _one_minus_qj(j: int) -> flint.fmpz_poly:
    """``1 - q^j`` for ``j >= 1``."""
    cs = [0] * (j + 1)
    cs[0] = 1
    cs[j] = -1
    return flint.fmpz_poly(cs)


def _exact_div(a: flint.fmpz_poly, b: flint.fmpz_poly) -> flint.fmpz_poly:
    quo, rem = divmod(a, b)
    if rem != 0:
        raise ArithmeticError("inexact division in Jones assembly")
    return quo


def qpochhammer(base_exp_n: int, base_exp_q: int, ratio: int, count: int, n: int = 0) -> QSeries:
    """``prod_{j<count} (1 - q^(base_exp_q + base_exp_n*n) * q^(ratio*j))``.

    ``ratio`` is +1 for base q and -1 for base q^-1.
    """
    if count < 0:
        raise ValueError("count must be nonnegative")
    if ratio not in (1, -1):
        raise ValueError("ratio must be 1 (q) or -1 (q^-1)")
    out = QSeries.monomial(1)
    x = base_exp_q + base_exp_n * n
    for j in range(count):
        e = x + ratio * j
        if e > 0:
            f = QSeries(_one_minus_qj(e))
        elif e == 0:
            return QSeries()
        else:
            # 1 - q^e = q^e (q^-e - 1)
            f = QSeries(-_one_minus_qj(-e), e)
        out = out * f
    return out


def gaussian_binomial(N: int, m: int) -> flint.fmpz_poly:
    if m < 0 or m > N:
        return flint.fmpz_poly(0)
    m = min(m, N - m)
    g = flint.fmpz_poly([1])
    for i in range(1, m + 1):
        g = _exact_div(g * _one_minus_qj(N - m + i), _one_minus_qj(i))
    return g


@dataclass(frozen=True)
class KnotSpec:
    """Double twist knot with half-twist counts ``p`` and ``pp``."""

    p: int
    pp: int

    def __post_init__(self):
        if not self.p or not self.pp:
            raise ValueError("twist counts must be nonzero")

    @property
    def name(self) -> str:
        return {(2, 2): "7_4"}.get((self.p, self.pp), f"K_{{{self.p},{self.pp}}}")


K74 = KnotSpec(2, 2)


class JonesCache:
    """Thread-safe memo table for twist coefficients and Jones values."""

    def __init__(self):
        self._lock = threading.Lock()
        self.c: Dict[Tuple[int, int], QSeries] = {}
        self.J: Dict[Tuple[int, int, int], QSeries] = {}
        self.laurent: Dict[Tuple[int, int, int], LaurentPoly] = {}

    def get(self, table: str, key):
        with self._lock:
            return getattr(self, table).get(key)

    def put(self, table: str, key, value):
        with self._lock:
            getattr(self, table)[key] = value
        return value


def _c_exponent(p: int, n: int, k: int) -> int:
    twice = -k + k * k + 3 * n + n * n
    if twice % 2:
        raise NonIntegerExponent(f"odd exponent at p={p}, n={n}, k={k}")
    return twice // 2 + k * p + k * k * p


def c_twist(p: int, n: int, cache: Optional[JonesCache] = None) -> QSeries:
    """Twist coefficient ``c_{p,n}(q)``; zero for ``n < 0``."""
    if n < 0:
        return QSeries()
    if cache is not None:
        hit = cache.get("c", (p, n))
        if hit is not None:
            return hit
    # sum_k sign q^e (1 - q^(2k+1)) [2n+1 choose n-k]_q, then divide by
    # (q;q)_(2n+1) / (q;q)_n = prod_{j=n+1}^{2n+1} (1 - q^j)
    total = QSeries()
    for k in range(n + 1):
        e = _c_exponent(p, n, k)
        term = gaussian_binomial(2 * n + 1, n - k) * _one_minus_qj(2 * k + 1)
        if (k + n) % 2:
            term = -term
        total = total + QSeries(term, e)
    poly = total.poly
    for j in range(n + 1, 2 * n + 2):
        poly = _exact_div(poly, _one_minus_qj(j))
    out = QSeries(poly, total.offset)
    if cache is not None:
        cache.put("c", (p, n), out)
    return out


def jones_double_twist(knot: KnotSpec, n: int, cache: Optional[JonesCache] = None) -> QSeries:
    """``J_{K_{p,p'},n}(q)`` for ``n >= 1``, normalized to 1 at the unknot."""
    if n < 1:
        raise ValueError("color n must be at least 1")
    key = (knot.p, knot.pp, n)
    if cache is not None:
        hit = cache.get("J", key)
        if hit is not None:
            return hit
    total = QSeries()
    down = QSeries.monomial(1)  # (q^(n-1); q^-1)_k
    up = QSeries.monomial(1)  # (q^(n+1); q)_k
    for k in range(n):
        if k:
            down = down * QSeries(_one_minus_qj(n - k))
            up = up * QSeries(_one_minus_qj(n + k))
        twice = -2 * k * n - k * (k + 3)
        term = c_twist(knot.p, k, cache) * c_twist(knot.pp, k, cache) * down * up
        term = term.times_qpow(twice // 2)
        total = total - term if k % 2 else total + term
    if cache is not None:
        cache.put("J", key, total)
    return total


def jones_sequence(knot: KnotSpec, cache: JonesCache) -> Callable[[int], LaurentPoly]:
    """``n -> J_n`` as LaurentPoly, memoized in ``cache``."""

    def f(n: int) -> LaurentPoly:
        key = (knot.p, knot.pp, n)
        hit = cache.get("laurent", key)
        if hit is None:
            hit = cache.put("laurent", key, jones_double_twist(knot, n, cache).to_laurent())
        return hit

    return f


def degree_law_74(n: int) -> int:
    """Predicted top q-degree of the colored Jones polynomial of 7_4."""
    return (7 * n * n - 5 * n) // 2 - 1


@dataclass
class DegreeReport:
    rows: List[Tuple[int, int, int, bool]]  # (n, degree, predicted, ok)
    second_differences: List[int]

    @property
    def ok(self) -> bool:
        return all(r[3] for r in self.rows)

    @property
    def nonlinear(self) -> bool:
        """A degree that is not linear in n rules out order-0 recurrences."""
        return any(d != 0 for d in self.second_differences)

    def to_json(self) -> dict:
        return {
            "rows": [{"n": n, "deg": d, "predicted": e, "ok": ok} for n, d, e, ok in self.rows],
            "nonlinear": self.nonlinear,
            "ok": self.ok,
        }


def degree_check(
    knot: KnotSpec = K74,
    ns: Iterable[int] = range(2, 13),
    cache: Optional[JonesCache] = None,
    predicted: Callable[[int], int] = degree_law_74,
) -> DegreeReport:
    cache = cache or JonesCache()
    rows = []
    for n in ns:
        if n < 2:
            raise ValueError("degree check needs n >= 2")
        d = jones_double_twist(knot, n, cache).deg_q()
        e = predicted(n)
        rows.append((n, d, e, d == e))
    degs = [r[1] for r in rows]
    second = [degs[i + 2] - 2 * degs[i + 1] + degs[i] for i in range(len(degs) - 2)]
    return DegreeReport(rows, second)


@dataclass
class RecurrenceReport:
    rows: List[Tuple[int, bool]] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return bool(self.rows) and all(r[1] for r in self.rows)

    def first_failure(self) -> Optional[int]:
        for n, ok in self.rows:
            if not ok:
                return n
        return None

    def to_json(self) -> dict:
        return {"rows": [{"n": n, "ok": ok} for n, ok in self.rows], "ok": self.ok}


def verify_recurrence(
    rec, knot: KnotSpec, ns: Iterable[int], cache: Optional[JonesCache] = None
) -> RecurrenceReport:
    """Check ``(P J)_n = b(q, q^n)`` for each ``n``; an operator means ``b = 0``."""
    cache = cache or JonesCache()
    f = jones_sequence(knot, cache)
    if isinstance(rec, OreOperator):
        rec = InhomRecurrence(rec, RatFunc(0))
    report = RecurrenceReport()
    for n in ns:
        res = rec.residual(f, n)
        report.rows.append((n, res.is_zero()))
    return report
