"""Valuation at q = 1, Newton polygons and q = 1 factorization support.

The valuation ``v`` counts the power of ``q - 1`` dividing a function. The
Newton polygon of ``sum a_j L^j`` is the lower convex hull of the points
``(j, v(a_j))``. Irreducibility of the q = 1 image over ``Q(M)`` is only ever
claimed in the sound direction.
"""

from __future__ import annotations

import json
import math
import random
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Dict, Iterable, List, Optional, Sequence, Set, Tuple, Union

import flint

from .algebra import LaurentPoly, PoleAtQ1, RatFunc, parse
from .qweyl import CommPoly, OreOperator

INF = math.inf

# bivariate integer polynomials in (M, L) for q = 1 images
ML_CTX = flint.fmpz_mpoly_ctx.get(("M", "L"), "lex")


class PreconditionViolated(ValueError):
    pass


class CertificateError(ValueError):
    """A factorization certificate does not multiply out to its target."""


class BadSpecialization(ArithmeticError):
    """A specialization point makes the leading coefficient vanish."""


class NotSquarefree(ValueError):
    pass


# valuation


def _t_poly_valuation(coeffs: Dict[int, object]) -> int:
    """Multiplicity of ``t = 1`` in a univariate Laurent polynomial in ``t``."""
    lo = min(coeffs)
    den = 1
    for c in coeffs.values():
        if isinstance(c, Fraction):
            den = math.lcm(den, c.denominator)
    cs = [0] * (max(coeffs) - lo + 1)
    for e, c in coeffs.items():
        cs[e - lo] = int(c * den)
    f = flint.fmpz_poly(cs)
    root = flint.fmpz_poly([-1, 1])
    v = 0
    while True:
        quo, rem = divmod(f, root)
        if rem != 0:
            return v
        f = quo
        v += 1


def poly_valuation(p: LaurentPoly) -> Union[int, float]:
    if p.is_zero():
        return INF
    by_m: Dict[int, Dict[int, object]] = {}
    for (e2, m), c in p.raw.items():
        by_m.setdefault(m, {})[e2] = c
    # q - 1 = (t - 1)(t + 1) with t = q^(1/2); only the t = 1 factor matters locally
    return min(_t_poly_valuation(cs) for cs in by_m.values())


def valuation(a) -> Union[int, float]:
    """Order of vanishing of ``a`` at ``q = 1``; ``inf`` for zero."""
    if isinstance(a, RatFunc):
        if a.is_zero():
            return INF
        return poly_valuation(a.num) - poly_valuation(a.den)
    return poly_valuation(LaurentPoly.coerce(a))


# polygons


def _cross(o, a, b):
    return (a[0] - o[0]) * (b[1] - o[1]) - (a[1] - o[1]) * (b[0] - o[0])


def lower_hull(points: Iterable[Tuple[int, int]]) -> List[Tuple[int, int]]:
    """Vertices of the lower convex hull, left to right, collinear points dropped."""
    best: Dict[int, int] = {}
    for j, v in points:
        if j not in best or v < best[j]:
            best[j] = v
    pts = sorted(best.items())
    hull: List[Tuple[int, int]] = []
    for p in pts:
        while len(hull) >= 2 and _cross(hull[-2], hull[-1], p) <= 0:
            hull.pop()
        hull.append(p)
    return hull


@dataclass(frozen=True)
class NewtonPolygon:
    points: Tuple[Tuple[int, int], ...]
    hull: Tuple[Tuple[int, int], ...] = ()

    def __post_init__(self):
        if not self.hull:
            object.__setattr__(self, "hull", tuple(lower_hull(self.points)))

    @classmethod
    def from_points(cls, points) -> "NewtonPolygon":
        return cls(tuple((int(j), int(v)) for j, v in points))

    def segments(self) -> List[Tuple[Tuple[int, int], Tuple[int, int]]]:
        """The non-vertical boundary segments ``N^e``."""
        return list(zip(self.hull, self.hull[1:]))

    def slopes(self) -> List[Fraction]:
        return [Fraction(b[1] - a[1], b[0] - a[0]) for a, b in self.segments()]

    def is_flat(self) -> bool:
        """True when the hull is one horizontal segment at height 0 starting at j = 0."""
        return (
            len(self.hull) >= 2
            and self.hull[0] == (0, 0)
            and all(v == 0 for _, v in self.hull)
        )

    def __eq__(self, other):
        if not isinstance(other, NewtonPolygon):
            return NotImplemented
        return self.hull == other.hull

    def __hash__(self):
        return hash(self.hull)

    def __add__(self, other: "NewtonPolygon") -> "NewtonPolygon":
        return minkowski_sum(self, other)

    def to_json(self) -> dict:
        return {"points": [list(p) for p in self.points], "hull": [list(p) for p in self.hull]}


def newton_polygon(P: OreOperator) -> NewtonPolygon:
    if P.is_zero():
        raise ValueError("Newton polygon of the zero operator")
    dv = poly_valuation(P.den)
    pts = []
    for j, n in enumerate(P.nums):
        if not n.is_zero():
            pts.append((j, poly_valuation(n) - dv))
    return NewtonPolygon.from_points(pts)


def minkowski_sum(A: NewtonPolygon, B: NewtonPolygon) -> NewtonPolygon:
    pts = [(a[0] + b[0], a[1] + b[1]) for a in A.hull for b in B.hull]
    return NewtonPolygon.from_points(pts)


# q = 1 images as bivariate integer polynomials


def _q1_image(p) -> CommPoly:
    if isinstance(p, OreOperator):
        return p.at_q1()
    if isinstance(p, CommPoly):
        return p
    if isinstance(p, str):
        return CommPoly.parse(p)
    raise TypeError(f"expected a polynomial in L, got {type(p).__name__}")


def comm_to_flint(p: CommPoly) -> Tuple[flint.fmpz_mpoly, RatFunc]:
    """Write ``p = unit * f(M, L)`` with ``f`` a primitive integer polynomial.

    ``unit`` is a rational function of ``M``; ``q`` must not occur.
    """
    if p.is_zero():
        raise ValueError("zero polynomial")
    nums = p.nums
    for n in nums:
        for (e2, _m) in n.raw:
            if e2:
                raise ValueError("q occurs in a q = 1 image")
    lo = min(n.ldeg_M() for n in nums if n)
    den = 1
    for n in nums:
        for c in n.raw.values():
            if isinstance(c, Fraction):
                den = math.lcm(den, c.denominator)
    d = {}
    for j, n in enumerate(nums):
        for (_, m), c in n.raw.items():
            d[(m - lo, j)] = int(c * den)
    f = ML_CTX.from_dict(d)
    content = f.content()
    if int(f.leading_coefficient()) < 0:
        content = -content
    f = f / content
    unit = RatFunc(LaurentPoly.monomial(Fraction(int(content), den), M=lo), p.den)
    return f, unit


def flint_to_comm(f) -> CommPoly:
    cols: Dict[int, Dict[Tuple[int, int], int]] = {}
    for (m, j), c in f.to_dict().items():
        cols.setdefault(int(j), {})[(0, int(m))] = int(c)
    n = max(cols) + 1 if cols else 0
    return CommPoly([LaurentPoly(cols.get(j, {})) for j in range(n)])


# certificates


@dataclass(frozen=True)
class CertFactor:
    poly: CommPoly
    mult: int = 1
    claimed_irreducible: bool = True

    @property
    def deg_L(self) -> int:
        return self.poly.order


class FactorizationCertificate:
    """``target = unit * prod poly_i^mult_i`` with ``unit`` a function of M only.

    The identity is checked when the certificate is built.
    """

    def __init__(self, target, factors: Sequence[CertFactor], unit=None, verify: bool = True):
        self.target = _q1_image(target)
        self.factors = [f if isinstance(f, CertFactor) else CertFactor(*f) for f in factors]
        if unit is None:
            unit = self._infer_unit()
        self.unit = RatFunc.coerce(unit)
        if verify:
            self.verify()

    def product(self) -> CommPoly:
        out = CommPoly([self.unit])
        for f in self.factors:
            for _ in range(f.mult):
                out = out * f.poly
        return out

    def _infer_unit(self) -> RatFunc:
        prod = CommPoly([1])
        for f in self.factors:
            for _ in range(f.mult):
                prod = prod * f.poly
        if prod.order != self.target.order:
            raise CertificateError("L-degree of the factors does not match the target")
        return self.target.lead() / prod.lead()

    def verify(self):
        for f in self.factors:
            if f.mult < 1:
                raise CertificateError("multiplicities must be positive")
            if f.poly.order < 1:
                raise CertificateError("factors must have positive L-degree")
        if self.product() != self.target:
            raise CertificateError("factors do not multiply out to the target")
        return True

    @property
    def degrees(self) -> List[int]:
        out = []
        for f in self.factors:
            out.extend([f.deg_L] * f.mult)
        return out

    def shows_irreducible(self) -> bool:
        return (
            len(self.factors) == 1
            and self.factors[0].mult == 1
            and self.factors[0].claimed_irreducible
        )

    def to_json(self) -> dict:
        return {
            "unit": str(self.unit),
            "factors": [
                {"poly": str(f.poly), "mult": f.mult, "irreducible": f.claimed_irreducible}
                for f in self.factors
            ],
        }

    @classmethod
    def from_json(cls, obj, target) -> "FactorizationCertificate":
        if isinstance(obj, str):
            obj = json.loads(obj)
        facs = [
            CertFactor(CommPoly.parse(f["poly"]), int(f.get("mult", 1)), bool(f.get("irreducible", True)))
            for f in obj["factors"]
        ]
        unit = obj.get("unit")
        unit = RatFunc.coerce(parse(unit, "poly")) if unit is not None else None
        return cls(target, facs, unit)


def factor_q1(p) -> FactorizationCertificate:
    """Complete factorization of a q = 1 image over ``Q(M)[L]`` via FLINT.

    Factors free of L are absorbed into the unit.
    """
    p = _q1_image(p)
    f, _ = comm_to_flint(p)
    _, facs = f.factor()
    out = []
    for g, e in facs:
        cp = flint_to_comm(ML_CTX.from_dict(g.to_dict()))
        if cp.order >= 1:
            out.append(CertFactor(cp.normalize(), int(e), True))
    out.sort(key=lambda x: (x.deg_L, str(x.poly)))
    return FactorizationCertificate(p, out)


# the easy criterion


def easy_irreducible(P: OreOperator, cert: FactorizationCertificate) -> str:
    """``"Irreducible"`` or ``"Inconclusive"``; the criterion is one-sided."""
    d = P.order
    if d <= 1:
        raise PreconditionViolated("deg_L(P) must exceed 1")
    try:
        P1 = P.at_q1()
    except PoleAtQ1:
        raise PreconditionViolated("P(1, M, L) is not defined") from None
    if P1.order != d or P1.coeff(0).is_zero():
        raise PreconditionViolated("a_0(1, M) * a_d(1, M) vanishes")
    if cert.target != P1:
        raise PreconditionViolated("certificate is not for P(1, M, L)")
    flat = newton_polygon(P).is_flat() and newton_polygon(P).hull[-1][0] == d
    if flat and cert.shows_irreducible():
        return "Irreducible"
    return "Inconclusive"


# probabilistic degree patterns


@dataclass
class IrreducibleProved:
    point: Fraction

    def to_json(self) -> dict:
        return {"result": "IrreducibleProved", "point": str(self.point)}


@dataclass
class DegreePatterns:
    patterns: List[Tuple[int, ...]]
    orders: Set[int] = field(default_factory=set)

    @property
    def coarsest(self) -> Tuple[int, ...]:
        return min(self.patterns, key=len)

    def to_json(self) -> dict:
        return {
            "result": "DegreePatterns",
            "patterns": ["+".join(map(str, p)) for p in self.patterns],
            "orders": sorted(self.orders),
        }


def subset_sums(degs: Sequence[int]) -> Set[int]:
    sums = {0}
    for d in degs:
        sums |= {s + d for s in sums}
    return sums


def _spec_point(rng: random.Random) -> Fraction:
    return Fraction(rng.randint(-40, 40), rng.randint(1, 9))


def probable_irreducible_q1(p, seed: int = 0, points: int = 5, max_retries: int = 50):
    """Factor specializations ``M -> m`` over Q to bound how ``p`` can split.

    An irreducible specialization of full degree proves ``p`` irreducible over
    ``Q(M)``. Otherwise every factor of ``p`` has L-degree in the returned
    set of possible orders.
    """
    p = _q1_image(p)
    f, _ = comm_to_flint(p)
    d = p.order
    if d < 1:
        raise ValueError("need positive L-degree")
    dfdL = f.derivative(1)
    g = f.gcd(dfdL)
    if g.degrees()[1] > 0:
        raise NotSquarefree("p is not squarefree in L")
    rng = random.Random(seed)
    cols: Dict[int, Dict[int, int]] = {}
    for (m, j), c in f.to_dict().items():
        cols.setdefault(int(j), {})[int(m)] = int(c)
    patterns: List[Tuple[int, ...]] = []
    orders = set(range(1, d))
    tries = 0
    while len(patterns) < points:
        tries += 1
        if tries > max_retries:
            raise BadSpecialization("too many degenerate specialization points")
        x = _spec_point(rng)
        try:
            uni = _specialize(cols, d, x)
        except BadSpecialization:
            continue
        _, facs = uni.factor()
        pat = tuple(sorted(int(g.degree()) for g, e in facs for _ in range(int(e))))
        if sum(pat) != d:
            continue
        if pat == (d,):
            return IrreducibleProved(x)
        patterns.append(pat)
        orders &= subset_sums(pat)
    return DegreePatterns(patterns, orders)


def _specialize(cols: Dict[int, Dict[int, int]], d: int, x: Fraction) -> flint.fmpz_poly:
    vals = []
    for j in range(d + 1):
        v = sum(Fraction(c) * x ** m for m, c in cols.get(j, {}).items())
        vals.append(v)
    if vals[d] == 0:
        raise BadSpecialization(f"leading coefficient vanishes at M = {x}")
    den = 1
    for v in vals:
        den = math.lcm(den, v.denominator)
    uni = flint.fmpz_poly([int(v * den) for v in vals])
    # a repeated root after specialization is a degenerate point as well
    if uni.gcd(uni.derivative()).degree() > 0:
        raise BadSpecialization(f"specialization at M = {x} is not squarefree")
    return uni
