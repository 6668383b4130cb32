"""Linear right factors ``L - r`` of q-difference operators.

``r`` is sought in the normal form ``z * a(M)/b(M) * c(qM)/c(M)`` with
``a | p_0``, ``b | p_d(q^(1-d) M)`` and ``gcd(a(M), b(q^n M)) = 1`` for all
``n >= 0``. Divisor pairs are enumerated by q = 1 image class so that the
q = 1 matching condition is solved on multiplicity vectors before any pair is
built; ``z`` and ``c`` then come from exact linear algebra.

Two irreducible factors can only violate the gcd condition when they have the
same q = 1 image, and a product pair violates it exactly when some factor pair
does. The enumeration relies on both facts.
"""

from __future__ import annotations

import json
from collections import Counter
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from fractions import Fraction
from itertools import product
from math import lcm, prod
from typing import Dict, Iterable, Iterator, List, Optional, Sequence, Tuple

import flint

from .algebra import LaurentPoly, RatFunc, parse_poly
from .algebra.gcd import CTX, exact_quotient, factor_poly, from_flint, poly_gcd, to_flint
from .algebra.linalg import nullspace
from .newton import FactorizationCertificate, factor_q1, newton_polygon
from .qweyl import OreOperator

_ZERO = CTX.from_dict({})
_M1 = LaurentPoly.monomial(1, M=1)
# (t, x, M) with x standing for q^n in shift tests
_RES_CTX = flint.fmpz_mpoly_ctx.get(("t", "x", "M"), "lex")


# shift-gcd condition


def _spread_q(p: LaurentPoly) -> int:
    e2 = [k[0] for k in p.raw]
    return (max(e2) - min(e2) + 1) // 2


def shift_bound(a: LaurentPoly, b: LaurentPoly) -> int:
    """Largest shift that needs checking in ``gcd(a(M), b(q^n M))``.

    A common factor ``f(M) ~ g(q^n M)`` makes the ratios of two M-coefficients
    of ``f`` and ``g`` differ by ``q^(n (k - k'))``, and those ratios have
    q-spread at most that of ``a`` and ``b``.
    """
    return int(_spread_q(a) + _spread_q(b)) + a.deg_M() * b.deg_M() + 1


def _shift_candidates_resultant(a: LaurentPoly, b: LaurentPoly) -> List[int]:
    """Shifts ``n >= 0`` where ``Res_M(a(M), b(x M))`` vanishes at ``x = q^n``."""
    fa, _, _ = to_flint(a)
    fb, _, _ = to_flint(b)
    A = _RES_CTX.from_dict({(e, 0, m): int(c) for (e, m), c in fa.to_dict().items()})
    B = _RES_CTX.from_dict({(e, m, m): int(c) for (e, m), c in fb.to_dict().items()})
    if A.degrees()[2] == 0 or B.degrees()[2] == 0:
        return []
    R = A.resultant(B, "M")
    if R.is_zero():
        return [0]
    out = set()
    _, facs = R.factor()
    for g, _e in facs:
        d = g.to_dict()
        xdeg = max(int(k[1]) for k in d)
        if xdeg != 1:
            continue
        # g = f1(t) x + f0(t); root x = -f0/f1 must be t^(2n)
        f1 = {int(k[0]): int(c) for k, c in d.items() if int(k[1]) == 1}
        f0 = {int(k[0]): int(c) for k, c in d.items() if int(k[1]) == 0}
        if len(f1) != 1 or len(f0) != 1:
            continue
        (e1, c1), = f1.items()
        (e0, c0), = f0.items()
        if c0 != -c1 or (e0 - e1) % 2:
            continue
        n = (e0 - e1) // 2
        if n >= 0:
            out.add(n)
    return sorted(out)


def shift_gcd_filter(a: LaurentPoly, b: LaurentPoly, method: str = "bound") -> bool:
    """True iff ``gcd(a(q, M), b(q, q^n M)) = 1`` for every ``n >= 0``."""
    a = LaurentPoly.coerce(a)
    b = LaurentPoly.coerce(b)
    if a.is_zero() or b.is_zero():
        raise ValueError("shift_gcd_filter needs nonzero inputs")
    # M is a common factor of a(M) and b(q^n M) for every n
    if a.monomial_content()[1] > 0 and b.monomial_content()[1] > 0:
        return False
    a, b = a.canonical(), b.canonical()
    if a.deg_M() == 0 or b.deg_M() == 0:
        return True
    if method == "resultant":
        for n in _shift_candidates_resultant(a, b):
            if poly_gcd(a, b.shift_M(n)).deg_M() > 0:
                return False
        return True
    if method != "bound":
        raise ValueError(f"unknown method {method!r}")
    for n in range(shift_bound(a, b) + 1):
        if poly_gcd(a, b.shift_M(n)).deg_M() > 0:
            return False
    return True


# q = 1 images


def _q1_atoms(p: LaurentPoly) -> Counter:
    """Irreducible factors of ``p(1, M)`` over Q, units dropped."""
    img = p.at_q1()
    if img.is_zero():
        raise ZeroDivisionError("factor vanishes at q = 1")
    out: Counter = Counter()
    _, m = img.monomial_content()
    if m:
        out["M"] += m
    core = img.canonical()
    if core.deg_M() == 0:
        return out
    cs = [0] * (core.deg_M() + 1)
    den = 1
    for (_, e), c in core.raw.items():
        if isinstance(c, Fraction):
            den = den * c.denominator
    for (_, e), c in core.raw.items():
        cs[e] = int(c * den)
    _, facs = flint.fmpz_poly(cs).factor()
    for g, e in facs:
        g = flint.fmpz_poly(g)
        if g.degree() < 1:
            continue
        gc = [int(x) for x in g.coeffs()]
        if gc[-1] < 0:
            gc = [-x for x in gc]
        name = str(LaurentPoly({(0, i): c for i, c in enumerate(gc) if c}))
        out[name] += int(e)
    return out


def q1_match_filter(a: LaurentPoly, b: LaurentPoly, rho) -> bool:
    """True iff ``a(1, M) / b(1, M) = rho(M)`` up to a nonzero rational constant."""
    rho = RatFunc.coerce(rho)
    lhs = RatFunc(LaurentPoly.coerce(a).at_q1(), LaurentPoly.coerce(b).at_q1())
    rn, rd = rho.num.at_q1(), rho.den.at_q1()
    rhs = RatFunc(rn, rd)
    if lhs.is_zero() or rhs.is_zero():
        return False
    ratio = lhs / rhs
    return ratio.is_poly() and ratio.num.is_const()


# factor lists for p_0 and shifted p_d


@dataclass(frozen=True)
class CoeffFactor:
    """One irreducible factor of a coefficient, possibly only known symbolically.

    Symbolic factors stand for ``G(q, q^shift M)`` for a hidden polynomial
    ``G`` shared by all factors of the same ``family``.
    """

    name: str
    poly: Optional[LaurentPoly] = None
    mult: int = 1
    family: Optional[str] = None
    shift: int = 0

    @property
    def opaque(self) -> bool:
        return self.poly is None

    def atoms(self) -> Counter:
        if self.opaque:
            return Counter({f"<{self.family}>": 1})
        return _q1_atoms(self.poly)

    def image_key(self) -> str:
        if self.opaque:
            return f"<{self.family}>"
        return str(self.poly.at_q1().canonical())


def factors_conflict(f: CoeffFactor, g: CoeffFactor) -> bool:
    """True if ``f(M)`` and ``g(q^n M)`` share a factor for some ``n >= 0``."""
    if f.poly is not None and g.poly is not None and f.poly == _M1 and g.poly == _M1:
        return True
    if f.opaque or g.opaque:
        if f.opaque and g.opaque and f.family == g.family:
            return f.shift - g.shift >= 0
        return False
    return not shift_gcd_filter(f.poly, g.poly)


@dataclass
class FactorSide:
    """``unit * prod factors`` for ``p_0`` or ``p_d(q, q^(1-d) M)``."""

    factors: List[CoeffFactor]
    unit: LaurentPoly = field(default_factory=lambda: LaurentPoly.const(1))

    @classmethod
    def from_json(cls, obj) -> "FactorSide":
        if isinstance(obj, str):
            obj = json.loads(obj)
        unit = parse_poly(obj.get("unit", "1"))
        facs = []
        for f in obj["factors"]:
            mult = int(f.get("mult", 1))
            if "opaque" in f:
                facs.append(CoeffFactor(f["opaque"], None, mult, f["family"], int(f.get("shift", 0))))
            else:
                p = parse_poly(f["poly"])
                facs.append(CoeffFactor(f.get("name", str(p)), p, mult))
        return cls(facs, unit).with_monomial_factor()

    def to_json(self) -> dict:
        out = []
        for f in self.factors:
            if f.opaque:
                out.append({"opaque": f.name, "family": f.family, "shift": f.shift, "mult": f.mult})
            else:
                out.append({"poly": str(f.poly), "mult": f.mult})
        return {"unit": str(self.unit), "factors": out}

    def with_monomial_factor(self) -> "FactorSide":
        """Move the power of M in the unit into an explicit factor ``M``."""
        if self.unit.is_zero() or not self.unit.is_monomial():
            return self
        (_, m), _c = self.unit.lead()
        if m <= 0:
            return self
        facs = [f for f in self.factors if not (f.poly is not None and f.poly == _M1)]
        extra = sum(f.mult for f in self.factors if f.poly is not None and f.poly == _M1)
        facs.insert(0, CoeffFactor("M", _M1, m + extra))
        return FactorSide(facs, self.unit.shift(M=-m))

    def product(self) -> LaurentPoly:
        out = self.unit
        for f in self.factors:
            if f.opaque:
                raise ValueError(f"factor {f.name} is only known symbolically")
            out = out * f.poly ** f.mult
        return out

    def size(self) -> int:
        return sum(f.mult for f in self.factors)


def factor_side(p: LaurentPoly, method: str = "flint") -> FactorSide:
    """Factor a coefficient over ``Z[q^(1/2), M]``; factors free of M become the unit."""
    p = LaurentPoly.coerce(p)
    if method == "pattern":
        return pattern_factor(p)
    _, m = p.monomial_content()
    unit, facs = factor_poly(p.shift(M=-m))
    out: List[CoeffFactor] = []
    if m > 0:
        out.append(CoeffFactor("M", _M1, m))
    elif m < 0:
        unit = unit.shift(M=m)
    for lp, e in facs:
        if lp.deg_M() == 0:
            unit = unit * lp ** e
            continue
        out.append(CoeffFactor(str(lp), lp, e))
    out.sort(key=lambda x: (x.poly.deg_M(), str(x.poly)))
    return FactorSide(out, unit)


def pattern_factor(p: LaurentPoly) -> FactorSide:
    """Split off factors ``q^i M - 1``, ``q^i M + 1``, ``q^i M^2 - 1`` and ``M``.

    Whatever is left is kept as one block that is assumed irreducible.
    """
    p = LaurentPoly.coerce(p)
    e2, m = p.monomial_content()
    rest = p._shift_raw(-e2, -m)
    found: Counter = Counter()
    span = _spread_q(rest) + 2 if not rest.is_zero() else 0

    for sq, sign in ((1, -1), (1, 1), (2, -1)):
        for i in range(-2 * span, 2 * span + 1):
            f = LaurentPoly.from_terms([(i, sq, 1), (0, 0, sign)])
            while rest.deg_M() >= sq:
                qt = exact_quotient(rest, f)
                if qt is None:
                    break
                rest = qt
                found[f] += 1
    facs = [CoeffFactor(str(f), f, n) for f, n in sorted(found.items(), key=lambda x: (x[0].deg_M(), str(x[0])))]
    unit = LaurentPoly.monomial(1)._shift_raw(e2, m)
    if rest.deg_M() > 0:
        c = rest.canonical()
        unit = unit * exact_quotient(rest, c)
        facs.append(CoeffFactor("F", c, 1))
    else:
        unit = unit * rest
    return FactorSide(facs, unit).with_monomial_factor()


# candidate pairs


@dataclass(frozen=True)
class CandidatePair:
    """Chosen multiplicities of the factors of ``p_0`` (for a) and ``p_d`` (for b)."""

    a_counts: Tuple[int, ...]
    b_counts: Tuple[int, ...]
    p0: "FactorSide" = field(repr=False, compare=False, hash=False, default=None)
    pd: "FactorSide" = field(repr=False, compare=False, hash=False, default=None)

    @staticmethod
    def _build(side: FactorSide, counts) -> LaurentPoly:
        out = LaurentPoly.const(1)
        for f, k in zip(side.factors, counts):
            if k:
                if f.opaque:
                    raise ValueError(f"factor {f.name} is only known symbolically")
                out = out * f.poly ** k
        return out

    @property
    def a(self) -> LaurentPoly:
        return self._build(self.p0, self.a_counts)

    @property
    def b(self) -> LaurentPoly:
        return self._build(self.pd, self.b_counts)

    @property
    def provenance(self) -> str:
        def side(s, counts):
            parts = []
            for f, k in zip(s.factors, counts):
                if k:
                    parts.append(f"({f.name})" + (f"^{k}" if k > 1 else ""))
            return "*".join(parts) or "1"

        return f"a={side(self.p0, self.a_counts)}; b={side(self.pd, self.b_counts)}"


def _submultisets(mults: Sequence[int]) -> Iterator[Tuple[int, ...]]:
    return product(*[range(m + 1) for m in mults])


def _vec_add(u, v, k=1):
    return tuple(x + k * y for x, y in zip(u, v))


class _Block:
    """Factors of both sides closed under q = 1 image and conflicts.

    Conflicts never cross block boundaries, so blocks can be chosen
    independently; only the q = 1 atom vectors have to add up.
    """

    def __init__(self, a_idx, b_idx, p0, pd, atoms, conflicts):
        self.a_idx = a_idx
        self.b_idx = b_idx
        self.a_mult = [p0.factors[i].mult for i in a_idx]
        self.b_mult = [pd.factors[j].mult for j in b_idx]
        self.a_vec = [atoms[("a", i)] for i in a_idx]
        self.b_vec = [atoms[("b", j)] for j in b_idx]
        self.dim = len(atoms[("a", a_idx[0])] if a_idx else atoms[("b", b_idx[0])])
        self.conflict = [frozenset(y for y, j in enumerate(b_idx) if (i, j) in conflicts) for i in a_idx]
        self._groups: Dict[frozenset, Dict[tuple, list]] = {}
        self._dists: Dict[frozenset, Counter] = {}

    def _zero(self):
        return (0,) * self.dim

    def _forbidden(self, sa) -> frozenset:
        out = frozenset()
        for x, k in enumerate(sa):
            if k:
                out |= self.conflict[x]
        return out

    def _vector(self, counts, vecs):
        v = self._zero()
        for k, w in zip(counts, vecs):
            if k:
                v = _vec_add(v, w, k)
        return v

    def _b_dist(self, forb: frozenset) -> Counter:
        """Number of allowed b sub-multisets per atom vector."""
        d = self._dists.get(forb)
        if d is None:
            d = Counter({self._zero(): 1})
            for y, (m, w) in enumerate(zip(self.b_mult, self.b_vec)):
                if y in forb or not m:
                    continue
                nd: Counter = Counter()
                for v, c in d.items():
                    for k in range(m + 1):
                        nd[_vec_add(v, w, k)] += c
                d = nd
            self._dists[forb] = d
        return d

    def _b_group(self, forb: frozenset) -> Dict[tuple, list]:
        g = self._groups.get(forb)
        if g is None:
            g = {}
            allowed = [0 if y in forb else m for y, m in enumerate(self.b_mult)]
            for sb in _submultisets(allowed):
                g.setdefault(self._vector(sb, self.b_vec), []).append(sb)
            self._groups[forb] = g
        return g

    def table(self) -> Counter:
        """Admissible (sa, sb) counted by the atom vector of ``a / b``."""
        out: Counter = Counter()
        for sa in _submultisets(self.a_mult):
            va = self._vector(sa, self.a_vec)
            for vb, c in self._b_dist(self._forbidden(sa)).items():
                out[_vec_add(va, vb, -1)] += c
        return out

    def options(self, delta) -> Iterator[Tuple[Tuple[int, ...], Tuple[int, ...]]]:
        for sa in _submultisets(self.a_mult):
            va = self._vector(sa, self.a_vec)
            want = _vec_add(va, delta, -1)
            for sb in self._b_group(self._forbidden(sa)).get(want, ()):
                yield tuple(sa), sb


def _atom_vector(rho) -> Counter:
    rho = RatFunc.coerce(rho)
    out = _q1_atoms(rho.num) if not rho.num.is_const() else Counter()
    if not rho.den.is_const():
        for k, v in _q1_atoms(rho.den).items():
            out[k] -= v
    return Counter({k: v for k, v in out.items() if v})


def _could_conflict(f: CoeffFactor, g: CoeffFactor) -> bool:
    """Cheap necessary condition for a conflict, read off at q = 1."""
    if f.opaque or g.opaque:
        return True
    fa, ga = f.poly.at_q1(), g.poly.at_q1()
    if fa.is_zero() or ga.is_zero():
        return True
    if fa.deg_M() != f.poly.deg_M() or ga.deg_M() != g.poly.deg_M():
        return True
    if fa.monomial_content()[1] and ga.monomial_content()[1]:
        return True
    return poly_gcd(fa, ga).deg_M() > 0


def _blocks(p0: FactorSide, pd: FactorSide, extra_atoms: Iterable[str] = ()) -> Tuple[List[_Block], List[str]]:
    nodes = [("a", i) for i in range(len(p0.factors))] + [("b", j) for j in range(len(pd.factors))]
    fac = {("a", i): f for i, f in enumerate(p0.factors)}
    fac.update({("b", j): g for j, g in enumerate(pd.factors)})
    raw = {n: fac[n].atoms() for n in nodes}
    names = sorted(set(extra_atoms) | {k for c in raw.values() for k in c})
    atoms = {n: tuple(raw[n].get(k, 0) for k in names) for n in nodes}

    parent = {n: n for n in nodes}

    def find(n):
        while parent[n] != n:
            parent[n] = parent[parent[n]]
            n = parent[n]
        return n

    def union(x, y):
        parent[find(x)] = find(y)

    by_key: Dict[str, tuple] = {}
    for n in nodes:
        k = fac[n].image_key()
        if k in by_key:
            union(n, by_key[k])
        else:
            by_key[k] = n
    conflicts = set()
    for i, f in enumerate(p0.factors):
        for j, g in enumerate(pd.factors):
            if _could_conflict(f, g) and factors_conflict(f, g):
                conflicts.add((i, j))
                union(("a", i), ("b", j))
    groups: Dict[tuple, Tuple[List[int], List[int]]] = {}
    for n in nodes:
        side, idx = n
        g = groups.setdefault(find(n), ([], []))
        (g[0] if side == "a" else g[1]).append(idx)
    blocks = [_Block(ai, bj, p0, pd, atoms, conflicts) for ai, bj in groups.values()]
    return blocks, names


def _feasible(blocks: List[_Block], goal: tuple, tables: List[Counter]):
    """Per-block atom vectors adding up to ``goal``, with their counts."""
    # prune with the set of reachable suffix sums
    dim = len(goal)
    suffix = [{(0,) * dim}]
    for t in reversed(tables):
        suffix.append({_vec_add(s, v) for s in suffix[-1] for v in t})
    suffix.reverse()
    states: Dict[tuple, List[Tuple[tuple, int]]] = {(0,) * dim: [((), 1)]}
    for b, (t, rest) in enumerate(zip(tables, suffix[1:])):
        nxt: Dict[tuple, List[Tuple[tuple, int]]] = {}
        for state, combos in states.items():
            for v, cnt in t.items():
                s2 = _vec_add(state, v)
                if _vec_add(goal, s2, -1) not in rest:
                    continue
                nxt.setdefault(s2, []).extend((deltas + (v,), n * cnt) for deltas, n in combos)
        states = nxt
    return states.get(tuple(goal), [])


def count_candidates(p0: FactorSide, pd: FactorSide, q1_roots: Sequence = ()) -> int:
    return enumerate_candidates(p0, pd, q1_roots, count_only=True)


def enumerate_candidates(p0: FactorSide, pd: FactorSide, q1_roots: Sequence = (), count_only: bool = False,
                         limit: Optional[int] = None):
    """Divisor pairs ``(a, b)`` passing the shift-gcd and q = 1 conditions.

    With no ``q1_roots`` only the shift-gcd condition is imposed. With
    ``count_only`` the number of pairs is returned without building them.
    """
    targets: List[Counter] = []
    for rho in q1_roots:
        v = _atom_vector(rho)
        if v not in targets:
            targets.append(v)
    blocks, names = _blocks(p0, pd, [k for v in targets for k in v])
    tables = [b.table() for b in blocks]
    if not q1_roots:
        if count_only:
            return prod(sum(t.values()) for t in tables)
        per_block = [[o for v in t for o in b.options(v)] for b, t in zip(blocks, tables)]
        return _materialize(blocks, per_block, p0, pd, limit)
    total = 0
    out: List[CandidatePair] = []
    for v in targets:
        goal = tuple(v.get(k, 0) for k in names)
        for deltas, n in _feasible(blocks, goal, tables):
            if count_only:
                total += n
                continue
            per_block = [list(b.options(dv)) for b, dv in zip(blocks, deltas)]
            left = None if limit is None else limit - len(out)
            out.extend(_materialize(blocks, per_block, p0, pd, left))
            if limit is not None and len(out) >= limit:
                return out[:limit]
    return total if count_only else out


def _materialize(blocks, per_block, p0, pd, limit) -> List[CandidatePair]:
    out = []
    na, nb = len(p0.factors), len(pd.factors)
    for choice in product(*per_block):
        a = [0] * na
        b = [0] * nb
        for blk, (sa, sb) in zip(blocks, choice):
            for x, k in zip(blk.a_idx, sa):
                a[x] = k
            for y, k in zip(blk.b_idx, sb):
                b[y] = k
        out.append(CandidatePair(tuple(a), tuple(b), p0, pd))
        if limit is not None and len(out) >= limit:
            break
    return out


# z and c


def _poly_coeffs(P: OreOperator) -> List[LaurentPoly]:
    N = P.normalize()
    return list(N.nums)


def _g_polys(p: List[LaurentPoly], a: LaurentPoly, b: LaurentPoly) -> List[LaurentPoly]:
    """``G_i = p_i prod_{j<i} a(q^j M) prod_{i<=j<d} b(q^j M)``."""
    d = len(p) - 1
    A = [a.shift_M(j) for j in range(d)]
    B = [b.shift_M(j) for j in range(d)]
    out = []
    for i in range(d + 1):
        if p[i].is_zero():
            out.append(p[i])
            continue
        g = p[i]
        for j in range(i):
            g = g * A[j]
        for j in range(i, d):
            g = g * B[j]
        out.append(g)
    return out


def _rational_roots(coeffs: Dict[int, LaurentPoly]) -> List[RatFunc]:
    """Roots in ``Q(q^(1/2))`` of ``sum_i coeffs[i] X^i``."""
    e2 = min(c.monomial_content()[0] for c in coeffs.values())
    den = 1
    for c in coeffs.values():
        for v in c.raw.values():
            if isinstance(v, Fraction):
                den = den * v.denominator
    d = {}
    for i, c in coeffs.items():
        for (e, _m), v in c.raw.items():
            d[(e - e2, i)] = int(v * den)
    f = CTX.from_dict(d)
    if f.degrees()[1] == 0:
        return []
    _, facs = f.factor()
    roots = []
    for g, _e in facs:
        g = CTX.from_dict(g.to_dict())
        if g.degrees()[1] != 1:
            continue
        gd = from_flint(g)
        f1 = gd.coeff_M(1)
        f0 = gd.coeff_M(0)
        r = RatFunc(-f0, f1) if not f0.is_zero() else RatFunc(0)
        if r not in roots:
            roots.append(r)
    return roots


def _extreme(gs: List[LaurentPoly], top: bool):
    live = {i: g for i, g in enumerate(gs) if not g.is_zero()}
    if top:
        deg = max(g.deg_M() for g in live.values())
        return {i: g.coeff_M(deg) for i, g in live.items() if g.deg_M() == deg}
    deg = min(g.ldeg_M() for g in live.values())
    return {i: g.coeff_M(deg) for i, g in live.items() if g.ldeg_M() == deg}


def z_candidates(P: OreOperator, pair) -> List[RatFunc]:
    """Nonzero ``z`` in ``Q(q^(1/2))`` cancelling the lowest M-degree terms.

    The constant coefficient of ``c`` is nonzero, so the lowest M-degree part
    of ``sum_i z^i G_i c(q^i M)`` is ``c(0) sum_{i in I} tc(G_i) z^i``; every
    admissible ``z`` is a root of that polynomial.
    """
    a, b = _pair_ab(pair)
    gs = _g_polys(_poly_coeffs(P), a, b)
    low = _extreme(gs, top=False)
    if len(low) < 2:
        return []
    return [z for z in _rational_roots(low) if not z.is_zero()]


def _degree_candidates(gs: List[LaurentPoly], z: RatFunc) -> List[int]:
    """Degrees ``m`` of ``c`` allowed by the top M-degree cancellation."""
    top = _extreme(gs, top=True)
    if len(top) < 2:
        return []
    d = max(top)
    # sum_i lc(G_i) z^i X^i with X = q^m, cleared of the denominator of z
    coeffs = {}
    for i, g in top.items():
        coeffs[i] = g * z.num ** i * z.den ** (d - i)
    out = []
    for X in _rational_roots(coeffs):
        if not X.is_poly() or not X.num.is_monomial():
            continue
        (e2, m), c = X.num.lead()
        if c != 1 or m != 0 or e2 % 2 or e2 < 0:
            continue
        out.append(e2 // 2)
    return sorted(set(out))


def _pair_ab(pair):
    if isinstance(pair, CandidatePair):
        return pair.a, pair.b
    a, b = pair
    return LaurentPoly.coerce(a), LaurentPoly.coerce(b)


def solve_c(P: OreOperator, pair, z) -> Optional[LaurentPoly]:
    """Polynomial ``c`` with ``c(q, 0) != 0`` making ``L - r`` a right factor, or None."""
    a, b = _pair_ab(pair)
    z = RatFunc.coerce(z)
    gs = _g_polys(_poly_coeffs(P), a, b)
    ms = _degree_candidates(gs, z)
    if not ms:
        return None
    m = max(ms)
    d = len(gs) - 1
    zn, zd = z.num, z.den
    ws = [g * zn ** i * zd ** (d - i) if not g.is_zero() else g for i, g in enumerate(gs)]
    lo = min(w.ldeg_M() for w in ws if w)
    hi = max(w.deg_M() for w in ws if w) + m
    # row e, column l: coefficient of M^e contributed by c_l
    rows: Dict[int, List[LaurentPoly]] = {e: [LaurentPoly() for _ in range(m + 1)] for e in range(lo, hi + 1)}
    for i, w in enumerate(ws):
        if w.is_zero():
            continue
        for k, coef in w.by_M().items():
            for l in range(m + 1):
                rows[k + l][l] = rows[k + l][l] + coef.shift(q=i * l)
    mat = [r for r in rows.values() if any(not x.is_zero() for x in r)]
    if not mat:
        return LaurentPoly.const(1)
    shift = min((x.monomial_content()[0] for r in mat for x in r if not x.is_zero()), default=0)
    A = []
    for r in mat:
        sc = _row_scale(r)
        A.append([_to_t(x, shift, sc) for x in r])
    for y in nullspace(A, _ZERO):
        if y[0].is_zero():
            continue
        cs = [from_flint(v) if not v.is_zero() else LaurentPoly() for v in y]
        c = LaurentPoly()
        for l, v in enumerate(cs):
            c = c + v * _M1 ** l
        return c.primitive()
    return None


def _to_t(x: LaurentPoly, shift: int, scale: int = 1):
    if x.is_zero():
        return _ZERO
    return CTX.from_dict({(e - shift, 0): int(c * scale) for (e, _m), c in x.raw.items()})


def _row_scale(row) -> int:
    den = 1
    for x in row:
        for c in x.raw.values():
            if isinstance(c, Fraction):
                den = lcm(den, c.denominator)
    return den


@dataclass
class HyperNormalForm:
    z: RatFunc
    a: LaurentPoly
    b: LaurentPoly
    c: LaurentPoly

    @property
    def r(self) -> RatFunc:
        return self.z * RatFunc(self.a, self.b) * RatFunc(self.c.shift_M(1), self.c)

    def factor(self) -> OreOperator:
        return OreOperator([-self.r, 1])

    def check_invariants(self, nmax: Optional[int] = None) -> bool:
        if self.c.coeff_M(0).is_zero():
            return False
        if self.c.deg_M() > 0 and poly_gcd(self.a, self.c).deg_M() > 0:
            return False
        if self.c.deg_M() > 0 and poly_gcd(self.b, self.c.shift_M(1)).deg_M() > 0:
            return False
        return shift_gcd_filter(self.a, self.b)

    def to_json(self) -> dict:
        return {"z": str(self.z), "a": str(self.a), "b": str(self.b), "c": str(self.c), "r": str(self.r)}


def try_pair(P: OreOperator, pair, zs: Optional[Sequence] = None) -> List[HyperNormalForm]:
    """All normal forms from one pair whose factor divides ``P`` exactly."""
    a, b = _pair_ab(pair)
    found = []
    cands = [RatFunc.coerce(z) for z in zs] if zs is not None else z_candidates(P, (a, b))
    for z in cands:
        c = solve_c(P, (a, b), z)
        if c is None:
            continue
        nf = HyperNormalForm(z, a, b, c)
        _, rem = P.divmod_right(nf.factor())
        if rem.is_zero():
            found.append(nf)
    return found


def _try_pair_job(args):
    P, a, b, zs = args
    return try_pair(P, (a, b), zs)


@dataclass
class QHyperReport:
    factors: List[OreOperator] = field(default_factory=list)
    normal_forms: List[HyperNormalForm] = field(default_factory=list)
    candidates: int = 0
    tested: int = 0
    complete: bool = True
    caveats: List[str] = field(default_factory=list)
    q1_filter: bool = False

    def to_json(self) -> dict:
        return {
            "candidates": self.candidates,
            "tested": self.tested,
            "q1_filter": self.q1_filter,
            "factors": [str(f) for f in self.factors],
            "normal_forms": [nf.to_json() for nf in self.normal_forms],
            "complete": self.complete,
            "caveats": self.caveats,
        }


def linear_q1_roots(cert: FactorizationCertificate) -> List[RatFunc]:
    """Roots ``rho`` of the linear L-factors of a q = 1 certificate."""
    out = []
    for f in cert.factors:
        if f.poly.order == 1:
            rho = -f.poly.coeff(0) / f.poly.coeff(1)
            if rho not in out:
                out.append(rho)
    return out


def find_linear_right_factors(P: OreOperator, p0cert: Optional[FactorSide] = None,
                              pdcert: Optional[FactorSide] = None,
                              q1cert: Optional[FactorizationCertificate] = None,
                              zs: Optional[Sequence] = None, parallel: int = 1,
                              limit: Optional[int] = None) -> QHyperReport:
    """Every ``L - r`` dividing ``P`` on the right, each one remainder-checked.

    The q = 1 condition is only used when the Newton polygon of ``P`` is a
    horizontal segment; then a right factor specializes to a factor of
    ``P(1, M, L)`` and the condition is sound.
    """
    N = P.normalize()
    d = N.order
    report = QHyperReport()
    if d < 1:
        return report
    p = list(N.nums)
    if p0cert is None:
        p0cert = factor_side(p[0])
    if pdcert is None:
        pdcert = factor_side(p[d].shift_M(1 - d))
    roots: List[RatFunc] = []
    poly = newton_polygon(N)
    if poly.is_flat() and poly.hull[-1][0] == d:
        try:
            if q1cert is None:
                q1cert = factor_q1(N)
            roots = linear_q1_roots(q1cert)
            report.q1_filter = True
            if not roots:
                report.caveats.append("no linear factor at q = 1")
                return report
        except ZeroDivisionError:
            roots = []
    pairs = enumerate_candidates(p0cert, pdcert, roots, limit=limit)
    report.candidates = len(pairs)
    if limit is not None and len(pairs) >= limit:
        report.complete = False
        report.caveats.append(f"candidate list truncated at {limit}")
    if zs is not None:
        report.complete = False
        report.caveats.append("z restricted to the supplied values")
    jobs = [(N, pr.a, pr.b, zs) for pr in pairs]
    if parallel > 1 and len(jobs) > 1:
        with ProcessPoolExecutor(max_workers=parallel) as ex:
            results = list(ex.map(_try_pair_job, jobs, chunksize=max(1, len(jobs) // (4 * parallel))))
    else:
        results = [_try_pair_job(j) for j in jobs]
    report.tested = len(jobs)
    seen = set()
    for nfs in results:
        for nf in nfs:
            F = nf.factor()
            if str(F) not in seen:
                seen.add(str(F))
                report.factors.append(F)
                report.normal_forms.append(nf)
    order = sorted(range(len(report.factors)), key=lambda i: str(report.factors[i]))
    report.factors = [report.factors[i] for i in order]
    report.normal_forms = [report.normal_forms[i] for i in order]
    return report
