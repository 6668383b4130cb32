"""Shipped 7_4 data: loading with checksums and mathematical re-verification."""

from __future__ import annotations

import hashlib
import json
from dataclasses import dataclass, field
from functools import lru_cache
from importlib import resources
from typing import Dict, List, Tuple

from .algebra import LaurentPoly, RatFunc, parse, parse_poly
from .qhyper import FactorSide
from .qweyl import CommPoly, InhomRecurrence, OreOperator


class DataError(ValueError):
    """A shipped data file is missing, altered or fails its identities."""


DATA_FILES = ("p74.op", "b74.expr", "v_polys.json", "q1_factorizations.json", "table2_factors.json")


def _read(name: str) -> bytes:
    try:
        return resources.files("qknot.data").joinpath(name).read_bytes()
    except FileNotFoundError as e:
        raise DataError(f"missing data file {name}") from e


def verify_checksums() -> Dict[str, bool]:
    sums = json.loads(_read("checksums.json"))
    out = {}
    for name in DATA_FILES:
        out[name] = hashlib.sha256(_read(name)).hexdigest() == sums.get(name)
    return out


def _checked(name: str) -> str:
    sums = json.loads(_read("checksums.json"))
    raw = _read(name)
    if hashlib.sha256(raw).hexdigest() != sums.get(name):
        raise DataError(f"checksum mismatch for {name}")
    return raw.decode()


@lru_cache(maxsize=None)
def load_p74() -> OreOperator:
    return OreOperator.from_json(json.loads(_checked("p74.op")))


@lru_cache(maxsize=None)
def load_b74() -> LaurentPoly:
    return parse_poly(_checked("b74.expr").strip())


def load_rec74() -> InhomRecurrence:
    return InhomRecurrence(load_p74(), RatFunc(load_b74()))


@lru_cache(maxsize=None)
def load_v_polys() -> Dict[str, LaurentPoly]:
    return {k: parse_poly(v) for k, v in json.loads(_checked("v_polys.json")).items()}


@dataclass
class ShippedFactorization:
    """``unit * prod factor^mult``; factors free of L are scalars in M."""

    name: str
    unit: LaurentPoly
    scalars: List[Tuple[LaurentPoly, int]] = field(default_factory=list)
    lfactors: List[Tuple[CommPoly, int]] = field(default_factory=list)

    def scalar_part(self) -> LaurentPoly:
        out = self.unit
        for p, m in self.scalars:
            out = out * p ** m
        return out

    def l_product(self) -> CommPoly:
        out = CommPoly([1])
        for f, m in self.lfactors:
            for _ in range(m):
                out = out * f
        return out

    def expand(self):
        if not self.lfactors:
            return self.scalar_part()
        return CommPoly([RatFunc(self.scalar_part())]) * self.l_product()


@lru_cache(maxsize=None)
def load_q1_factorizations() -> Dict[str, ShippedFactorization]:
    out = {}
    for name, v in json.loads(_checked("q1_factorizations.json")).items():
        sf = ShippedFactorization(name, parse_poly(v["unit"]))
        for f in v["factors"]:
            if "L" in f["poly"]:
                sf.lfactors.append((parse(f["poly"], "commutative"), int(f["mult"])))
            else:
                sf.scalars.append((parse_poly(f["poly"]), int(f["mult"])))
        out[name] = sf
    return out


@lru_cache(maxsize=None)
def load_table2() -> Dict[str, dict]:
    out = {}
    for name, v in json.loads(_checked("table2_factors.json")).items():
        out[name] = {
            "p0": FactorSide.from_json(v["p0"]),
            "pd": FactorSide.from_json(v["pd"]),
            "rho": RatFunc(parse_poly(v["rho"])),
        }
    return out


# identities


def palindromy_holds(P: OreOperator) -> bool:
    """``a_j(q, M) = -q^60 M^24 a_{5-j}(q, (q^5 M)^-1)`` for all j."""
    if P.order != 5:
        return False
    for j in range(6):
        lhs = P.coeff(j)
        src = P.coeff(5 - j)
        rhs = RatFunc(src.num.invert_M().shift_M(5), src.den.invert_M().shift_M(5))
        rhs = -rhs * RatFunc(LaurentPoly.monomial(1, q=60, M=24))
        if lhs != rhs:
            return False
    return True


def q1_identity_p74() -> bool:
    sf = load_q1_factorizations()["P74"]
    return load_p74().at_q1() == sf.expand()


def q1_identity_b74() -> bool:
    sf = load_q1_factorizations()["b74"]
    return load_b74().at_q1() == sf.expand()


def wedge_q1_consistent(name: str) -> Dict[str, bool]:
    """Cross-checks of a shipped exterior-power q=1 factorization.

    The L-factors must multiply to the plethysm image of ``P(1, M, L)``, and
    the L^0 and top coefficients must agree with the shipped factor lists at
    q = 1 (same powers of M - 1, M + 1 and the same ratio ``M^k``).
    """
    from .plethysm import wedge_q1

    k = {"P74_wedge2": 2, "P74_wedge3": 3}[name]
    sf = load_q1_factorizations()[name]
    tab = load_table2()[f"wedge{k}"]
    out = {}
    out["plethysm"] = sf.l_product() == wedge_q1(load_p74().at_q1(), k)
    full = sf.expand()
    ratio = full.coeff(0) / full.lead()
    p0 = tab["p0"]
    pd = tab["pd"]
    m0 = sum(f.mult for f in p0.factors if f.poly is not None and f.poly == LaurentPoly.monomial(1, M=1))
    out["ratio"] = ratio == RatFunc(LaurentPoly.monomial(1, M=m0))
    minus = plus = 0
    for f in pd.factors:
        if f.opaque:
            continue
        img = f.poly.at_q1()
        if img.deg_M() == 2:
            minus += f.mult
            plus += f.mult
        elif img.coeff(M=0) < 0:
            minus += f.mult
        else:
            plus += f.mult
    lead = full.lead().num
    mm = LaurentPoly.from_terms([(0, 1, 1), (0, 0, -1)])
    mp = LaurentPoly.from_terms([(0, 1, 1), (0, 0, 1)])
    try:
        rest = lead.exact_div(mm ** minus * mp ** plus)
        out["lead"] = not mm.divides(rest) and not mp.divides(rest)
    except ValueError:
        out["lead"] = False
    return out


@dataclass
class AppendixReport:
    checks: Dict[str, bool] = field(default_factory=dict)
    notes: List[str] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return all(self.checks.values())

    def to_json(self) -> dict:
        return {"checks": dict(sorted(self.checks.items())), "ok": self.ok, "notes": self.notes}


def verify_appendix(nmax: int = 10, degree_nmax: int = 12) -> AppendixReport:
    from .jones import JonesCache, K74, degree_check, verify_recurrence
    from .qweyl import homogenize

    rep = AppendixReport()
    for name, ok in verify_checksums().items():
        rep.checks[f"checksum:{name}"] = ok
    P = load_p74()
    rep.checks["palindromy"] = palindromy_holds(P)
    rep.checks["q1:P74"] = q1_identity_p74()
    rep.checks["q1:b74"] = q1_identity_b74()
    for name in ("P74_wedge2", "P74_wedge3"):
        for k, ok in wedge_q1_consistent(name).items():
            rep.checks[f"q1:{name}:{k}"] = ok
    cache = JonesCache()
    rec = load_rec74()
    r = verify_recurrence(rec, K74, range(1, nmax + 1), cache)
    rep.checks["recurrence"] = r.ok
    if not r.ok:
        flipped = InhomRecurrence(rec.P, -rec.b)
        if verify_recurrence(flipped, K74, range(1, nmax + 1), cache).ok:
            rep.notes.append("P J = -b holds for every checked n: the shipped b has the opposite sign")
    rep.checks["homogenized"] = verify_recurrence(homogenize(rec), K74, range(1, nmax), cache).ok
    rep.checks["degree_law"] = degree_check(K74, range(2, degree_nmax + 1), cache).ok
    return rep
