import random
from math import inf

import pytest

from qknot.algebra import RatFunc, parse_poly
from qknot.appendix import load_p74
from qknot.newton import (CertFactor, CertificateError, DegreePatterns, FactorizationCertificate,
                          IrreducibleProved, NewtonPolygon, PreconditionViolated, easy_irreducible,
                          factor_q1, minkowski_sum, newton_polygon, probable_irreducible_q1, valuation)
from qknot.qweyl import CommPoly, OreOperator, op_mul

from randgen import nonzero_poly, rand_operator

C = CommPoly.parse


def test_valuation():
    assert valuation(parse_poly("(q-1)^2*M")) == 2
    assert valuation(RatFunc(1, parse_poly("(q-1)*(M*q-1)"))) == -1
    assert valuation(RatFunc(0)) == inf


def test_valuation_min_rule():
    rng = random.Random(2)
    for _ in range(200):
        a = nonzero_poly(rng, dq=(0, 2), dm=(0, 1)) * parse_poly("q-1") ** rng.randint(0, 2)
        b = nonzero_poly(rng, dq=(0, 2), dm=(0, 1)) * parse_poly("q-1") ** rng.randint(0, 2)
        if not (a + b).is_zero():
            assert valuation(a + b) >= min(valuation(a), valuation(b))


def test_polygons():
    assert newton_polygon(OreOperator.parse("L^2+L+1")).hull == ((0, 0), (2, 0))
    A = NewtonPolygon.from_points([(0, 0), (2, 1), (3, -2)])
    assert minkowski_sum(A, NewtonPolygon.from_points([(0, 0)])) == A
    seg = minkowski_sum(NewtonPolygon.from_points([(0, 0), (1, 0)]), NewtonPolygon.from_points([(0, 0), (1, 1)]))
    assert seg.hull == ((0, 0), (1, 0), (2, 1))


def test_certificate_checks_product():
    p = C("(L-1)*(L-M)")
    cert = FactorizationCertificate(p, [CertFactor(C("L-1")), CertFactor(C("L-M"))])
    assert cert.degrees == [1, 1]
    with pytest.raises(CertificateError):
        FactorizationCertificate(p, [CertFactor(C("L-1")), CertFactor(C("L+M"))])


def test_easy_criterion():
    P = OreOperator.parse("L^2 - M")
    cert = FactorizationCertificate(P.at_q1(), [CertFactor(C("L^2 - M"))])
    assert easy_irreducible(P, cert) == "Irreducible"
    P74 = load_p74()
    assert easy_irreducible(P74, factor_q1(P74)) == "Inconclusive"
    P = OreOperator.parse("L^2 + q*M*L + 1")
    assert easy_irreducible(P, factor_q1(P)) == "Irreducible"
    with pytest.raises(PreconditionViolated):
        easy_irreducible(OreOperator.parse("(q-1)*L^2 + L + 1"), factor_q1(C("L+1")))


def test_easy_criterion_sound_on_products():
    rng = random.Random(4)
    for _ in range(40):
        Q = rand_operator(rng, rng.randint(1, 2), dq=(0, 1), dm=(0, 1), coeff=2)
        R = rand_operator(rng, rng.randint(1, 2), dq=(0, 1), dm=(0, 1), coeff=2)
        P = op_mul(Q, R)
        try:
            verdict = easy_irreducible(P, factor_q1(P))
        except PreconditionViolated:
            continue
        assert verdict == "Inconclusive"


def test_probable_irreducible():
    assert isinstance(probable_irreducible_q1(C("L^2 - M*(M+1)")), IrreducibleProved)
    res = probable_irreducible_q1(C("(L-1)*(L-M)"))
    assert isinstance(res, DegreePatterns) and (1, 1) in res.patterns
    res = probable_irreducible_q1(load_p74().at_q1())
    assert isinstance(res, DegreePatterns) and res.orders == {2, 3}


def test_degree_patterns_contain_true_split():
    rng = random.Random(8)
    for _ in range(20):
        f = C(f"L^2 + {rng.randint(1, 5)}*M*L + M^2 + {rng.randint(2, 6)}")
        g = C(f"L + M - {rng.randint(1, 5)}")
        res = probable_irreducible_q1(f * g, seed=rng.randint(0, 99))
        assert isinstance(res, DegreePatterns)
        assert all(sum(p) == 3 for p in res.patterns)
        assert 1 in res.orders and 2 in res.orders
