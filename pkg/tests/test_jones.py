import pytest

from qknot.algebra import LaurentPoly, RatFunc, parse_poly
from qknot.appendix import load_rec74
from qknot.jones import (JonesCache, K74, KnotSpec, QSeries, c_twist, degree_check, degree_law_74,
                         jones_double_twist, qpochhammer, verify_recurrence)
from qknot.qweyl import InhomRecurrence, OreOperator


def test_qpochhammer():
    assert qpochhammer(0, 1, 1, 0).to_laurent() == 1
    assert qpochhammer(0, 1, 1, 2).to_laurent() == parse_poly("(1-q)*(1-q^2)")
    assert qpochhammer(1, 1, 1, 2, n=1).to_laurent() == parse_poly("(1-q^2)*(1-q^3)")
    assert qpochhammer(1, -1, -1, 2, n=3).to_laurent() == parse_poly("(1-q^2)*(1-q)")


def test_unknot_normalization():
    cache = JonesCache()
    for p in (-2, -1, 1, 2, 3):
        for pp in (-2, 1, 2):
            assert jones_double_twist(KnotSpec(p, pp), 1, cache).to_laurent() == 1


def test_c_initial():
    for p in range(-3, 4):
        if p:
            assert c_twist(p, 0).to_laurent() == 1
            assert c_twist(p, -1).is_zero()


def test_degree_law():
    assert [degree_law_74(n) for n in (2, 3, 4)] == [8, 23, 45]
    rep = degree_check(K74, range(2, 8))
    assert rep.ok and rep.nonlinear


def test_verify_recurrence_mutation():
    rec = load_rec74()
    flipped = InhomRecurrence(rec.P, -rec.b)
    cache = JonesCache()
    assert verify_recurrence(flipped, K74, range(1, 6), cache).ok
    nums = list(rec.P.nums)
    nums[2] = nums[2] + 1
    bad = InhomRecurrence(OreOperator(nums), -rec.b)
    assert verify_recurrence(bad, K74, range(1, 6), cache).first_failure() <= 3


def test_cache_reuse():
    cache = JonesCache()
    a = jones_double_twist(K74, 6, cache)
    assert jones_double_twist(K74, 6, cache) == a
    assert jones_double_twist(K74, 6) == a


def test_qseries():
    s = QSeries.from_laurent(parse_poly("q^-2 + 3*q^4"))
    assert (s.ldeg_q(), s.deg_q()) == (-2, 4)
    with pytest.raises(ValueError):
        QSeries.from_laurent(parse_poly("M"))
