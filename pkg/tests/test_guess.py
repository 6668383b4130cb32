import pytest

from qknot.algebra import LaurentPoly, RatFunc, parse_poly
from qknot.guess import GuessProblem, InsufficientData, guess_recurrence
from qknot.jones import JonesCache, c_twist
from qknot.qweyl import OreOperator


def test_constant():
    rec = guess_recurrence(GuessProblem([LaurentPoly.const(1)] * 12, order=1, degM=0))
    assert rec.P == OreOperator.parse("L - 1")


def test_geometric():
    vals = [LaurentPoly.monomial(1, q=n) for n in range(12)]
    assert guess_recurrence(GuessProblem(vals, order=1, degM=0)).P == OreOperator.parse("L - q")


def test_lower_order_preferred():
    vals = [LaurentPoly.monomial(1, q=n) for n in range(20)]
    assert guess_recurrence(GuessProblem(vals, order=2, degM=1)).P.order == 1


def test_inhomogeneous():
    # f_{n+1} = q^n f_n + 1
    f = [LaurentPoly.const(0)]
    for n in range(20):
        f.append(LaurentPoly.monomial(1, q=n) * f[-1] + 1)
    rec = guess_recurrence(GuessProblem(f, order=1, degM=1, inhomogeneous=True))
    assert rec is not None and not rec.b.is_zero()
    for n in range(15):
        assert rec.residual(lambda i: f[i], n).is_zero()


def test_insufficient():
    with pytest.raises(InsufficientData):
        guess_recurrence(GuessProblem([LaurentPoly.const(1)] * 4, order=2, degM=1))


def test_c2_needs_m_degree_three():
    cache = JonesCache()
    vals = [c_twist(2, n, cache) for n in range(40)]
    assert guess_recurrence(GuessProblem(vals, order=2, degM=2)) is None


def test_from_json():
    p = GuessProblem.from_json({"offset": 3, "values": ["1", "q", "q^2"]}, order=1, degM=0)
    assert p.offset == 3 and p.values[2] == parse_poly("q^2")
