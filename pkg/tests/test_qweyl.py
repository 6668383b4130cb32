import random

import pytest

from qknot.algebra import LaurentPoly, PoleAtQ1, RatFunc, parse, parse_poly
from qknot.appendix import load_b74, load_p74, load_q1_factorizations, load_rec74
from qknot.jones import JonesCache, K74, jones_sequence, verify_recurrence
from qknot.qweyl import (CommPoly, InhomRecurrence, OreOperator, apply_to_sequence, homogenize,
                         is_palindromic, op_divmod_right, op_mul, specialize_q1)

from randgen import rand_operator

O = OreOperator.parse


def test_commutation():
    assert op_mul(O("L"), O("M")) == O("q*M*L")
    assert op_mul(O("L+1"), O("L-1")) == O("L^2-1")
    # L M L = q M L^2 and M L M = M^2 L, so the constant term is M^2
    assert op_mul(O("L-M"), O("L-M")) == O("L^2 - (q*M+M)*L + M^2")


def test_associative_distributive():
    rng = random.Random(1)
    for _ in range(40):
        A, B, C = (rand_operator(rng, rng.randint(0, 2), dq=(0, 1), dm=(0, 1), coeff=2) for _ in range(3))
        assert op_mul(op_mul(A, B), C) == op_mul(A, op_mul(B, C))
        assert op_mul(A, B + C) == op_mul(A, B) + op_mul(A, C)


def test_divmod():
    assert op_divmod_right(O("L^2-1"), O("L-1")) == (O("L+1"), OreOperator([0]))
    rng = random.Random(2)
    for _ in range(40):
        Q = rand_operator(rng, rng.randint(0, 2), dq=(0, 1), dm=(0, 1), coeff=2)
        R = rand_operator(rng, rng.randint(1, 2), dq=(0, 1), dm=(0, 1), coeff=2)
        q, r = op_divmod_right(op_mul(Q, R), R)
        assert q == Q and r.is_zero()


def test_divmod_zero_divisor():
    with pytest.raises(ZeroDivisionError):
        op_divmod_right(O("L"), OreOperator([0]))


def test_normalize():
    assert O("(q-1)*L + (q-1)*M").normalize() == O("L + M")
    assert OreOperator([RatFunc(1, parse_poly("M-1")), RatFunc(1, parse_poly("M-1"))]).normalize() == O("L+1")
    P = load_p74()
    assert P.normalize() == P


def test_palindromy():
    assert is_palindromic(load_p74()) == (1, 5)
    assert is_palindromic(O("L-1")) is not None
    assert is_palindromic(O("L - 2*M")) is None
    # invariant under units
    P = O("q*M*L^2 + (M+1)*L + q^-1")
    res = is_palindromic(P)
    assert is_palindromic(P.lmul(RatFunc(LaurentPoly.monomial(3, q=2, M=1)))) == res


def test_homogenize():
    assert homogenize(InhomRecurrence(O("L-1"), RatFunc(1))) == O("L^2 - 2*L + 1")
    H = homogenize(InhomRecurrence(O("L - q*M"), RatFunc(parse_poly("M"))))
    # f_{n+1} = q^(n+1) f_n + q^n from f_0 = 1
    f = {0: LaurentPoly.const(1)}
    for n in range(12):
        f[n + 1] = LaurentPoly.monomial(1, q=n + 1) * f[n] + LaurentPoly.monomial(1, q=n)
    for n in range(9):
        assert apply_to_sequence(H, f.__getitem__, n).is_zero()


def test_homogenized_p74_annihilates_jones():
    H = homogenize(load_rec74())
    assert H.order == 6
    assert verify_recurrence(InhomRecurrence(H, RatFunc(0)), K74, range(1, 10), JonesCache()).ok


def test_apply():
    one = lambda n: LaurentPoly.const(1)
    assert apply_to_sequence(O("L-1"), one, 5).is_zero()


def test_apply_composes():
    rng = random.Random(4)
    f = lambda n: parse_poly(f"q^{n} + {n}")
    for _ in range(15):
        Q = rand_operator(rng, rng.randint(0, 2), dq=(0, 1), dm=(0, 1), coeff=2)
        R = rand_operator(rng, rng.randint(0, 2), dq=(0, 1), dm=(0, 1), coeff=2)
        g = lambda n: RatFunc.coerce(apply_to_sequence(R, f, n))
        for n in range(3):
            lhs = RatFunc.coerce(apply_to_sequence(op_mul(Q, R), f, n))
            rhs = sum((Q.coeff(j).at_M_qpow(n) * g(n + j) for j in range(Q.order + 1)), RatFunc(0))
            assert lhs == rhs


def test_specialize_q1():
    assert specialize_q1(O("L - q*M")) == parse("L - M", "commutative")
    assert specialize_q1(O("(q-1)*L + 1")) == CommPoly([1])
    with pytest.raises(PoleAtQ1):
        specialize_q1(OreOperator([1, RatFunc(1, parse_poly("q-1"))]))
    assert specialize_q1(load_p74()) == load_q1_factorizations()["P74"].expand()


def test_specialize_multiplicative():
    rng = random.Random(6)
    for _ in range(30):
        Q = rand_operator(rng, rng.randint(1, 2), dq=(0, 1), dm=(0, 1), coeff=2)
        R = rand_operator(rng, rng.randint(1, 2), dq=(0, 1), dm=(0, 1), coeff=2)
        try:
            lhs = specialize_q1(op_mul(Q, R))
            rhs = specialize_q1(Q) * specialize_q1(R)
        except PoleAtQ1:
            continue
        assert lhs == rhs


def test_json_roundtrip():
    rec = load_rec74()
    assert InhomRecurrence.from_json(rec.to_json()).P == rec.P
    assert OreOperator.from_json({"op": [[0, "1"], [2, "q*M-1"]]}) == O("(q*M-1)*L^2 + 1")
