import random
from fractions import Fraction

import pytest

from qknot.algebra import RatFunc, parse_poly
from qknot.extpow import (BudgetExceeded, associated_operator, exterior_power, factor_order_candidates,
                          iterate_solution, minor_sequence, apply_numeric, waj_consistent, waj_operator)
from qknot.appendix import load_p74
from qknot.qweyl import OreOperator, op_mul

from randgen import rand_operator, rand_rational

O = OreOperator.parse


def test_k1_is_normalize():
    P = O("(q*M+1)*L^2 + (2*q-M)*L + q^2*M")
    assert exterior_power(P, 1) == P.normalize()


def test_lemma2_order_two():
    P = O("L^2 + (q*M-1)*L + q^3*M^2")
    assert exterior_power(P, 2) == O("L - q^3*M^2")


def test_top_power_nonmonic():
    P = O("(M+1)*L^3 + q*L^2 + M*L + (q*M - 2)")
    assert exterior_power(P, 3) == OreOperator([RatFunc(parse_poly("q*M-2"), parse_poly("M+1")), 1]).normalize()


def _numeric(P, E, rows, rng, nvals=10):
    start = 3
    for _ in range(20):
        q0 = rand_rational(rng)
        sols = [iterate_solution(P, q0, [Fraction(rng.randint(-4, 4)) for _ in range(P.order)],
                                 nvals + E.order + max(rows) + 1, start) for _ in range(len(rows))]
        W = minor_sequence(sols, rows, nvals + E.order)
        if any(W):
            return all(apply_numeric(E, q0, W, n, start) == 0 for n in range(nvals))
    raise AssertionError("degenerate")


def test_casoratian_order3():
    rng = random.Random(12)
    for _ in range(5):
        P = rand_operator(rng, 3, dq=(0, 1), dm=(0, 1), coeff=3)
        E = exterior_power(P, 2)
        assert E.order <= 3
        assert _numeric(P, E, [0, 1], rng)


def test_product_has_linear_factor():
    rng = random.Random(13)
    for _ in range(5):
        Q = rand_operator(rng, 1, dq=(0, 1), dm=(0, 1), coeff=2)
        R = rand_operator(rng, 2, dq=(0, 1), dm=(0, 1), coeff=2)
        E = exterior_power(op_mul(Q, R), 2)
        r0 = R.coeff(0) / R.lead()
        lin = OreOperator([-r0, 1])
        assert E.divmod_right(lin)[1].is_zero()


def test_associated_operators():
    rng = random.Random(14)
    Q = rand_operator(rng, 1, dq=(0, 1), dm=(0, 1), coeff=2)
    R = O("L^2 + q*M*L + (M+1)")
    P = op_mul(Q, R)
    k = 2
    assert associated_operator(P, k, k) == exterior_power(P, k)
    for j in range(k):
        A = associated_operator(P, k, j)
        assert _numeric(P, A, [r for r in range(k + 1) if r != j], rng)
    # a_j(q, q^n) w_n is annihilated by the first-order operator from waj_operator
    for j in (0, 1):
        W = waj_operator(R, j)
        assert W.order == 1
        assert waj_consistent(R, j, W)
        assert associated_operator(P, k, j).divmod_right(W)[1].is_zero()


def test_bad_k():
    with pytest.raises(ValueError):
        exterior_power(O("L+1"), 2)
    with pytest.raises(ValueError):
        associated_operator(O("L^2+1"), 2, 0)


def test_order_candidates():
    assert factor_order_candidates([2, 3]) == {2, 3}
    assert factor_order_candidates([1, 1, 1]) == {1, 2}
    assert factor_order_candidates([5, 6]) == {5, 6}


def test_budget_abort():
    with pytest.raises(BudgetExceeded) as e:
        exterior_power(load_p74(), 2, budget=20000)
    assert e.value.terms > e.value.budget
