import random

import pytest

from qknot.algebra import RatFunc, parse_poly
from qknot.plethysm import (ConstantTermNotOne, SymPoly, apply_psi, from_e_basis, plethysm_ee, psi_table,
                            to_e_basis, wedge_q1)
from qknot.qweyl import CommPoly

C = CommPoly.parse
E = SymPoly.e


def test_plethysm_ee():
    for d in range(1, 6):
        for k in range(1, d + 1):
            assert plethysm_ee(1, k, d) == E(k)
    assert plethysm_ee(2, 2, 5) == SymPoly.parse("e_1e_3-e_4")
    assert plethysm_ee(2, 3, 5) == SymPoly.parse("e_2e_4-e_1e_5")


def test_tables():
    assert psi_table(5, 2)[-1] == SymPoly.parse("e_5^4")
    assert psi_table(5, 3)[-1] == SymPoly.parse("e_5^6")
    for d in range(1, 6):
        assert psi_table(d, d) == (SymPoly.parse("1"), E(d))


def test_weighted_degree():
    # the L^i coefficient of psi_k is homogeneous of weight k*i
    for k in (2, 3):
        for i, t in enumerate(psi_table(5, k)):
            assert {SymPoly({mono: 1}).degree() for mono in t.terms} == {k * i}


def test_apply_psi_small():
    assert apply_psi(C("1 + M*L"), 1) == C("1 + M*L")
    p = C("(1 + M*L)*(1 + (M+1)*L)")
    assert apply_psi(p, 2) == C("1 + M*(M+1)*L")
    with pytest.raises(ConstantTermNotOne):
        apply_psi(C("2 + L"), 1)


def test_multiplicative_on_roots():
    rng = random.Random(31)
    for _ in range(10):
        roots = [rng.randint(-5, 5) or 1 for _ in range(4)]
        p = CommPoly([1])
        for x in roots:
            p = p * C(f"1 + ({x})*M*L")
        got = apply_psi(p, 2)
        want = CommPoly([1])
        for i in range(4):
            for j in range(i + 1, 4):
                want = want * C(f"1 + ({roots[i] * roots[j]})*M^2*L")
        assert got == want


def test_wedge_q1_roots():
    p = C("(L - 2)*(L - M)*(L + 3)")
    assert wedge_q1(p, 2) == C("(L - 2*M)*(L + 6)*(L + 3*M)")


def test_e_basis_roundtrip():
    for t in psi_table(4, 2):
        assert to_e_basis(from_e_basis(t, 4), 4) == t
