import pytest

from qknot.appendix import load_p74
from qknot.newton import PreconditionViolated
from qknot.pipeline import INCONCLUSIVE, PROVED, REDUCIBLE, cmd_irreducible
from qknot.qweyl import OreOperator, op_mul

O = OreOperator.parse


def test_easy_proof():
    rep = cmd_irreducible(O("L^2 + q*M*L + 1"))
    assert rep.verdict == PROVED
    assert any(s["step"] == "easy-criterion" for s in rep.steps)


def test_linear_witness():
    P = op_mul(O("L^2 + q*L + M"), O("L - q*M"))
    rep = cmd_irreducible(P)
    assert rep.verdict == REDUCIBLE
    assert P.divmod_right(rep.witness)[1].is_zero()


def test_proved_via_exterior_power():
    # q = 1 image (L - M)(L + M) splits; r(qM) r(M) = (q + 1) M^2 / 2 has no solution
    P = O("2*L^2 - (q+1)*M^2")
    rep = cmd_irreducible(P)
    assert rep.verdict == PROVED, rep.to_json()


def test_order_two_factor_not_reconstructed():
    P = op_mul(O("L^2 + M*L + 1"), O("L^2 - (M+1)*L + q*M"))
    rep = cmd_irreducible(P)
    assert rep.verdict in (INCONCLUSIVE, REDUCIBLE)
    assert rep.verdict != PROVED


def test_budget_is_inconclusive():
    rep = cmd_irreducible(load_p74(), budget=20000)
    assert rep.verdict == INCONCLUSIVE and rep.budget_abort
    assert "BudgetExceeded" in rep.reason


def test_lead_vanishes_at_q1():
    with pytest.raises(PreconditionViolated):
        cmd_irreducible(O("(q-1)*L^2 + L + 1"))


def test_split_image_with_witness():
    P = O("L^2 - q*M^2")
    rep = cmd_irreducible(P)
    assert rep.verdict == REDUCIBLE and rep.witness == O("L + M")


def test_order_one():
    assert cmd_irreducible(O("L - M")).verdict == PROVED
