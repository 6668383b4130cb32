"""Irreducibility test for q-difference operators.

Easy criterion first; otherwise each possible order k of a right factor is
excluded by showing that the k-th exterior power has no linear right factor.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import List, Optional

from .extpow import DEFAULT_BUDGET, BudgetExceeded, exterior_power, factor_order_candidates
from .newton import FactorizationCertificate, PreconditionViolated, easy_irreducible, factor_q1
from .qhyper import find_linear_right_factors
from .qweyl import OreOperator

PROVED = "IrreducibleProved"
REDUCIBLE = "ReducibleWitness"
INCONCLUSIVE = "Inconclusive"


@dataclass
class PipelineReport:
    verdict: str = INCONCLUSIVE
    witness: Optional[OreOperator] = None
    reason: str = ""
    steps: List[dict] = field(default_factory=list)
    budget_abort: bool = False

    def log(self, step: str, **info):
        self.steps.append({"step": step, **info})

    def to_json(self) -> dict:
        out = {"verdict": self.verdict, "steps": self.steps}
        if self.witness is not None:
            out["witness"] = str(self.witness)
        if self.reason:
            out["reason"] = self.reason
        return out


def cmd_irreducible(P: OreOperator, cert: Optional[FactorizationCertificate] = None,
                    budget: int = DEFAULT_BUDGET, seed: int = 0, parallel: int = 1) -> PipelineReport:
    rep = PipelineReport()
    P = P.normalize()
    d = P.order
    if d < 1:
        raise ValueError("operator must have positive order")
    if d == 1:
        rep.verdict = PROVED
        rep.reason = "order one"
        return rep
    lead1 = P.nums[-1].at_q1()
    if lead1.is_zero():
        raise PreconditionViolated("leading coefficient vanishes at q = 1")
    if cert is None:
        cert = factor_q1(P)
        rep.log("q1-factorization", source="computed", degrees=cert.degrees)
    else:
        rep.log("q1-factorization", source="supplied", degrees=cert.degrees)
    if easy_irreducible(P, cert) == "Irreducible":
        rep.verdict = PROVED
        rep.reason = "q = 1 image irreducible of full order"
        rep.log("easy-criterion", result="Irreducible")
        return rep
    rep.log("easy-criterion", result="Inconclusive")
    orders = sorted(factor_order_candidates(cert, d))
    rep.log("candidate-orders", orders=orders)
    open_orders = []
    for k in orders:
        if k == 1:
            E = P
            q1 = cert
        else:
            try:
                E = exterior_power(P, k, budget=budget, seed=seed)
            except BudgetExceeded as e:
                rep.log("exterior-power", k=k, status="budget", terms=e.terms, budget=e.budget, step_reached=e.step)
                rep.budget_abort = True
                open_orders.append(k)
                continue
            rep.log("exterior-power", k=k, status="ok", order=E.order)
            q1 = None
        qh = find_linear_right_factors(E, q1cert=q1, parallel=parallel)
        rep.log("qhyper", k=k, **qh.to_json())
        if qh.factors:
            if k == 1:
                for F in qh.factors:
                    _, rem = P.divmod_right(F)
                    if rem.is_zero():
                        rep.verdict = REDUCIBLE
                        rep.witness = F
                        rep.reason = "linear right factor, remainder zero"
                        return rep
            open_orders.append(k)
            rep.log("note", k=k, text="linear right factor of the exterior power; order-k factor not reconstructed")
            continue
        if not qh.complete:
            open_orders.append(k)
    if not open_orders:
        rep.verdict = PROVED
        rep.reason = "no right factor of any admissible order"
        return rep
    if rep.budget_abort:
        rep.reason = f"BudgetExceeded for k in {open_orders}"
    else:
        rep.reason = f"undecided orders {open_orders}"
    return rep
