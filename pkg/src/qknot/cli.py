"""``qknot`` command line.

Every subcommand builds a JSON-able result plus a table of rows; ``--format``
picks text, json or tsv rendering. Exit codes: 0 result produced, 2 bad input
or data, 3 budget abort.
"""

from __future__ import annotations

import argparse
import json
import logging
import os
import sys
from typing import Callable, Dict, List, Optional, Tuple

from .algebra import ParseError, RatFunc, parse_poly
from .extpow import DEFAULT_BUDGET, BudgetExceeded

log = logging.getLogger("qknot")

EXIT_OK, EXIT_DATA, EXIT_BUDGET = 0, 2, 3


class Result:
    def __init__(self, obj: dict, header: Optional[List[str]] = None, rows: Optional[List[list]] = None,
                 text: Optional[str] = None, code: int = EXIT_OK):
        self.obj = obj
        self.header = header or []
        self.rows = rows or []
        self.text = text
        self.code = code


# input helpers


def _read_arg(s: str) -> str:
    """A file's contents if ``s`` names a file, otherwise ``s`` itself."""
    if s == "-":
        return sys.stdin.read()
    if os.path.isfile(s):
        with open(s) as fh:
            return fh.read()
    return s


def load_operator(s: str):
    from .qweyl import OreOperator

    if s in ("p74", "P74"):
        from .appendix import load_p74

        return load_p74()
    text = _read_arg(s).strip()
    return OreOperator.parse(text)


def _json_arg(s: Optional[str]):
    if s is None:
        return None
    return json.loads(_read_arg(s))


# subcommands


def cmd_jones(a) -> Result:
    from .jones import JonesCache, KnotSpec, jones_double_twist

    knot = KnotSpec(a.p, a.pp)
    cache = JonesCache()
    ns = range(a.n, a.n + 1) if a.nmax is None else range(a.n, a.nmax + 1)
    rows = []
    for n in ns:
        J = jones_double_twist(knot, n, cache)
        rows.append([n, J.ldeg_q(), J.deg_q(), str(J)])
    obj = {"knot": knot.name, "values": [{"n": r[0], "J": r[3]} for r in rows]}
    return Result(obj, ["n", "ldeg", "deg", "J"], rows)


def cmd_verify(a) -> Result:
    from .appendix import load_rec74
    from .jones import JonesCache, KnotSpec, verify_recurrence
    from .qweyl import InhomRecurrence

    if a.rec:
        rec = InhomRecurrence.from_json(_read_arg(a.rec))
    else:
        rec = load_rec74()
    rep = verify_recurrence(rec, KnotSpec(a.p, a.pp), range(a.nmin, a.nmax + 1), JonesCache())
    rows = [[n, "pass" if ok else "fail"] for n, ok in rep.rows]
    return Result(rep.to_json(), ["n", "status"], rows)


def cmd_degrees(a) -> Result:
    from .jones import JonesCache, KnotSpec, degree_check

    rep = degree_check(KnotSpec(a.p, a.pp), range(a.nmin, a.nmax + 1), JonesCache())
    rows = [[n, d, e, "ok" if ok else "MISMATCH"] for n, d, e, ok in rep.rows]
    obj = rep.to_json()
    if a.plot:
        from .plotting import plot_degrees

        plot_degrees(rep.rows, a.plot, "top q-degree of J_n")
        obj["plot"] = a.plot
    return Result(obj, ["n", "deg", "predicted", "status"], rows)


def cmd_newton(a) -> Result:
    from .newton import newton_polygon

    P = load_operator(a.operator)
    N = newton_polygon(P)
    obj = N.to_json()
    obj["slopes"] = [str(s) for s in N.slopes()]
    obj["flat"] = N.is_flat()
    rows = [[j, v, "vertex" if (j, v) in N.hull else ""] for j, v in N.points]
    if a.plot:
        from .plotting import plot_newton

        plot_newton(N.points, N.hull, a.plot, "Newton polygon")
        obj["plot"] = a.plot
    return Result(obj, ["j", "valuation", "hull"], rows)


def _op_result(E, extra: dict) -> Result:
    rows = [[j, str(E.coeff(j))] for j in range(E.order + 1)]
    obj = dict(extra)
    obj["operator"] = E.to_json()
    obj["order"] = E.order
    return Result(obj, ["j", "coefficient"], rows)


def cmd_extpow(a) -> Result:
    from .extpow import exterior_power

    P = load_operator(a.operator)
    E = exterior_power(P, a.k, budget=a.budget, seed=a.seed)
    return _op_result(E, {"k": a.k})


def cmd_assoc(a) -> Result:
    from .extpow import associated_operator

    P = load_operator(a.operator)
    E = associated_operator(P, a.k, a.j, budget=a.budget, seed=a.seed)
    return _op_result(E, {"k": a.k, "j": a.j})


def cmd_qhyper(a) -> Result:
    from .newton import FactorizationCertificate
    from .qhyper import FactorSide, count_candidates, find_linear_right_factors

    if a.table2:
        from .appendix import load_table2

        t = load_table2()[a.table2]
        n = count_candidates(t["p0"], t["pd"], [t["rho"]])
        obj = {"table": a.table2, "rho": str(t["rho"]), "candidates": n}
        return Result(obj, ["table", "candidates"], [[a.table2, n]])
    if not a.operator:
        raise ValueError("qhyper needs --operator or --table2")
    P = load_operator(a.operator)
    p0 = FactorSide.from_json(_json_arg(a.p0_factors)) if a.p0_factors else None
    pd = FactorSide.from_json(_json_arg(a.pd_factors)) if a.pd_factors else None
    q1 = FactorizationCertificate.from_json(_json_arg(a.q1_cert), P.at_q1()) if a.q1_cert else None
    zs = [RatFunc(parse_poly(z)) for z in a.zs.split(",")] if a.zs else None
    rep = find_linear_right_factors(P, p0, pd, q1, zs=zs, parallel=a.parallel)
    rows = [[str(F)] for F in rep.factors]
    return Result(rep.to_json(), ["factor"], rows)


def cmd_plethysm(a) -> Result:
    from .plethysm import apply_psi, psi_table
    from .qweyl import CommPoly

    if a.apply:
        p = CommPoly.parse(_read_arg(a.apply).strip())
        r = apply_psi(p, a.k)
        rows = [[i, str(r.coeff(i))] for i in range(r.order + 1)]
        return Result({"k": a.k, "result": str(r)}, ["i", "coefficient"], rows)
    table = psi_table(a.d, a.k)
    rows = [[i, str(s)] for i, s in enumerate(table)]
    return Result({"d": a.d, "k": a.k, "coefficients": [str(s) for s in table]}, ["i", "e_i o e_k"], rows)


def cmd_guess(a) -> Result:
    from .guess import GuessProblem, guess_recurrence

    prob = GuessProblem.from_json(_read_arg(a.data), a.order, a.degm, a.inhom)
    rec = guess_recurrence(prob)
    if rec is None:
        return Result({"found": False}, ["found"], [["no"]])
    obj = {"found": True, **rec.to_json()}
    rows = [[j, str(rec.P.coeff(j))] for j in range(rec.P.order + 1)]
    if not rec.b.is_zero():
        rows.append(["b", str(rec.b)])
    return Result(obj, ["j", "coefficient"], rows)


def cmd_irreducible(a) -> Result:
    from .newton import FactorizationCertificate
    from .pipeline import cmd_irreducible as run

    P = load_operator(a.operator)
    cert = FactorizationCertificate.from_json(_json_arg(a.cert), P.at_q1()) if a.cert else None
    rep = run(P, cert, budget=a.budget, seed=a.seed, parallel=a.parallel)
    rows = [[s["step"], json.dumps({k: v for k, v in s.items() if k != "step"}, sort_keys=True)] for s in rep.steps]
    rows.append(["verdict", rep.verdict])
    code = EXIT_BUDGET if rep.budget_abort and rep.verdict == "Inconclusive" else EXIT_OK
    return Result(rep.to_json(), ["step", "detail"], rows, code=code)


def cmd_verify_appendix(a) -> Result:
    from .appendix import verify_appendix

    rep = verify_appendix(a.nmax, a.degree_nmax)
    rows = [[k, "pass" if v else "FAIL"] for k, v in sorted(rep.checks.items())]
    rows += [["note", n] for n in rep.notes]
    return Result(rep.to_json(), ["check", "status"], rows)


# rendering


def render(res: Result, fmt: str) -> str:
    if fmt == "json":
        return json.dumps(res.obj, indent=1, sort_keys=True)
    if fmt == "tsv":
        lines = ["\t".join(res.header)] if res.header else []
        lines += ["\t".join(str(x) for x in r) for r in res.rows]
        return "\n".join(lines)
    if res.text is not None:
        return res.text
    if not res.rows:
        return json.dumps(res.obj, sort_keys=True)
    widths = [max(len(str(x)) for x in col) for col in zip(res.header, *res.rows)] if res.header else None
    lines = []
    if widths:
        lines.append("  ".join(str(h).ljust(w) for h, w in zip(res.header, widths)).rstrip())
    for r in res.rows:
        if widths:
            lines.append("  ".join(str(x).ljust(w) for x, w in zip(r, widths)).rstrip())
        else:
            lines.append("  ".join(str(x) for x in r))
    return "\n".join(lines)


COMMANDS: Dict[str, Callable] = {
    "jones": cmd_jones,
    "verify": cmd_verify,
    "degrees": cmd_degrees,
    "newton": cmd_newton,
    "extpow": cmd_extpow,
    "assoc": cmd_assoc,
    "qhyper": cmd_qhyper,
    "plethysm": cmd_plethysm,
    "guess": cmd_guess,
    "irreducible": cmd_irreducible,
    "verify-appendix": cmd_verify_appendix,
}


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--format", choices=("text", "json", "tsv"), default=argparse.SUPPRESS)
    common.add_argument("--seed", type=int, default=argparse.SUPPRESS)
    common.add_argument("--budget", type=int, default=argparse.SUPPRESS)
    common.add_argument("--parallel", type=int, default=argparse.SUPPRESS)
    common.add_argument("-v", "--verbose", action="store_true", default=argparse.SUPPRESS)

    p = argparse.ArgumentParser(prog="qknot", description="q-holonomic tools for colored Jones polynomials",
                                parents=[common])
    sub = p.add_subparsers(dest="command", required=True)

    s = sub.add_parser("jones", parents=[common], help="colored Jones polynomial of a double twist knot")
    s.add_argument("--p", type=int, default=2)
    s.add_argument("--pp", type=int, default=2)
    s.add_argument("--n", type=int, default=2)
    s.add_argument("--nmax", type=int)

    s = sub.add_parser("verify", parents=[common], help="check an inhomogeneous recurrence on Jones values")
    s.add_argument("--rec", help="JSON {P, b}; default: shipped 7_4 recurrence")
    s.add_argument("--p", type=int, default=2)
    s.add_argument("--pp", type=int, default=2)
    s.add_argument("--nmin", type=int, default=1)
    s.add_argument("--nmax", type=int, default=10)

    s = sub.add_parser("degrees", parents=[common], help="degree law of J_n")
    s.add_argument("--p", type=int, default=2)
    s.add_argument("--pp", type=int, default=2)
    s.add_argument("--nmin", type=int, default=2)
    s.add_argument("--nmax", type=int, default=12)
    s.add_argument("--plot", metavar="FILE", help="write a figure (png, pdf, svg)")

    s = sub.add_parser("newton", parents=[common], help="Newton polygon at q = 1")
    s.add_argument("--operator", required=True, help="expression, file, or p74")
    s.add_argument("--plot", metavar="FILE", help="write a figure (png, pdf, svg)")

    s = sub.add_parser("extpow", parents=[common], help="exterior power")
    s.add_argument("--operator", required=True)
    s.add_argument("--k", type=int, required=True)

    s = sub.add_parser("assoc", parents=[common], help="associated operator")
    s.add_argument("--operator", required=True)
    s.add_argument("--k", type=int, required=True)
    s.add_argument("--j", type=int, required=True)

    s = sub.add_parser("qhyper", parents=[common], help="linear right factors")
    s.add_argument("--operator")
    s.add_argument("--p0-factors")
    s.add_argument("--pd-factors")
    s.add_argument("--q1-cert")
    s.add_argument("--zs", help="comma separated z values")
    s.add_argument("--table2", choices=("wedge2", "wedge3"), help="count candidates for shipped factor lists")

    s = sub.add_parser("plethysm", parents=[common], help="psi_k tables")
    s.add_argument("--d", type=int, default=5)
    s.add_argument("--k", type=int, default=2)
    s.add_argument("--apply", metavar="F", help="polynomial in L with constant term 1")

    s = sub.add_parser("guess", parents=[common], help="guess a recurrence from sequence values")
    s.add_argument("--data", required=True, help="JSON list of values or {offset, values}")
    s.add_argument("--order", type=int, required=True)
    s.add_argument("--degm", type=int, required=True)
    s.add_argument("--inhom", action="store_true")

    s = sub.add_parser("irreducible", parents=[common], help="irreducibility pipeline")
    s.add_argument("--operator", required=True)
    s.add_argument("--cert", help="q = 1 factorization certificate (JSON)")

    s = sub.add_parser("verify-appendix", parents=[common], help="re-verify the shipped 7_4 data")
    s.add_argument("--nmax", type=int, default=10)
    s.add_argument("--degree-nmax", type=int, default=12)
    return p


DEFAULTS = {"format": "text", "seed": 0, "budget": DEFAULT_BUDGET, "parallel": 1, "verbose": False}


def main(argv: Optional[List[str]] = None) -> int:
    from .newton import CertificateError, PreconditionViolated
    from .appendix import DataError

    a = build_parser().parse_args(argv)
    for k, v in DEFAULTS.items():
        if not hasattr(a, k):
            setattr(a, k, v)
    logging.basicConfig(level=logging.DEBUG if a.verbose else logging.WARNING, format="%(levelname)s %(message)s")
    try:
        res = COMMANDS[a.command](a)
    except BudgetExceeded as e:
        print(f"budget abort: {e}", file=sys.stderr)
        return EXIT_BUDGET
    except (ParseError, DataError, CertificateError, PreconditionViolated, ValueError,
            json.JSONDecodeError, OSError) as e:
        print(f"error: {e}", file=sys.stderr)
        return EXIT_DATA
    print(render(res, a.format))
    return res.code


if __name__ == "__main__":
    sys.exit(main())
