"""Regenerate the shipped 7_4 data files from a LaTeX-style transcription.

The factored coefficients below are kept in their transcribed form (top three
coefficients of the operator, the inhomogeneous part, the q=1 factor
polynomials). The remaining coefficients are filled in by palindromy. The
package loader re-verifies every identity, so a transcription slip shows
up as a failing check rather than as silent bad data.

Run from the repository root:  python3 tools/make_appendix_data.py
"""

import hashlib
import json
import re
import sys
from pathlib import Path

ROOT = Path(__file__).resolve().parents[1]
sys.path.insert(0, str(ROOT / "src"))

from qknot.algebra import LaurentPoly, parse  # noqa: E402
from qknot.qweyl import OreOperator  # noqa: E402

DATA = ROOT / "src" / "qknot" / "data"

A5 = r"""
(qM-1)(qM+1)(qM^2-1)(q^2M-1)(q^2M+1)(q^3M^2-1)(q^5M-1)(q^8(q+1)M^4-q^5(q^3+2q^2+q+1)M^3+
q^2(2q^4+q^3+2q^2+2q+1)M^2-q(q^3+2q^2+q+1)M+(q+1))
"""

A4 = r"""
q(qM-1)(qM+1)(qM^2-1)(q^3M^2-1)(q^4M-1)^2(q^4M+1)(q^{33}(q+1)M^{11}-q^{29}(q+2)(q^3+q+1)M^{10}+
q^{24}(q+1)(2q^6-2q^5+5q^4+q^3+4q^2+3q-1)M^9-q^{20}(4q^7+2q^6+9q^5+10q^4+6q^3+6q^2-q-2)M^8-
q^{16}(2q^{11}+q^9-2q^8-4q^7-12q^5-10q^4-3q^3+6q+3)M^7+
q^{12}(q^{13}+2q^{12}+5q^{11}+q^{10}+4q^9-2q^7-8q^5+q^4+7q^3+7q^2+7q+2)M^6-
q^9(q^{13}+3q^{12}+8q^{11}+8q^{10}+q^9+4q^8+q^7+3q^6+q^5-4q^4+7q^3+10q^2+7q+3)M^5+
q^6(4q^{12}+7q^{11}+9q^{10}+4q^9-2q^8+q^7-4q^6-3q^5-3q^4-q^3+5q^2+4q+2)M^4-
q^5(q^{10}+5q^9+6q^8+3q^7-7q^6-10q^5-7q^4-9q^3-9q^2-9q-3)M^3+
q^2(q^2+q+1)(q^7+2q^6-5q^5-5q^4-3q^3-2q^2-3q-2)M^2+q(q^5+6q^4+9q^3+8q^2+3q+2)M-(q+1)(q+2))
"""

A3 = r"""
-q^2(qM-1)(qM+1)(qM^2-1)(q^3M-1)^2(q^3M+1)(q^9M^2-1)(q^{41}(q+1)M^{15}-q^{37}(q^4+2q^3+3q^2+4q+1)M^{14}+
q^{34}(q^5+q^4+7q^3+9q^2+8q+3)M^{13}+q^{29}(q^9+2q^8-2q^7-2q^6-10q^5-17q^4-12q^3-3q^2+2q+1)M^{12}-
q^{25}(2q^{11}+4q^{10}+5q^9+4q^8-3q^7-11q^6-17q^5-11q^4+2q^3+8q^2+5q+1)M^{11}+
q^{22}(6q^{11}+12q^{10}+8q^9+8q^8-14q^6-19q^5-6q^4+11q^3+16q^2+9q+2)M^{10}+
q^{18}(2q^{14}-2q^{13}-9q^{12}-17q^{11}-11q^{10}+10q^8+20q^7+24q^6+7q^5-15q^4-20q^3-10q^2+1)M^9-
q^{15}(q^{15}+6q^{14}-3q^{13}-14q^{12}-14q^{11}-4q^{10}+11q^9+25q^8+36q^7+35q^6+16q^5-9q^4-13q^3-6q^2+3q+3)M^8+
q^{12}(4q^{15}+6q^{14}-3q^{13}-18q^{12}-16q^{11}+4q^{10}+23q^9+30q^8+39q^7+31q^6+12q^5-14q^4-14q^3-q^2+3q+3)M^7-
q^9(5q^{15}+3q^{14}-11q^{13}-23q^{12}-18q^{11}+2q^{10}+19q^9+20q^8+21q^7+8q^6-7q^5-20q^4-22q^3-5q^2+q+1)M^6+
q^8(q+1)(2q^{12}-4q^{11}-13q^{10}-17q^9-q^8+2q^7+11q^6-2q^5+5q^4-9q^3-13q^2-12q-6)M^5+
q^5(5q^{12}+16q^{11}+25q^{10}+11q^9-8q^8-19q^7-16q^6-4q^5-2q^4+6q^3+11q^2+5q+1)M^4-
q^4(2q^{10}+10q^9+9q^8-3q^7-22q^6-23q^5-20q^4-13q^3-6q^2-3q+1)M^3+
q^2(q+1)(2q^7-4q^6-6q^5-17q^4-6q^3-6q^2-2q-1)M^2+q(2q^5+8q^4+11q^3+10q^2+3q+1)M-(q+1)(2q+1))
"""

B74 = r"""
-q^{10}M^3(qM+1)(q^2M+1)(q^3M+1)(q^4M+1)(qM^2-1)(q^3M^2-1)(q^5M^2-1)(q^7M^2-1)(q^9M^2-1)
(q^{10}(q^3+q^2-q+1)M^4-q^6(2q^5+2q^3+q^2-q+1)M^3+q^2(q+1)(q^7-2q^6+4q^5-q^4+q^3+q^2-q+1)M^2-
q(2q^5+2q^3+q^2-q+1)M+(q^3+q^2-q+1))
"""

V = {
    "v1": "M^4-M^3-2M^2-M+1",
    "v2": "M^4-2M^3+6M^2-2M+1",
    "v3": "2M^4-5M^3+8M^2-5M+2",
    "v4": "M^7-2M^6+3M^5+2M^4-7M^3+2M^2+6M-2",
    "v5": "M^8-2M^7+6M^6+2M^5-10M^4+2M^3+6M^2-2M+1",
    "v6": "M^{12}-6M^{11}+16M^{10}-24M^9+15M^8+14M^7-36M^6+14M^5+15M^4-24M^3+16M^2-6M+1",
    "v7": "2M^{14}-10M^{13}+16M^{12}-4M^{11}-46M^{10}+67M^9+28M^8-116M^7+28M^6+67M^5-46M^4-"
    "4M^3+16M^2-10M+2",
    "v8": "M^{18}-4M^{17}+10M^{16}-10M^{15}-3M^{14}+40M^{13}-67M^{12}-34M^{11}+157M^{10}-14M^9-140M^8+"
    "40M^7+66M^6-18M^5-14M^4+4M^3+4M^2-4M+1",
    "v9": "M^{26}-8M^{25}+42M^{24}-142M^{23}+345M^{22}-554M^{21}+521M^{20}+51M^{19}-729M^{18}+827M^{17}+"
    "234M^{16}-843M^{15}+707M^{14}-45M^{13}+707M^{12}-843M^{11}+234M^{10}+827M^9-729M^8+51M^7+"
    "521M^6-554M^5+345M^4-142M^3+42M^2-8M+1",
}

# q=1 factorizations; "vk" is a v-polynomial, "~vk" its mirror
Q1 = {
    "b74": {
        "unit": "-M^3",
        "factors": [("M-1", 5), ("M+1", 9), ("v3", 1)],
    },
    "P74": {
        "unit": "1",
        "factors": [("M-1", 5), ("M+1", 4), ("v3", 1), ("L^2-v1 L+M^4", 1), ("L^3+v4 L^2+~v4 L+M^7", 1)],
    },
    "P74_wedge2": {
        "unit": "1",
        "factors": [
            ("M-1", 10), ("M+1", 10), ("M^2+1", 2), ("v2", 1), ("v3", 4), ("v5", 1), ("v6", 1), ("v9", 1),
            ("L-M^4", 1),
            ("L^3-~v4 L^2+M^7 v4 L-M^{14}", 1),
            ("L^6+v1 v4 L^5+v8 L^4-M^4 v1 v7 L^3+M^8 ~v8 L^2+M^{15} v1 ~v4 L+M^{26}", 1),
        ],
    },
    "P74_wedge3": {
        "unit": "1",
        "factors": [
            ("M-1", 19), ("M+1", 20), ("M^2+1", 2), ("v2", 1), ("v3", 6), ("v5", 1), ("v6", 1), ("v9", 1),
            ("L+M^7", 1),
            ("L^3+M^4 v4 L^2+M^8 ~v4 L+M^{19}", 1),
            ("L^6-v1 ~v4 L^5+M^4 ~v8 L^4+M^{11} v1 v7 L^3+M^{18} v8 L^2-M^{29} v1 v4 L+M^{40}", 1),
        ],
    },
}


_TOK = re.compile(r"\s*(?:(\d+)|(~?v\d)|([qML])|\^\{(-?\d+)\}|\^(\d)|([-+()]))")


def latex_to_grammar(s: str, subst=None) -> str:
    """Insert explicit products and plain exponents into a LaTeX-style formula."""
    out = []
    prev_operand = False
    pos = 0
    s = s.replace("\n", "")
    while pos < len(s):
        if s[pos].isspace():
            pos += 1
            continue
        m = _TOK.match(s, pos)
        if not m:
            raise ValueError(f"cannot read {s[pos:pos + 20]!r}")
        pos = m.end()
        num, vname, var, bexp, dexp, op = m.groups()
        if bexp is not None or dexp is not None:
            out.append("^" + (bexp if bexp is not None else dexp))
            continue
        if op in ("+", "-", ")"):
            out.append(op)
            prev_operand = op == ")"
            continue
        if prev_operand:
            out.append("*")
        if op == "(":
            out.append("(")
            prev_operand = False
            continue
        if vname is not None:
            out.append("(" + subst[vname] + ")")
        else:
            out.append(num if num is not None else var)
        prev_operand = True
    return "".join(out)


def mirror(p: LaurentPoly) -> LaurentPoly:
    return p.invert_M().shift(M=p.deg_M())


# factor lists of p_0(q,M) and p_10(q,q^-9 M) for the exterior powers:
# values of i for q^i M - 1, q^i M + 1, q^i M^2 - 1 with multiplicity
TABLE2 = {
    "wedge2": {
        "p0": {"unit": "q^162*M^44", "lin_m": [0, 6, 7, 8, 9], "lin_p": [6, 7, 8, 9, 10],
               "quad": [13, 15, 17, 19, 21], "opaque": ("F1", "F12", 0)},
        "pd": {"unit": "q^-397", "lin_m": [-7, -6, -5, -4, 2], "lin_p": [-8, -7, -6, -5, -4],
               "quad": [-17, -15, -13, -11, -9], "opaque": ("F2", "F12", -10)},
        "rho": "M^4",
    },
    "wedge3": {
        "p0": {"unit": "q^297*M^66", "lin_m": [0, 7, 8, 9], "lin_p": [7, 8, 9, 10, 11],
               "quad": [5, 7, 9, 11, 13, 13, 15, 15, 17, 17, 19, 19, 21, 21, 23], "opaque": ("F3", "F34", 0)},
        "pd": {"unit": "q^-456", "lin_m": [-6, -5, -4, 3], "lin_p": [-8, -7, -6, -5, -4],
               "quad": [-17, -15, -15, -13, -13, -11, -11, -9, -9, -7, -7, -5, -3, -1, 1],
               "opaque": ("F4", "F34", -10)},
        "rho": "-M^7",
    },
}

# the displayed products for the k = 2 column, used as a cross-check of the rows
DISPLAY2 = {
    "p0": {"lin_m": [0] + list(range(6, 10)), "lin_p": list(range(6, 11)),
           "quad": [2 * i + 1 for i in range(6, 11)]},
    "pd": {"lin_m": [2] + [-i for i in range(4, 8)], "lin_p": [-i for i in range(4, 9)],
           "quad": [-(2 * i + 1) for i in range(4, 9)]},
}


def _display_factor(i: int, mdeg: int, sign: int) -> str:
    """``q^i M^k + sign`` in display form: ``M^k + sign q^-i`` when i < 0."""
    mon = "M" if mdeg == 1 else f"M^{mdeg}"
    s = "+" if sign > 0 else "-"
    if i >= 0:
        head = mon if i == 0 else f"q^{i}*{mon}"
        return f"{head} {s} 1"
    return f"{mon} {s} q^{-i}"


def table2_json():
    from collections import Counter

    for side, rows in DISPLAY2.items():
        for fam, vals in rows.items():
            if sorted(vals) != sorted(TABLE2["wedge2"][side][fam]):
                raise SystemExit(f"table row {side}/{fam} disagrees with the displayed product")
    out = {}
    for name, spec in TABLE2.items():
        entry = {"rho": spec["rho"]}
        for side in ("p0", "pd"):
            sd = spec[side]
            facs = []
            for fam, mdeg, sign in (("lin_m", 1, -1), ("lin_p", 1, 1), ("quad", 2, -1)):
                for i, m in sorted(Counter(sd[fam]).items()):
                    poly = parse(_display_factor(i, mdeg, sign), "poly")
                    facs.append({"poly": str(poly), "mult": m, "i": i})
            label, family, shift = sd["opaque"]
            facs.append({"opaque": label, "family": family, "shift": shift, "mult": 1})
            entry[side] = {"unit": sd["unit"], "factors": facs}
        out[name] = entry
    return out


def sha(path: Path) -> str:
    return hashlib.sha256(path.read_bytes()).hexdigest()


def main():
    vpolys = {k: parse(latex_to_grammar(v), "poly") for k, v in V.items()}
    subst = {}
    for k, p in vpolys.items():
        subst[k] = str(p)
        subst["~" + k] = str(mirror(p))

    top = [parse(latex_to_grammar(x), "poly") for x in (A5, A4, A3)]
    a = {5: top[0], 4: top[1], 3: top[2]}
    # a_j(q,M) = -q^60 M^24 a_{5-j}(q, (q^5 M)^-1)
    for j in (0, 1, 2):
        src = a[5 - j].shift_M(-5).invert_M()
        a[j] = -src.shift(q=60, M=24)
    P = OreOperator([a[j] for j in range(6)])
    b = parse(latex_to_grammar(B74), "poly")

    DATA.mkdir(parents=True, exist_ok=True)
    (DATA / "p74.op").write_text(json.dumps(P.to_json(), indent=1) + "\n")
    (DATA / "b74.expr").write_text(str(b) + "\n")
    vjson = {}
    for k, p in vpolys.items():
        vjson[k] = str(p)
        vjson[k + "_mirror"] = str(mirror(p))
    (DATA / "v_polys.json").write_text(json.dumps(vjson, indent=1) + "\n")

    q1 = {}
    for name, spec in Q1.items():
        facs = []
        for text, mult in spec["factors"]:
            expr = latex_to_grammar(text.replace(" ", ""), subst) if "v" in text else latex_to_grammar(text)
            kind = "commutative" if "L" in text else "poly"
            val = parse(expr, kind)
            facs.append({"poly": str(val), "mult": mult, "source": text})
        q1[name] = {"unit": spec["unit"], "factors": facs}
    (DATA / "q1_factorizations.json").write_text(json.dumps(q1, indent=1) + "\n")

    (DATA / "table2_factors.json").write_text(json.dumps(table2_json(), indent=1) + "\n")

    files = ["p74.op", "b74.expr", "v_polys.json", "q1_factorizations.json", "table2_factors.json"]
    sums = {f: sha(DATA / f) for f in files if (DATA / f).exists()}
    (DATA / "checksums.json").write_text(json.dumps(sums, indent=1, sort_keys=True) + "\n")
    print("wrote", ", ".join(sorted(sums)))


if __name__ == "__main__":
    main()
