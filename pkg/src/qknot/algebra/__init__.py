from .laurent import M, ONE, Q, ZERO, BigRational, LaurentPoly, format_poly
from .gcd import exact_quotient, factor_poly, poly_gcd, prs_gcd
from .ratfunc import PoleAtQ1, RatFunc
from .grammar import NonNormalOrder, ParseError, parse, parse_poly


def substitute(p, rule: str, arg=None):
    """Apply one of the standard substitutions to a polynomial or RatFunc.

    ``rule`` is ``"shift"`` (M -> q^arg M), ``"qpow"`` (M -> q^arg),
    ``"invert_M"`` (M -> 1/M) or ``"q1"`` (q -> 1).
    """
    if rule == "shift":
        return p.shift_M(arg)
    if rule == "qpow":
        return p.at_M_qpow(arg)
    if rule == "invert_M":
        return p.invert_M()
    if rule == "q1":
        if isinstance(p, RatFunc):
            r = p.at_q1()
            return r.num if r.is_poly() else r
        return p.at_q1()
    raise ValueError(f"unknown substitution rule {rule!r}")


def equal_up_to_unit(a, b) -> bool:
    """True if ``a = c * q^i * M^j * b`` for a rational ``c`` and half-integer ``i``."""
    if a.is_zero() or b.is_zero():
        return a.is_zero() and b.is_zero()
    return a.canonical() == b.canonical()


__all__ = [
    "BigRational", "LaurentPoly", "RatFunc", "PoleAtQ1", "ParseError", "NonNormalOrder",
    "parse", "parse_poly", "poly_gcd", "prs_gcd", "exact_quotient", "factor_poly",
    "substitute", "equal_up_to_unit", "format_poly", "Q", "M", "ONE", "ZERO",
]
