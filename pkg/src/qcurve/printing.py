"""Text rendering for scalars and polynomials (inverse of ncalg.parse)."""
from __future__ import annotations

from fractions import Fraction


def _q_symbol(e: int) -> str:
    # e is an exponent of s = q^{1/2}
    if e == 0:
        return ""
    if e % 2 == 0:
        k = e // 2
        return "q" if k == 1 else f"q^{k}"
    return f"q^{{{e}/2}}"


def _coeff_str(c: Fraction) -> str:
    return str(c.numerator) if c.denominator == 1 else f"{c.numerator}/{c.denominator}"


def format_laurent(lp) -> str:
    """Terms in descending order, e.g. 'q + q^-1' or '2 q^{3/2} - 1'."""
    if lp.is_zero():
        return "0"
    out = []
    for i, e in enumerate(sorted(lp.coeffs, reverse=True)):
        c = lp.coeffs[e]
        neg = c < 0
        c = -c if neg else c
        sym = _q_symbol(e)
        if not sym:
            body = _coeff_str(c)
        elif c == 1:
            body = sym
        else:
            body = f"{_coeff_str(c)} {sym}"
        if i == 0:
            out.append(("-" if neg else "") + body)
        else:
            out.append((" - " if neg else " + ") + body)
    return "".join(out)


def _lead_negative(lp) -> bool:
    return lp.coeffs[lp.high()] < 0


def scalar_parts(x):
    """Split a nonzero scalar into (negative?, body) for use as a coefficient.

    body is '' for the unit, a bare monomial like '2 q', a parenthesised
    sum, or '(num)/(den)'.
    """
    num, den = x.num, x.den
    neg = _lead_negative(num)
    if neg:
        num = -num
    if den.is_monomial():  # canonical: den == 1
        if num.is_monomial():
            (e, c), = num.coeffs.items()
            sym = _q_symbol(e)
            if not sym:
                return neg, ("" if c == 1 else _coeff_str(c))
            return neg, (sym if c == 1 else f"{_coeff_str(c)} {sym}")
        return neg, f"({format_laurent(num)})"
    return neg, f"({format_laurent(num)})/({format_laurent(den)})"


def format_scalar(x) -> str:
    if x.is_zero():
        return "0"
    neg, body = scalar_parts(x)
    if body == "":
        body = "1"
    if neg:
        return "-" + body
    if body.startswith("(") and x.den.is_monomial():
        body = body[1:-1]
    return body
