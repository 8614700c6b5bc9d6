"""Parsing and printing of exact rational scalars (``int`` or ``int/posint``)."""

import re
from fractions import Fraction

RATIONAL_RE = re.compile(r"[+-]?\d+(?:/\d+)?")


def parse_rational(text):
    text = text.strip()
    if not RATIONAL_RE.fullmatch(text):
        raise ValueError(f"not a rational: {text!r}")
    num, _, den = text.partition("/")
    if den and int(den) == 0:
        raise ValueError(f"zero denominator: {text!r}")
    return Fraction(int(num), int(den) if den else 1)


def format_rational(q):
    q = Fraction(q)
    if q.denominator == 1:
        return str(q.numerator)
    return f"{q.numerator}/{q.denominator}"


def format_coefficient(q, first):
    """Sign and magnitude of a term coefficient, e.g. ('-', '1/2') -> '- 1/2 '.

    Returns the prefix that goes before the term's label; unit magnitudes are
    left implicit.
    """
    q = Fraction(q)
    mag = abs(q)
    body = "" if mag == 1 else format_rational(mag) + " "
    if first:
        return ("-" if q < 0 else "") + body
    return (" - " if q < 0 else " + ") + body
