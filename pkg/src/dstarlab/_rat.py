"""Exact rational arithmetic backend.

Everything downstream of the series engine works over exact rationals.  When
gmpy2 is importable we use its mpq type (large-integer gcds are an order of
magnitude faster than fractions.Fraction, which matters at truncation orders
of several hundred); otherwise we fall back to the stdlib.  Both types expose
.numerator/.denominator, so callers can stay agnostic.
"""

from __future__ import annotations

from fractions import Fraction

try:
    from gmpy2 import mpq as Q  # type: ignore

    HAVE_GMPY2 = True
except ImportError:  # pragma: no cover - exercised only without gmpy2
    Q = Fraction
    HAVE_GMPY2 = False

QZERO = Q(0)
QONE = Q(1)


def as_fraction(q) -> Fraction:
    """Convert an mpq/Fraction/int to a stdlib Fraction (stable public type)."""
    if isinstance(q, Fraction):
        return q
    return Fraction(int(q.numerator), int(q.denominator)) if hasattr(q, "numerator") else Fraction(q)


def is_integral(q) -> bool:
    return q.denominator == 1


def as_int(q) -> int:
    if q.denominator != 1:
        raise ValueError(f"not an integer: {q}")
    return int(q.numerator)


def parse_rat(s: str):
    """Inverse of str() for mpq/Fraction: 'num' or 'num/den'."""
    if "/" in s:
        num, den = s.split("/", 1)
        return Q(int(num), int(den))
    return Q(int(s))
