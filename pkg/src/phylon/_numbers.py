"""Coefficient coercion shared by every module."""
from fractions import Fraction

import gmpy2
from gmpy2 import mpq

_EXACT = (int, Fraction, str, type(mpq(0)), type(gmpy2.mpz(0)))


def coerce(x):
    """Exact inputs become ``mpq``; field elements of other types pass through."""
    if isinstance(x, bool):
        return mpq(int(x))
    if isinstance(x, _EXACT):
        return mpq(x)
    return x


def is_rational(x):
    return isinstance(x, (int, Fraction, type(mpq(0))))


def rational_sqrt(x):
    """Exact square root of a non-negative rational, or ``None``."""
    x = mpq(x)
    if x < 0:
        return None
    n, d = x.numerator, x.denominator
    if gmpy2.is_square(n) and gmpy2.is_square(d):
        return mpq(gmpy2.isqrt(n), gmpy2.isqrt(d))
    return None


def qstr(x):
    """``p/q`` string for an exact rational (``p`` when integral)."""
    x = mpq(x)
    if x.denominator == 1:
        return str(x.numerator)
    return f"{x.numerator}/{x.denominator}"
