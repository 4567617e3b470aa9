"""Exact rational scalars.

All scalars are ``gmpy2.mpq`` values: always in lowest terms with a positive
denominator, and interoperable with ``int`` and ``fractions.Fraction``.
"""

from __future__ import annotations

from fractions import Fraction
from numbers import Rational as _RationalABC

from gmpy2 import mpq

Rational = type(mpq())

ZERO = mpq(0)
ONE = mpq(1)


def Q(value, den=None) -> Rational:
    """Coerce ``value`` (or ``value/den``) to an exact rational.

    Strings like ``"3/4"`` are accepted; floats are rejected because they
    would silently import rounding error.
    """
    if den is not None:
        return mpq(Q(value)) / Q(den)
    if isinstance(value, Rational):
        return value
    if isinstance(value, bool):
        return mpq(int(value))
    if isinstance(value, int):
        return mpq(value)
    if isinstance(value, Fraction):
        return mpq(value.numerator, value.denominator)
    if isinstance(value, str):
        return mpq(Fraction(value.strip()).numerator, Fraction(value.strip()).denominator)
    if isinstance(value, _RationalABC):
        return mpq(int(value.numerator), int(value.denominator))
    if isinstance(value, float):
        raise TypeError("floats are not exact; pass a Fraction or string instead")
    raise TypeError(f"cannot interpret {value!r} as a rational")


def is_scalar(value) -> bool:
    return isinstance(value, (Rational, int, Fraction)) and not isinstance(value, float)


def fmt(q: Rational) -> str:
    """``3``, ``-1/2`` and so on."""
    q = Q(q)
    if q.denominator == 1:
        return str(q.numerator)
    return f"{q.numerator}/{q.denominator}"


def to_fraction(q) -> Fraction:
    q = Q(q)
    return Fraction(int(q.numerator), int(q.denominator))
