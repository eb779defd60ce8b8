"""Exact rational scalar type and the extended value ``+inf``.

``Q`` is ``gmpy2.mpq`` when available (an order of magnitude faster than
``fractions.Fraction``, with which it compares and hashes consistently),
otherwise ``Fraction``. Infinite values are always ``math.inf``.
"""
from __future__ import annotations

import math
import re
from fractions import Fraction
from typing import Union

try:
    from gmpy2 import mpq as Q
except ImportError:  # pragma: no cover
    Q = Fraction

INF = math.inf
ZERO = Q(0)
ONE = Q(1)

ExtValue = Union["Q", float]

_RATIONAL = re.compile(r"([+-]?\d+)(?:/(\d+))?")


def parse_rational(value) -> "Q":
    """``"3/2"``, ``"4"``, ``3`` or a ``Fraction`` to ``Q``; rejects floats and decimals."""
    if isinstance(value, bool) or isinstance(value, float):
        raise ValueError(f"expected an exact rational, got {value!r}")
    if isinstance(value, str):
        m = _RATIONAL.fullmatch(value.strip())
        if m is None or (m.group(2) is not None and int(m.group(2)) == 0):
            raise ValueError(f"not a rational of the form p/q: {value!r}")
        return Q(int(m.group(1)), int(m.group(2) or 1))
    return Q(value)


def is_inf(value) -> bool:
    return not isinstance(value, (int, Fraction)) and not _is_q(value) and math.isinf(value)


def _is_q(value) -> bool:
    return type(value) is type(ZERO)


def ext(value) -> ExtValue:
    """Normalise an extended value: any infinity becomes ``math.inf``."""
    if _is_q(value):
        return value
    if isinstance(value, (int, Fraction)):
        return Q(value)
    if math.isinf(value):
        return INF
    raise TypeError(f"inexact value {value!r} in exact computation")


def times(c, value) -> ExtValue:
    """``c * value`` with the measure-theoretic convention ``0 * inf = 0``."""
    if c == 0:
        return ZERO
    return ext(c * value)


def format_ext(value) -> str:
    """Canonical text: ``p/q`` in lowest terms, ``p`` for integers, ``inf``."""
    if is_inf(value):
        return "inf"
    q = Q(value)
    if q.denominator == 1:
        return str(q.numerator)
    return f"{q.numerator}/{q.denominator}"


def to_fraction(value) -> Fraction:
    return Fraction(int(value.numerator), int(value.denominator))
