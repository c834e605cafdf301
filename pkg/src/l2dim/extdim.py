"""Extended nonnegative dimension values: exact rationals or +infinity.

Finite values are :class:`fractions.Fraction`; infinity is ``math.inf`` so
ordinary comparisons and sums behave as expected.
"""

from __future__ import annotations

import math
from fractions import Fraction
from typing import Union

INF = math.inf

ExtDim = Union[Fraction, float]


def is_finite(x) -> bool:
    return not (isinstance(x, float) and math.isinf(x))


def ext(x) -> ExtDim:
    if isinstance(x, float):
        if math.isinf(x) and x > 0:
            return INF
        raise ValueError(f"{x!r} is not an exact dimension value")
    return Fraction(x)


def inverse_order(order) -> Fraction:
    """|H|^{-1}, read as zero for infinite groups."""
    if not is_finite(order):
        return Fraction(0)
    if order <= 0:
        raise ValueError(f"group order must be positive, got {order}")
    return Fraction(1, order)


def encode_rational(x) -> list | str:
    """[num, den] with big integers as decimal strings; infinity as "inf"."""
    if not is_finite(x):
        return "inf"
    x = Fraction(x)
    return [_encode_int(x.numerator), _encode_int(x.denominator)]


def decode_rational(v) -> ExtDim:
    if v == "inf":
        return INF
    if isinstance(v, (int, str)) and not isinstance(v, bool):
        return Fraction(v)
    num, den = v
    return Fraction(int(num), int(den))


def _encode_int(n: int) -> int | str:
    return n if abs(n) < 2**53 else str(n)


def format_value(x) -> str:
    if not is_finite(x):
        return "inf"
    return str(Fraction(x))
