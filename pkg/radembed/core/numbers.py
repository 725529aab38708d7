"""
Scalar helpers for exponent arithmetic.

Rational inputs (int, Fraction, "p/q" strings) stay exact; floats stay
floats and are compared with ``settings.COMPARISON_TOL``. Infinite values
are represented by ``math.inf`` which orders correctly against Fraction.
"""
import math
from fractions import Fraction
from typing import Union

from radembed.core.config import settings
from radembed.core.errors import InvalidSpec

Real = Union[Fraction, float]
ExtReal = Union[Fraction, float]

POS_INF = math.inf
NEG_INF = -math.inf


def exact(value) -> Real:
    """Normalize a scalar: rationals become Fraction, floats stay float."""
    if isinstance(value, bool):
        raise InvalidSpec(f"Boolean is not a number: {value!r}")
    if isinstance(value, Fraction):
        return value
    if isinstance(value, int):
        return Fraction(value)
    if isinstance(value, float):
        if math.isnan(value):
            raise InvalidSpec("NaN is not a valid exponent")
        return value
    if isinstance(value, str):
        text = value.strip().lower()
        if text in ("inf", "+inf", "infinity", "+infinity"):
            return POS_INF
        if text in ("-inf", "-infinity"):
            return NEG_INF
        try:
            return Fraction(text)
        except (ValueError, ZeroDivisionError) as exc:
            raise InvalidSpec(f"Cannot parse number {value!r}") from exc
    raise InvalidSpec(f"Unsupported numeric type {type(value).__name__}")


def is_exact(value) -> bool:
    return isinstance(value, Fraction)


def is_infinite(value) -> bool:
    return isinstance(value, float) and math.isinf(value)


def _tolerant(a, b) -> bool:
    return not (is_exact(a) and is_exact(b)) and not (is_infinite(a) or is_infinite(b))


def lt(a, b, tol: float = None) -> bool:
    """Strict ``a < b``; float ties within tolerance count as not-less."""
    if _tolerant(a, b):
        tol = settings.COMPARISON_TOL if tol is None else tol
        return a < b - tol * max(1.0, abs(float(a)), abs(float(b)))
    return a < b


def le(a, b, tol: float = None) -> bool:
    if _tolerant(a, b):
        tol = settings.COMPARISON_TOL if tol is None else tol
        return a <= b + tol * max(1.0, abs(float(a)), abs(float(b)))
    return a <= b


def eq(a, b, tol: float = None) -> bool:
    return le(a, b, tol) and le(b, a, tol)


def to_text(value: ExtReal) -> str:
    """Exact textual form: '10/3', '-2', 'inf', or a float repr."""
    if is_infinite(value):
        return "inf" if value > 0 else "-inf"
    if is_exact(value):
        return str(value)
    return repr(float(value))


def to_float(value: ExtReal) -> float:
    return float(value)
