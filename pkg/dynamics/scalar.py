"""
Exact scalar helpers

Every coefficient, noise bound and pre-floor value is a Fraction. Floats are
refused at the boundary so no rounding error can reach a floor decision.
"""

from fractions import Fraction
from math import isqrt
from typing import Union

ExactScalar = Fraction
ScalarLike = Union[Fraction, int, str]


def to_scalar(value: ScalarLike) -> Fraction:
    """Parse an int, Fraction or "p/q" / decimal string into an exact rational"""
    if isinstance(value, bool):
        raise TypeError("booleans are not scalars")
    if isinstance(value, Fraction):
        return value
    if isinstance(value, int):
        return Fraction(value)
    if isinstance(value, str):
        text = value.strip()
        if not text:
            raise ValueError("empty scalar string")
        return Fraction(text)
    raise TypeError(f"cannot build an exact scalar from {type(value).__name__}")


def format_scalar(value: Fraction) -> str:
    """Serialize as "p/q" (always with the slash, q > 0)"""
    value = Fraction(value)
    return f"{value.numerator}/{value.denominator}"


def sqrt_upper(value: Fraction, resolution: int = 10 ** 9) -> Fraction:
    """Rational upper bound on sqrt(value), within 1/resolution"""
    if value < 0:
        raise ValueError("sqrt of a negative scalar")
    value = Fraction(value)
    p, q = value.numerator, value.denominator
    # sqrt(p/q) = sqrt(p*q)/q
    scaled = p * q * resolution * resolution
    root = isqrt(scaled)
    if root * root != scaled:
        root += 1
    return Fraction(root, q * resolution)
