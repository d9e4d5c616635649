"""Exact rational parsing and formatting.

All numeric state in the package is held as `fractions.Fraction`, which
stores values in lowest terms with a positive denominator and supports
exact arithmetic. These helpers convert the external representations
("p/q" strings, decimal strings, JSON numbers) to and from that type
without ever rounding: a decimal literal is read as the rational it
denotes, not as the nearest binary float.
"""

from __future__ import annotations

from fractions import Fraction

from .errors import ValidationError

Rational = Fraction


def parse_rational(value: object, field: str = "value") -> Fraction:
    """Parse an int, Fraction, or string like "7/20", "0.54", "-3" exactly.

    Floats are rejected: they have already lost the decimal the user wrote,
    so callers must route text through here (or json parse_float) instead.
    """
    if isinstance(value, Fraction):
        return value
    if isinstance(value, bool):
        raise ValidationError(f"{field} must be a number or 'p/q' string, got a boolean")
    if isinstance(value, int):
        return Fraction(value)
    if isinstance(value, float):
        raise ValidationError(
            f"{field} must be given as text or an integer; binary floats are inexact"
        )
    if isinstance(value, str):
        try:
            return Fraction(value)
        except ZeroDivisionError:
            raise ValidationError(f"{field}: denominator must be positive") from None
        except ValueError:
            raise ValidationError(f"{field}: cannot parse {value!r} as a rational") from None
    raise ValidationError(f"{field} must be a number or 'p/q' string, got {type(value).__name__}")


def format_rational(value: Fraction) -> str:
    """Render exactly: "p/q", or just "p" when the denominator is 1."""
    return str(value)


def approx(value: Fraction, digits: int = 6) -> str:
    """Fixed-point decimal approximation for human-facing table output."""
    return f"{float(value):.{digits}f}"
