"""Parsing and formatting of exact rationals as "p/q" strings."""

from fractions import Fraction
from numbers import Rational


def to_fraction(value) -> Fraction:
    if isinstance(value, Fraction):
        return value
    if isinstance(value, bool):
        raise TypeError("booleans are not rationals")
    if isinstance(value, (int, Rational)):
        return Fraction(value)
    if isinstance(value, str):
        text = value.strip()
        if not text:
            raise ValueError("empty rational literal")
        return Fraction(text)
    raise TypeError(f"cannot read {value!r} as an exact rational")


def fmt(q: Fraction) -> str:
    # Fraction normalises to lowest terms with a positive denominator.
    q = Fraction(q)
    return str(q.numerator) if q.denominator == 1 else f"{q.numerator}/{q.denominator}"


def parse_vector(items) -> tuple[Fraction, ...]:
    if isinstance(items, (str, bytes)) or not hasattr(items, "__iter__"):
        raise TypeError("expected a list of rationals")
    return tuple(to_fraction(v) for v in items)
