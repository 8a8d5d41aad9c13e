"""Exact rationals for the base order.

The base order is realized as the rationals; :class:`fractions.Fraction`
already gives reduced form, exact comparison and hashing, so ``Rat`` is
just an alias.  This module adds the two canonical spellings used at the
edges: the strict ``"p/q"`` wire form and the looser command-line form.
"""

from __future__ import annotations

import re
from fractions import Fraction
from math import gcd
from typing import Iterable, Union

Rat = Fraction
RatLike = Union[Fraction, int, str]

_WIRE = re.compile(r"^(-?)(0|[1-9][0-9]*)/([1-9][0-9]*)$")
_LOOSE = re.compile(r"^\s*([+-]?[0-9]+)\s*(?:/\s*([0-9]+))?\s*$")


class RationalFormatError(ValueError):
    """A rational spelled in a non-canonical or meaningless way."""


def rat(value: RatLike) -> Fraction:
    """Coerce ints, Fractions and ``"p/q"`` strings to a Fraction.

    Floats are refused: the base order is exact.
    """
    if isinstance(value, bool):
        raise TypeError("booleans are not rationals")
    if isinstance(value, Fraction):
        return value
    if isinstance(value, int):
        return Fraction(value)
    if isinstance(value, str):
        return parse_loose(value)
    raise TypeError(f"cannot use {type(value).__name__} as an exact rational")


def to_wire(value: Fraction) -> str:
    """``Fraction(3, 2) -> "3/2"``; integers keep the ``/1``."""
    return f"{value.numerator}/{value.denominator}"


def from_wire(text: str) -> Fraction:
    """Parse the strict wire form.

    Only the exact output of :func:`to_wire` is accepted, so reading and
    writing round-trip byte for byte.
    """
    if not isinstance(text, str):
        raise RationalFormatError(f"expected a 'p/q' string, got {text!r}")
    m = _WIRE.match(text)
    if m is None:
        if re.match(r"^-?[0-9]+/0+$", text):
            raise RationalFormatError(f"zero denominator in {text!r}")
        raise RationalFormatError(f"not a canonical 'p/q' rational: {text!r}")
    sign, num, den = m.groups()
    n, d = int(num), int(den)
    if sign and n == 0:
        raise RationalFormatError(f"negative zero in {text!r}")
    if gcd(n, d) != 1:
        raise RationalFormatError(f"unreduced rational {text!r}")
    return Fraction(-n if sign else n, d)


def parse_loose(text: str) -> Fraction:
    """Command-line spelling: ``"3"``, ``"-1/2"``, ``"4/6"`` (normalized)."""
    m = _LOOSE.match(text)
    if m is None:
        raise RationalFormatError(f"not a rational: {text!r}")
    num, den = m.groups()
    if den is not None and int(den) == 0:
        raise RationalFormatError(f"zero denominator in {text!r}")
    return Fraction(int(num), int(den) if den is not None else 1)


def parse_value_list(text: str) -> tuple[Fraction, ...]:
    """``"0,1/2,1"`` -> sorted, de-duplicated tuple."""
    parts = [p for p in text.split(",") if p.strip()]
    return tuple(sorted({parse_loose(p) for p in parts}))


def as_value_set(values: Iterable[RatLike]) -> tuple[Fraction, ...]:
    return tuple(sorted({rat(v) for v in values}))
