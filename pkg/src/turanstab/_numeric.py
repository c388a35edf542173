"""High-precision helpers. Parameter values of interest (``r**-204`` and
smaller) underflow doubles, so inputs are read exactly and bounds are
evaluated with mpmath at ``DPS`` significant digits."""

from __future__ import annotations

from fractions import Fraction
from typing import Union

import mpmath
from mpmath import mp

DPS = 60

Number = Union[int, float, str, Fraction, "mpmath.mpf"]


def exact(x: Number) -> Fraction:
    """Exact rational reading of a parameter; floats are read by their repr
    so that ``0.01`` means one hundredth."""
    if isinstance(x, Fraction):
        return x
    if isinstance(x, int):
        return Fraction(x)
    if isinstance(x, float):
        return Fraction(repr(x))
    if isinstance(x, str):
        return Fraction(x.strip())
    if isinstance(x, mpmath.mpf):
        man, exp = x.man_exp
        return Fraction(man) * Fraction(2) ** exp
    raise TypeError(f"cannot read {x!r} as a number")


def hp(x: Number) -> mpmath.mpf:
    """mpmath value of ``x`` at working precision."""
    if isinstance(x, mpmath.mpf):
        return x
    q = exact(x)
    with mp.workdps(DPS):
        return mpmath.mpf(q.numerator) / q.denominator


def fmt(x: mpmath.mpf, digits: int = 30) -> str:
    """Stable decimal rendering used in serialized certificates."""
    with mp.workdps(DPS):
        return mpmath.nstr(x, digits, strip_zeros=True, min_fixed=-6, max_fixed=30)
