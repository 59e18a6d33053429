"""Binary interchange formats, exact rounding, and float literal parsing.

``round_to_format`` rounds an exact rational to the nearest value of a
binary format (ties to even) using integer arithmetic only.  It is the
reference the hardware evaluation in ``floateval`` is checked against.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from fractions import Fraction

import numpy as np


@dataclass(frozen=True)
class Format:
    name: str
    precision: int  # significand bits including the implicit one
    emax: int
    dtype: type

    @property
    def emin(self) -> int:
        return 1 - self.emax

    @property
    def max_finite(self) -> Fraction:
        return Fraction(2**self.precision - 1) * Fraction(2) ** (self.emax - self.precision + 1)


BINARY32 = Format("binary32", 24, 127, np.float32)
BINARY64 = Format("binary64", 53, 1023, np.float64)

FORMATS = {f.name: f for f in (BINARY32, BINARY64)}


def get_format(p) -> Format:
    if isinstance(p, Format):
        return p
    try:
        return FORMATS[p]
    except KeyError:
        raise ValueError(f"unknown precision {p!r}; expected one of {sorted(FORMATS)}") from None


class Overflow(ArithmeticError):
    pass


def _round_half_even(num: int, den: int) -> int:
    q, r = divmod(num, den)
    twice = 2 * r
    if twice > den or (twice == den and q & 1):
        q += 1
    return q


def round_to_format(x: Fraction, fmt: Format) -> Fraction:
    """Nearest ``fmt`` value to ``x``, ties to even; raises ``Overflow``."""
    x = Fraction(x)
    if x == 0:
        return Fraction(0)
    sign = -1 if x < 0 else 1
    a = abs(x)
    p = fmt.precision
    # e = floor(log2 a)
    e = a.numerator.bit_length() - a.denominator.bit_length()
    if Fraction(2) ** e > a:
        e -= 1
    e = max(e, fmt.emin)  # subnormals share the minimum exponent
    scale = e - p + 1  # value of one unit in the last place
    if scale >= 0:
        m = _round_half_even(a.numerator, a.denominator * 2**scale)
    else:
        m = _round_half_even(a.numerator * 2**-scale, a.denominator)
    r = Fraction(m) * Fraction(2) ** scale
    if r > fmt.max_finite:
        raise Overflow(f"value of magnitude about 2**{e} overflows {fmt.name}")
    return sign * r


def to_native(x: Fraction, fmt: Format):
    """``x`` (already representable in ``fmt``) as a numpy scalar of that format."""
    v = fmt.dtype(float(x))  # exact: x fits in binary64 and in fmt
    if Fraction(float(v)) != x:
        raise ValueError(f"{x} is not representable in {fmt.name}")
    return v


def hex_float(v) -> str:
    """C99 ``%a``-style text with trailing zero hex digits removed."""
    h = float(v).hex()
    sign = ""
    if h.startswith("-"):
        sign, h = "-", h[1:]
    mant, exp = h[2:].split("p")
    if "." in mant:
        mant = mant.rstrip("0").rstrip(".")
    if mant == "0":
        exp = "+0"
    return f"{sign}0x{mant}p{exp}"


_HEX = re.compile(r"([+-]?)0[xX]([0-9a-fA-F]*)(?:\.([0-9a-fA-F]*))?[pP]([+-]?\d+)\Z")
_DEC = re.compile(r"[+-]?(\d+\.?\d*|\.\d+)([eE][+-]?\d+)?\Z")


def parse_literal(text: str) -> Fraction:
    """Exact value of a decimal or C99 hex-float literal.  Rejects inf/nan."""
    s = text.strip()
    m = _HEX.match(s)
    if m:
        sign, whole, frac, exp = m.groups()
        frac = frac or ""
        if not whole and not frac:
            raise ValueError(f"malformed hex-float literal {text!r}")
        digits = int((whole or "0") + frac, 16)
        value = Fraction(digits) * Fraction(2) ** (int(exp) - 4 * len(frac))
        return -value if sign == "-" else value
    if _DEC.match(s):
        return Fraction(s)
    raise ValueError(f"not a finite decimal or hex-float literal: {text!r}")
