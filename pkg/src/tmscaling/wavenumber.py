"""Canonical rational wave numbers and exact fractional-part ladders.

Every rational in [0, 1) factors uniquely as m / (2**r * q) with q odd,
gcd(m, q) = 1 and m odd whenever r > 0.  The odd part q controls the
asymptotics of the doubling sequence frac(2**l * k): after r initial
levels the numerators cycle through the doubling orbit of m mod q.
Dyadic numbers (q = 1) reach 0 exactly and stay there — these are the
extinction points.

``frac_levels`` is the one place fractional parts are produced for the
rest of the package.  It yields, per level, both the value frac(2**l k)
and its exact distance to the nearest integer, so downstream
trigonometry never suffers cancellation near 0 or 1.  Rational inputs
(including floats, which are exact dyadic rationals) use modular integer
arithmetic; digit streams use a rolling 64-digit window, refined to 128
digits and flagged when the value sits within 2**-20 of an integer.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterator, Union

from .streams import DigitStream

#: near-integer threshold that triggers window refinement for streams
NEAR_SINGULAR = 2.0 ** -20


@dataclass(frozen=True)
class WaveNumber:
    """k = m / (2**r * q) reduced mod 1, with q odd and gcd(m, q) = 1."""

    m: int
    r: int
    q: int

    def __post_init__(self):
        if self.q < 1 or self.q % 2 == 0:
            raise ValueError(f"q must be odd and positive, got {self.q}")
        if self.r < 0:
            raise ValueError(f"r must be non-negative, got {self.r}")
        if not 0 <= self.m < (1 << self.r) * self.q:
            raise ValueError("m must satisfy 0 <= m < 2**r * q")
        if math.gcd(self.m, self.q) != 1:
            raise ValueError("m and q must be coprime")
        if self.r > 0 and self.m % 2 == 0:
            raise ValueError("m must be odd when r > 0")

    @classmethod
    def from_fraction(cls, num: int, den: int) -> "WaveNumber":
        """Canonicalise num/den: reduce, drop the integer part, split off 2**r."""
        if den == 0:
            raise ValueError("denominator must be non-zero")
        if den < 0:
            num, den = -num, -den
        num %= den
        g = math.gcd(num, den)
        num //= g
        den //= g
        r = 0
        while den % 2 == 0:
            den //= 2
            r += 1
        return cls(m=num, r=r, q=den)

    @classmethod
    def parse(cls, text: str) -> "WaveNumber":
        """Parse 'p/Q' (or a bare integer) into canonical form."""
        s = text.strip()
        try:
            if "/" in s:
                p_str, q_str = s.split("/")
                return cls.from_fraction(int(p_str), int(q_str))
            return cls.from_fraction(int(s), 1)
        except ValueError as exc:
            raise ValueError(f"not a valid rational wave number: {text!r}") from exc

    @property
    def is_dyadic(self) -> bool:
        return self.q == 1

    @property
    def denominator(self) -> int:
        return (1 << self.r) * self.q

    def value(self) -> Fraction:
        return Fraction(self.m, self.denominator)

    def with_extra_dyadic_power(self, extra_r: int) -> "WaveNumber":
        """The wave number m / (2**(r+extra_r) * q)."""
        if extra_r < 0:
            raise ValueError("extra_r must be non-negative")
        return WaveNumber.from_fraction(self.m, self.denominator << extra_r)

    def __str__(self) -> str:
        v = self.value()
        return f"{v.numerator}/{v.denominator}" if v.denominator > 1 else str(v.numerator)


RationalLike = Union[WaveNumber, Fraction, int, float, tuple, str]
WaveNumberLike = Union[RationalLike, DigitStream]


def as_wave_number(k: RationalLike) -> WaveNumber:
    """Coerce to canonical form.

    Floats are converted exactly via their integer ratio: a float *is* a
    dyadic rational, so e.g. 0.1371 canonicalises with q = 1 and a large
    r rather than pretending to be 1371/10000.
    """
    if isinstance(k, WaveNumber):
        return k
    if isinstance(k, Fraction):
        return WaveNumber.from_fraction(k.numerator, k.denominator)
    if isinstance(k, int):
        return WaveNumber.from_fraction(k, 1)
    if isinstance(k, float):
        if not math.isfinite(k):
            raise ValueError(f"wave number must be finite, got {k}")
        num, den = k.as_integer_ratio()
        return WaveNumber.from_fraction(num, den)
    if isinstance(k, tuple) and len(k) == 2:
        return WaveNumber.from_fraction(int(k[0]), int(k[1]))
    if isinstance(k, str):
        return WaveNumber.parse(k)
    raise TypeError(f"cannot interpret {type(k).__name__} as a wave number")


@dataclass(frozen=True, slots=True)
class FracLevel:
    """frac(2**l * k) for one level l.

    ``value`` is the fractional part in [0, 1); ``half_dist`` its exact
    distance to the nearest integer, in [0, 1/2].  ``is_zero`` is set only
    when the fractional part is exactly zero (decided in integer
    arithmetic, rational inputs only).  ``refined`` marks stream samples
    that fell within 2**-20 of an integer and were re-read with a doubled
    window.
    """

    value: float
    half_dist: float
    is_zero: bool
    refined: bool


def frac_levels(k: WaveNumberLike, count: int | None = None,
                window: int = 64) -> Iterator[FracLevel]:
    """Yield FracLevel for levels l = 0, 1, 2, ... (``count`` of them).

    Rational inputs iterate numerators exactly: num_{l+1} = 2*num_l mod den.
    Stream inputs keep a rolling ``window``-digit integer, so each level is
    O(1) digits of work.
    """
    if isinstance(k, DigitStream):
        return _stream_frac_levels(k, count, window)
    return _rational_frac_levels(as_wave_number(k), count)


def _rational_frac_levels(wn: WaveNumber, count: int | None) -> Iterator[FracLevel]:
    den = wn.denominator
    num = wn.m
    produced = 0
    while count is None or produced < count:
        if num == 0:
            yield FracLevel(0.0, 0.0, True, False)
        else:
            half_num = min(num, den - num)
            yield FracLevel(num / den, half_num / den, False, False)
        num = (2 * num) % den
        produced += 1


def _stream_frac_levels(stream: DigitStream, count: int | None,
                        window: int) -> Iterator[FracLevel]:
    if window < 32:
        raise ValueError(f"window must be at least 32 digits, got {window}")
    mask = (1 << window) - 1
    scale = float(1 << window)
    near = max(1, int(NEAR_SINGULAR * scale))
    d = stream.window_int(0, window)
    n = 0
    while count is None or n < count:
        if d < near or mask - d < near:
            wide = 2 * window
            dd = stream.window_int(n, wide)
            wide_scale = float(1 << wide)
            half_num = min(dd, (1 << wide) - dd)
            if half_num == 0:
                # window is all-0 or all-1 to 2*window digits: the true
                # distance is below 2**-(2*window); clamp rather than
                # fabricate an exact zero.
                half = 1.0 / (2.0 * wide_scale)
            else:
                half = half_num / wide_scale
            yield FracLevel(dd / wide_scale, half, False, True)
        else:
            half_num = min(d, (1 << window) - d)
            yield FracLevel(d / scale, half_num / scale, False, False)
        n += 1
        d = ((d << 1) & mask) | stream.digit(n + window)
