"""The +/-1 doubling-substitution word and its exponential sums.

The weight sequence v has v_l = (-1)**popcount(l); equivalently the word
at level n+1 is the level-n word followed by its negation.  That
recursion factors the exponential sum

    g_n(k) = sum_{l=0}^{2**n - 1} v_l exp(-2 pi i k l)

as g_{n+1}(k) = (1 - exp(-2 pi i k 2**n)) g_n(k) with g_0 = 1, which ties
|g_n|**2 to the Riesz partial product: |g_n(k)|**2 = 2**n f_n(k).

``exp_sum_direct`` is the brute-force oracle (term-by-term, compensated
summation, exact phases); ``exp_sum_recursive`` is the O(n) product.
Both accept floats (treated as the exact dyadic rationals they are),
Fractions, WaveNumbers, and digit streams — phases always come from
exact fractional parts, never from repeatedly squaring a floating-point
phase.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from functools import lru_cache

import numpy as np

from .streams import DigitStream
from .wavenumber import WaveNumberLike, as_wave_number, frac_levels

#: direct summation walks 2**n terms; 24 keeps the oracle desk-scale (16M terms)
MAX_LEVEL = 24


@lru_cache(maxsize=8)
def _signs(n: int) -> np.ndarray:
    if n == 0:
        v = np.ones(1, dtype=np.int8)
    else:
        prev = _signs(n - 1)
        v = np.concatenate([prev, -prev])
    v.setflags(write=False)
    return v


@dataclass(frozen=True)
class TmWord:
    """Level-n word of 2**n weights in {+1, -1}."""

    level: int
    symbols: np.ndarray

    def __len__(self) -> int:
        return len(self.symbols)


def tm_word(n: int) -> TmWord:
    """Word of length 2**n; symbol l is (-1)**popcount(l)."""
    if not 0 <= n <= MAX_LEVEL:
        raise ValueError(f"level must be in 0..{MAX_LEVEL}, got {n}")
    return TmWord(level=n, symbols=_signs(n))


@dataclass(frozen=True)
class ExponentialSum:
    level: int
    wave_number: object
    value: complex

    @property
    def magnitude_sq(self) -> float:
        return abs(self.value) ** 2


def _direct_fracs(m: int, den: int, count: int) -> np.ndarray:
    """x_l = frac(l * m / den) for l = 0..count-1, exactly."""
    if den == 1:
        return np.zeros(count)
    step = m % den
    if den * count < (1 << 62):
        ell = np.arange(count, dtype=np.int64)
        return ((ell * step) % den) / float(den)
    # large denominators (float inputs, stream truncations): plain integer walk
    xs = np.empty(count)
    num = 0
    fden = float(den)
    for i in range(count):
        xs[i] = num / fden
        num += step
        if num >= den:
            num -= den
    return xs


def _as_exact_fraction(k: WaveNumberLike, n: int) -> tuple[int, int]:
    """Numerator/denominator for the direct sum's phase arithmetic.

    Digit streams are truncated to 64 + n digits, so every phase of the
    level-n sum is within 2**-64 of the stream's true one.
    """
    if isinstance(k, DigitStream):
        width = 64 + n
        return k.window_int(0, width), 1 << width
    wn = as_wave_number(k)
    return wn.m, wn.denominator


def exp_sum_direct(n: int, k: WaveNumberLike) -> ExponentialSum:
    """g_n(k) by explicit summation of 2**n terms.

    Phases use exact modular arithmetic on the numerator; the real and
    imaginary parts are reduced with math.fsum, so rounding does not grow
    with the term count.
    """
    if not 0 <= n <= MAX_LEVEL:
        raise ValueError(f"level must be in 0..{MAX_LEVEL}, got {n}")
    signs = _signs(n)
    m, den = _as_exact_fraction(k, n)
    x = _direct_fracs(m, den, 1 << n)
    phases = np.exp(-2j * np.pi * x)
    re = math.fsum(signs * phases.real)
    im = math.fsum(signs * phases.imag)
    return ExponentialSum(level=n, wave_number=k, value=complex(re, im))


def exp_sum_recursive(n: int, k: WaveNumberLike, window: int = 64) -> ExponentialSum:
    """g_n(k) via the doubling recursion: product of (1 - exp(-2 pi i x_l)).

    Each factor is assembled from sin/cos at the exact distance of x_l to
    the nearest integer, so its magnitude 2 sin(pi x_l) matches the Riesz
    factor bit-for-bit even when x_l is very close to an integer.
    """
    if n < 0:
        raise ValueError(f"level must be non-negative, got {n}")
    g = complex(1.0, 0.0)
    for lvl in frac_levels(k, n, window=window):
        if lvl.is_zero:
            g = complex(0.0, 0.0)
            break
        s = math.sin(math.pi * lvl.half_dist)
        c = math.cos(math.pi * lvl.half_dist)
        if lvl.value > 0.5:
            c = -c
        # 1 - exp(-2 pi i x) = 2 sin(pi x) * (sin(pi x) + i cos(pi x))
        g *= complex(2.0 * s * s, 2.0 * s * c)
    return ExponentialSum(level=n, wave_number=k, value=g)
