"""Finite Riesz-product densities and their logarithms.

The level-n density is the partial product

    f_n(k) = prod_{l=0}^{n-1} (1 - cos(2**(l+1) pi k)),

whose factors depend only on x_l = frac(2**l k) through
1 - cos(2 pi x) = 2 sin(pi x)**2.  All logarithms are base 2 internally,
because the scaling exponent of interest is log2(f_n)/n; natural-log
values appear only at reporting boundaries (``check_log_integral``,
``check_qsum``).

Numerical policy: factors are always evaluated as 2 sin(pi d)**2 where d
is the exact distance of x_l to the nearest integer (no cancellation near
x = 1), and a factor is declared zero only when integer arithmetic says
x_l is exactly 0 — never by floating-point comparison.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from .serialize import format_float, json_number
from .streams import DigitStream
from .wavenumber import WaveNumberLike, as_wave_number, frac_levels

LOG2 = math.log(2.0)
_NEG_INF = float("-inf")


def log_factor_from_half_dist(half_dist: float) -> float:
    """log2(2 sin(pi*d)**2) for d = distance of x to the nearest integer."""
    if half_dist <= 0.0:
        return _NEG_INF
    return 1.0 + 2.0 * math.log2(math.sin(math.pi * half_dist))


def log_factor(x: float) -> float:
    """log2(1 - cos(2 pi x)), evaluated stably as log2(2 sin(pi x)**2).

    Exactly -inf at x in {0, 1}; raises outside [0, 1].
    """
    if not 0.0 <= x <= 1.0:
        raise ValueError(f"x must lie in [0, 1], got {x}")
    if x == 0.0 or x == 1.0:
        return _NEG_INF
    return log_factor_from_half_dist(min(x, 1.0 - x))


def log_factor_exact(num: int, den: int) -> float:
    """log2(1 - cos(2 pi num/den)) with the half-distance taken in integers."""
    num %= den
    if num == 0:
        return _NEG_INF
    return log_factor_from_half_dist(min(num, den - num) / den)


def partial_product_log(k: WaveNumberLike, n: int, window: int = 64) -> float:
    """log2 f_n(k): sum of log factors over levels 0 .. n-1; -inf once extinct."""
    if n < 0:
        raise ValueError(f"level must be non-negative, got {n}")
    total = 0.0
    for lvl in frac_levels(k, n, window=window):
        if lvl.is_zero:
            return _NEG_INF
        total += log_factor_from_half_dist(lvl.half_dist)
    return total


def running_exponent(k: WaveNumberLike, n: int, window: int = 64) -> float:
    """Exponent estimate log2(f_n(k)) / n at level n >= 1."""
    if n < 1:
        raise ValueError(f"running exponent needs n >= 1, got {n}")
    return partial_product_log(k, n, window=window) / n


@dataclass(frozen=True, slots=True)
class TraceSample:
    level: int
    log2_f: float
    running_exponent: float


@dataclass
class RieszTrace:
    """Sampled history of (n, log2 f_n, log2 f_n / n) for one wave number.

    ``extinct_at`` is the first level whose factor vanishes (dyadic k
    only); beyond it both recorded quantities are -inf.  ``quality``
    records the stream window width and how many samples needed the
    near-singular refinement.
    """

    wave_number: str
    samples: list[TraceSample] = field(default_factory=list)
    extinct_at: int | None = None
    quality: dict = field(default_factory=dict)

    @property
    def final_running_exponent(self) -> float:
        return self.samples[-1].running_exponent

    def running_exponents(self) -> list[float]:
        return [s.running_exponent for s in self.samples]

    def to_csv_lines(self, digits: int = 6) -> list[str]:
        lines = ["n,log2_f,running_exponent"]
        for s in self.samples:
            lines.append(f"{s.level},{format_float(s.log2_f, digits)},"
                         f"{format_float(s.running_exponent, digits)}")
        return lines

    def to_json_dict(self, digits: int = 6) -> dict:
        return {
            "wave_number": self.wave_number,
            "extinct_at": self.extinct_at,
            "quality": self.quality,
            "samples": [
                {
                    "n": s.level,
                    "log2_f": json_number(s.log2_f, digits),
                    "running_exponent": json_number(s.running_exponent, digits),
                }
                for s in self.samples
            ],
        }


def trace(k: WaveNumberLike, n_max: int, sample_levels=None,
          window: int = 64, label: str | None = None) -> RieszTrace:
    """Build a RieszTrace up to level ``n_max``.

    ``sample_levels`` restricts which levels are recorded (default: all of
    1 .. n_max); the accumulation itself always walks every level.
    """
    if n_max < 1:
        raise ValueError(f"n_max must be >= 1, got {n_max}")
    if sample_levels is None:
        wanted = None
    else:
        wanted = {int(s) for s in sample_levels}
        bad = [s for s in wanted if not 1 <= s <= n_max]
        if bad:
            raise ValueError(f"sample levels outside 1..{n_max}: {sorted(bad)}")

    if label is None:
        label = k.label() if isinstance(k, DigitStream) else str(as_wave_number(k))

    out = RieszTrace(wave_number=label)
    total = 0.0
    extinct_at: int | None = None
    refined = 0
    level = 0
    for lvl in frac_levels(k, n_max, window=window):
        if lvl.is_zero and extinct_at is None:
            extinct_at = level
        if lvl.refined:
            refined += 1
        if extinct_at is None:
            total += log_factor_from_half_dist(lvl.half_dist)
        level += 1
        if wanted is None or level in wanted:
            log2_f = total if extinct_at is None else _NEG_INF
            out.samples.append(TraceSample(level, log2_f, log2_f / level))
    out.extinct_at = extinct_at
    if isinstance(k, DigitStream):
        out.quality = {"window": window, "near_singular_refined": refined}
    return out


def _grid_density(n: int, x: np.ndarray) -> np.ndarray:
    """f_n at float grid points (doubling done in floats; fine for n <= 12)."""
    val = np.ones_like(x)
    y = np.mod(x, 1.0)
    for _ in range(n):
        half = np.minimum(y, 1.0 - y)
        s = np.sin(np.pi * half)
        val *= 2.0 * s * s
        y = np.mod(2.0 * y, 1.0)
    return val


def interval_mass(n: int, a: float, b: float,
                  nodes_per_unit: int | None = None) -> float:
    """Mass of f_n over [a, b) by a uniform left-endpoint grid.

    On the full interval [0, 1] with a power-of-two node count the sum is
    the exact integral (f_n is a trigonometric polynomial with
    frequencies below 2**n, and the fractional parts on the grid are
    computed by integer bit arithmetic), so interval_mass(n, 0, 1) is 1
    up to rounding.  Sub-intervals are first-order accurate in the grid
    step.
    """
    if not 0.0 <= a < b <= 1.0:
        raise ValueError(f"need 0 <= a < b <= 1, got a={a}, b={b}")
    if not 0 <= n <= 12:
        raise ValueError(f"level must be in 0..12, got {n}")
    if nodes_per_unit is None:
        nodes_per_unit = 1 << max(n + 3, 12)
    if nodes_per_unit < (1 << (n + 3)):
        raise ValueError("need at least 2**(n+3) nodes per unit length")

    if a == 0.0 and b == 1.0 and nodes_per_unit & (nodes_per_unit - 1) == 0:
        N = nodes_per_unit
        j = np.arange(N, dtype=np.int64)
        val = np.ones(N)
        for l in range(n):
            idx = (j << l) & (N - 1)
            half = np.minimum(idx, N - idx) / N
            s = np.sin(np.pi * half)
            val *= 2.0 * s * s
        return float(val.mean())

    nodes = max(16, math.ceil((b - a) * nodes_per_unit))
    h = (b - a) / nodes
    x = a + h * np.arange(nodes)
    return float(_grid_density(n, x).sum() * h)


def check_log_integral(nodes: int) -> float:
    """Midpoint-rule estimate of integral_0^1 log(1 - cos(2 pi x)) dx.

    The integrand has integrable log singularities at both endpoints; the
    midpoint grid avoids them, and the estimate converges to -log(2).
    (For this particular integrand the midpoint defect is exactly
    2 log(2)/nodes, which the tests exploit.)  Natural log.
    """
    if nodes < 1:
        raise ValueError(f"nodes must be >= 1, got {nodes}")
    x = (np.arange(nodes) + 0.5) / nodes
    half = np.minimum(x, 1.0 - x)
    return float(np.mean(LOG2 + 2.0 * np.log(np.sin(np.pi * half))))


def check_qsum(n: int) -> tuple[float, float]:
    """Both sides of sum_{m=1}^{n-1} log(1 - cos(2 pi m/n)) = log(n**2 / 2**(n-1)).

    Left side by direct summation, right side in closed form; natural log.
    Holds for every n >= 1 (empty sum = log 1 at n = 1).
    """
    if n < 1:
        raise ValueError(f"n must be >= 1, got {n}")
    if n == 1:
        return 0.0, 0.0
    m = np.arange(1, n)
    half = np.minimum(m, n - m) / n
    lhs = float((n - 1) * LOG2 + 2.0 * np.sum(np.log(np.sin(np.pi * half))))
    rhs = 2.0 * math.log(n) - (n - 1) * LOG2
    return lhs, rhs
