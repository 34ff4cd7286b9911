"""Digit-stream experiments: equidistribution diagnostics and exponent traces.

Three families of stream-backed wave numbers are built here on top of the
generators in ``streams``:

* seeded random expansions, for which the doubling sequence is
  equidistributed and the running exponent drifts to -1 (Weyl sums and
  the running mean of log factors are reported together);
* sparse digit flips of a rational expansion (positions 2**r), which
  leave the exponent of the base rational intact because ever longer
  stretches of the two expansions agree;
* block mixtures of two expansions on a geometrically growing schedule,
  whose running exponent oscillates — recorded as liminf/limsup over the
  block-boundary checkpoints instead of a single value.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from . import riesz
from .riesz import RieszTrace, log_factor_from_half_dist
from .serialize import json_number
from .streams import (
    DigitStream,
    PowersOfTwo,
    block_mixed,
    flipped,
    random_bits,
    rational_periodic,
)
from .wavenumber import RationalLike, as_wave_number, frac_levels

__all__ = [
    "DigitStream",
    "PowersOfTwo",
    "WeylReport",
    "block_mixed",
    "flipped",
    "frac_pow2",
    "mixed_exponent_trace",
    "perturbed_exponent_trace",
    "random_bits",
    "rational_periodic",
    "rational_stream",
    "weyl_diagnostics",
]


def rational_stream(k: RationalLike) -> DigitStream:
    """Digit stream of a rational wave number's exact binary expansion."""
    wn = as_wave_number(k)
    return rational_periodic(wn.m, wn.denominator)


def frac_pow2(stream: DigitStream, n: int, window: int = 64) -> float:
    """frac(2**n k) assembled from digits n+1 .. n+window.

    Truncation error below 2**-window (the float rounding of the
    truncated value is the binding resolution once window exceeds 53).
    """
    if window < 32:
        raise ValueError(f"window must be at least 32 digits, got {window}")
    if n < 0:
        raise ValueError(f"shift must be non-negative, got {n}")
    return stream.frac_window(n, window)


@dataclass
class WeylReport:
    """Equidistribution diagnostics for x_n = frac(2**n k), n = 0..samples-1.

    ``weyl_moduli[h-1]`` is |mean of exp(2 pi i h x_n)| for harmonic h;
    all moduli tend to 0 exactly when the sequence is equidistributed.
    ``mean_log_factor`` is the running exponent after ``samples`` levels,
    which tends to -1 in the equidistributed case.
    """

    stream: dict
    samples: int
    harmonics: int
    weyl_moduli: list[float]
    mean_log_factor: float
    window: int = 64
    near_singular_refined: int = 0

    def to_json_dict(self, digits: int = 9) -> dict:
        return {
            "stream": self.stream,
            "samples": self.samples,
            "harmonics": self.harmonics,
            "weyl_moduli": [json_number(w, digits) for w in self.weyl_moduli],
            "mean_log_factor": json_number(self.mean_log_factor, digits),
            "window": self.window,
            "near_singular_refined": self.near_singular_refined,
        }


def weyl_diagnostics(stream: DigitStream, samples: int, harmonics: int,
                     window: int = 64) -> WeylReport:
    """Weyl sums for harmonics 1..``harmonics`` plus the mean log factor."""
    if samples < 1:
        raise ValueError(f"samples must be >= 1, got {samples}")
    if harmonics < 1:
        raise ValueError(f"harmonics must be >= 1, got {harmonics}")
    xs = np.empty(samples)
    refined = 0
    log_sum = 0.0
    for i, lvl in enumerate(frac_levels(stream, samples, window=window)):
        xs[i] = lvl.value
        log_sum += log_factor_from_half_dist(lvl.half_dist)
        if lvl.refined:
            refined += 1
    moduli = [
        float(abs(np.exp((2j * np.pi * h) * xs).mean()))
        for h in range(1, harmonics + 1)
    ]
    return WeylReport(
        stream=stream.description(),
        samples=samples,
        harmonics=harmonics,
        weyl_moduli=moduli,
        mean_log_factor=log_sum / samples,
        window=window,
        near_singular_refined=refined,
    )


def _default_sample_levels(n_max: int, keep: int = 4096) -> list[int]:
    """All levels when few, else an even stride that always includes n_max."""
    if n_max <= keep:
        return list(range(1, n_max + 1))
    stride = math.ceil(n_max / keep)
    levels = list(range(stride, n_max + 1, stride))
    if levels[-1] != n_max:
        levels.append(n_max)
    return levels


def perturbed_exponent_trace(base: RationalLike, positions=None,
                             n_max: int = 4096, window: int = 64,
                             sample_levels=None) -> RieszTrace:
    """Running-exponent trace of a rational expansion with flipped digits.

    ``base`` must have an odd denominator part (non-extinct); ``positions``
    defaults to flips at 2, 4, 8, ...  The trace converges toward the base
    rational's exponent as the flips thin out.
    """
    wn = as_wave_number(base)
    if wn.is_dyadic:
        raise ValueError("base must have an odd part q >= 3 (non-dyadic)")
    if positions is None:
        positions = PowersOfTwo(1)
    stream = flipped(rational_periodic(wn.m, wn.denominator), positions)
    if sample_levels is None:
        sample_levels = _default_sample_levels(n_max)
    return riesz.trace(stream, n_max, sample_levels=sample_levels, window=window)


def mixed_exponent_trace(stream_a: DigitStream, stream_b: DigitStream,
                         n_max: int, schedule=None, growth: int = 4,
                         window: int = 64) -> tuple[RieszTrace, float, float]:
    """Trace a block mixture and report (trace, liminf, limsup).

    The running exponent is recorded at every block boundary up to
    ``n_max`` and at ``n_max`` itself; the returned liminf/limsup are the
    extremes over those checkpoints, the finite stand-in for the limit
    points of the (non-convergent) exponent sequence.
    """
    if n_max < 1:
        raise ValueError(f"n_max must be >= 1, got {n_max}")
    mixed = block_mixed(stream_a, stream_b, schedule=schedule, growth=growth)
    checkpoints = mixed.block_boundaries(n_max)
    if not checkpoints or checkpoints[-1] != n_max:
        checkpoints.append(n_max)
    tr = riesz.trace(mixed, n_max, sample_levels=checkpoints, window=window)
    running = tr.running_exponents()
    return tr, min(running), max(running)
