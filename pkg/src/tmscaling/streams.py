"""Lazy binary digit streams with memoised prefixes.

A stream represents a number k in [0, 1) through its binary expansion
0.b1 b2 b3 ...; digit j carries weight 2**-j.  Digits come from a
deterministic generator and are cached on first read, so windowed reads
frac(2**n k) are cheap and repeatable.  Streams are single-consumer
(the cache is not locked); independent streams can be used in parallel.
"""

from __future__ import annotations

import random
from typing import Iterator, Sequence


class DigitStream:
    """Lazy binary expansion with random access via a growing cache."""

    def __init__(self, source: Iterator[int], kind: str, params: dict,
                 label_text: str | None = None):
        self._source = source
        self._cache: list[int] = []
        self.kind = kind
        self.params = dict(params)
        self._label = label_text

    def digit(self, j: int) -> int:
        """Digit b_j (0 or 1), 1-indexed."""
        if j < 1:
            raise ValueError(f"digit positions are 1-indexed, got {j}")
        cache = self._cache
        source = self._source
        while len(cache) < j:
            cache.append(next(source))
        return cache[j - 1]

    def prefix(self, count: int) -> list[int]:
        """First ``count`` digits as a list."""
        if count > 0:
            self.digit(count)
        return self._cache[:count]

    def window_int(self, shift: int, width: int) -> int:
        """Digits shift+1 .. shift+width packed big-endian into an integer."""
        self.digit(shift + width)
        out = 0
        for b in self._cache[shift:shift + width]:
            out = (out << 1) | b
        return out

    def frac_window(self, shift: int, width: int = 64) -> float:
        """Truncated fractional part frac(2**shift * k) from a width-digit window.

        The truncation error is below 2**-width; the returned float is the
        correctly rounded value of the truncated expansion, so for width
        beyond 53 the float mantissa is the binding resolution.
        """
        return self.window_int(shift, width) / float(1 << width)

    def description(self) -> dict:
        """Reproducibility record: construction kind and all parameters."""
        return {"kind": self.kind, **self.params}

    def label(self) -> str:
        if self._label is not None:
            return self._label
        inner = ",".join(f"{k}={v}" for k, v in sorted(self.params.items()))
        return f"{self.kind}({inner})"


def rational_periodic(num: int, den: int) -> DigitStream:
    """Exact (eventually periodic) binary expansion of frac(num/den)."""
    if den <= 0:
        raise ValueError(f"denominator must be positive, got {den}")

    def gen() -> Iterator[int]:
        rem = num % den
        while True:
            rem *= 2
            yield rem // den
            rem %= den

    return DigitStream(gen(), "rational-periodic", {"num": num % den, "den": den},
                       label_text=f"rational-periodic({num % den}/{den})")


def random_bits(seed: int) -> DigitStream:
    """Fair-coin digits from a seeded Mersenne Twister (random.Random)."""

    def gen() -> Iterator[int]:
        rng = random.Random(seed)
        while True:
            yield rng.getrandbits(1)

    return DigitStream(gen(), "random-bits", {"seed": seed, "generator": "mt19937"})


class PowersOfTwo:
    """Flip-position set {2**r : r >= start_exponent}.

    The default start_exponent 1 selects positions 2, 4, 8, 16, ...;
    passing 0 additionally selects position 1.
    """

    def __init__(self, start_exponent: int = 1):
        if start_exponent < 0:
            raise ValueError("start_exponent must be >= 0")
        self.start_exponent = start_exponent

    def __contains__(self, j: int) -> bool:
        return j >= (1 << self.start_exponent) and (j & (j - 1)) == 0

    def positions_upto(self, n: int) -> list[int]:
        out = []
        j = 1 << self.start_exponent
        while j <= n:
            out.append(j)
            j <<= 1
        return out

    def describe(self):
        return {"rule": "powers-of-two", "start_exponent": self.start_exponent}


def _describe_positions(positions) -> object:
    if hasattr(positions, "describe"):
        return positions.describe()
    if isinstance(positions, (set, frozenset, list, tuple)):
        return sorted(positions)
    return repr(positions)


def _positions_label(positions) -> str:
    if isinstance(positions, PowersOfTwo):
        return f"powers-of-two(start={positions.start_exponent})"
    if isinstance(positions, (set, frozenset, list, tuple)):
        return "{" + ",".join(str(p) for p in sorted(positions)) + "}"
    return repr(positions)


def flipped(base: DigitStream, positions=None) -> DigitStream:
    """Stream equal to ``base`` except with digits inverted on ``positions``.

    ``positions`` is anything supporting ``j in positions``; the default
    rule flips positions 2, 4, 8, 16, ...
    """
    if positions is None:
        positions = PowersOfTwo(1)

    def gen() -> Iterator[int]:
        j = 1
        while True:
            yield base.digit(j) ^ (1 if j in positions else 0)
            j += 1

    params = {"base": base.description(), "flips": _describe_positions(positions)}
    label = f"flipped({base.label()},flips={_positions_label(positions)})"
    return DigitStream(gen(), "flipped", params, label_text=label)


class BlockMixedStream(DigitStream):
    """Alternating blocks from two streams, indexed by absolute position.

    Block j (1-indexed) has length schedule(j) and draws from stream A for
    odd j, stream B for even j; each source digit keeps its absolute
    position, so a block reproduces a verbatim stretch of its source's
    expansion.  Block lengths must be strictly increasing.
    """

    def __init__(self, stream_a: DigitStream, stream_b: DigitStream,
                 schedule, params: dict, label_text: str | None = None):
        self._schedule = schedule

        def gen() -> Iterator[int]:
            pos = 0
            prev_len = 0
            j = 1
            while True:
                length = schedule(j)
                if length <= prev_len:
                    raise ValueError(
                        f"block lengths must be strictly increasing "
                        f"(block {j} has length {length} after {prev_len})")
                source = stream_a if j % 2 == 1 else stream_b
                for t in range(pos + 1, pos + length + 1):
                    yield source.digit(t)
                pos += length
                prev_len = length
                j += 1

        super().__init__(gen(), "block-mixed", params, label_text=label_text)

    def block_boundaries(self, limit: int) -> list[int]:
        """Cumulative block end positions up to and including ``limit``."""
        out = []
        pos = 0
        j = 1
        while True:
            pos += self._schedule(j)
            if pos > limit:
                return out
            out.append(pos)
            j += 1


def block_mixed(stream_a: DigitStream, stream_b: DigitStream,
                schedule: Sequence[int] | None = None,
                growth: int = 4) -> BlockMixedStream:
    """Mix two expansions in alternating blocks (A first).

    With the default geometric schedule, block j has length growth**j, so
    each block is at least as long as all previous blocks combined
    (for growth >= 2) and dominates the running averages at its end.
    An explicit ``schedule`` of strictly increasing lengths may be given
    instead; past its end it is continued geometrically.
    """
    if schedule is not None:
        lengths = list(schedule)
        if not lengths:
            raise ValueError("explicit schedule must be non-empty")

        def sched(j: int) -> int:
            if j <= len(lengths):
                return lengths[j - 1]
            return lengths[-1] * growth ** (j - len(lengths))

        params_sched: object = lengths
    else:
        if growth < 2:
            raise ValueError("growth must be >= 2")

        def sched(j: int) -> int:
            return growth ** j

        params_sched = f"geometric:{growth}"

    params = {
        "a": stream_a.description(),
        "b": stream_b.description(),
        "schedule": params_sched,
    }
    label = (f"block-mixed(a={stream_a.label()},b={stream_b.label()},"
             f"schedule={params_sched})")
    return BlockMixedStream(stream_a, stream_b, sched, params, label_text=label)
