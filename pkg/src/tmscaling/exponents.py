"""Exact scaling exponents for rational wave numbers.

For k = m / (2**r * q) with odd q >= 3, the exponent is the average of
log2(1 - cos(2 pi n/q)) over the doubling orbit of m mod q — a finite
formula, since the orbit is a cycle and no factor vanishes for odd q.
The dyadic prefactor 2**r contributes finitely many non-zero factors and
drops out of the limit; dyadic k itself (q = 1) is an extinction point.

When 2 generates the full unit group mod q the orbit average collapses
to the closed form g(q) = 2 log(q) / ((q-1) log 2) - 1, and for general
odd q the orbit averages across divisors are tied together by a
divisor-sum identity and its Moebius inversion.  Both identities are
implemented as (lhs, rhs) pairs so tests and the CLI can measure the
defect directly.
"""

from __future__ import annotations

import math
import os
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field

from .numtheory import coset_decomposition, divisors, doubling_orbit, moebius
from .riesz import log_factor_from_half_dist
from .serialize import format_float, json_number
from .wavenumber import RationalLike, as_wave_number

THREADS_ENV_VAR = "TM_SCALING_THREADS"

#: desk-scale guard for the enumeration bounds
MAX_ENUMERATION_BOUND = 10_000


@dataclass(frozen=True)
class ExponentResult:
    """Outcome of an exponent computation.

    ``kind`` is one of 'value' (finite exponent in log-base-2 units),
    'extinct' (dyadic wave number), or 'oscillating' (no limit;
    liminf/limsup bounds from a finite trace).
    """

    kind: str
    value: float | None = None
    liminf: float | None = None
    limsup: float | None = None
    method: str = ""
    diagnostics: dict = field(default_factory=dict)

    VALUE = "value"
    EXTINCT = "extinct"
    OSCILLATING = "oscillating"

    @property
    def is_extinct(self) -> bool:
        return self.kind == self.EXTINCT

    def to_json_dict(self, digits: int = 9) -> dict:
        out: dict = {"kind": self.kind, "method": self.method}
        if self.value is not None:
            out["value"] = json_number(self.value, digits)
        if self.liminf is not None:
            out["liminf"] = json_number(self.liminf, digits)
        if self.limsup is not None:
            out["limsup"] = json_number(self.limsup, digits)
        out["diagnostics"] = self.diagnostics
        return out


def orbit_log_mean(p: int, q: int) -> float:
    """Average of log2(1 - cos(2 pi n/q)) over the doubling orbit of p mod q.

    Defined for any p not divisible by q; reducing p/q to lowest terms
    gives the same value, because the orbit of p mod q is gcd(p, q) times
    the orbit of the reduced numerator modulo the reduced denominator.
    """
    orbit = doubling_orbit(p, q)
    total = math.fsum(
        log_factor_from_half_dist(min(n, q - n) / q) for n in orbit
    )
    return total / len(orbit)


def beta_rational(k: RationalLike) -> ExponentResult:
    """Scaling exponent of a rational wave number via the orbit average.

    Dyadic k (odd part 1) is reported as extinct.  Otherwise the result
    carries the orbit the average ran over, its representative (smallest
    element), and the dyadic power r that was ignored.
    """
    wn = as_wave_number(k)
    if wn.is_dyadic:
        return ExponentResult(
            kind=ExponentResult.EXTINCT,
            method="coset-formula",
            diagnostics={"q": 1, "dyadic_power": wn.r},
        )
    orbit = doubling_orbit(wn.m % wn.q, wn.q)
    value = orbit_log_mean(wn.m % wn.q, wn.q)
    min_half = min(min(n, wn.q - n) for n in orbit) / wn.q
    return ExponentResult(
        kind=ExponentResult.VALUE,
        value=value,
        method="coset-formula",
        diagnostics={
            "q": wn.q,
            "orbit_size": len(orbit),
            "representative": min(orbit),
            "orbit": orbit,
            "dyadic_power_ignored": wn.r,
            "min_half_dist": min_half,
        },
    )


def g_closed_form(q: int) -> float:
    """g(q) = 2 log(q) / ((q-1) log 2) - 1, for odd q >= 3.

    Equals the exponent of 1/q whenever 2 is a primitive root mod q;
    positive exactly for q = 3 and q = 5.
    """
    if q < 3 or q % 2 == 0:
        raise ValueError(f"q must be odd and >= 3, got {q}")
    return 2.0 * math.log2(q) / (q - 1) - 1.0


def check_coset_sum_identity(q: int) -> tuple[float, float]:
    """Divisor-sum identity tying orbit averages to the closed form.

    lhs = (1/(q-1)) * sum over divisors d > 1 of q of
          card(S_d) * sum of exponents over the unit cosets of d;
    rhs = g(q).  Exact for every odd q >= 3, because the terms regroup
    the full factor sum over m/q, m = 1..q-1.
    """
    if q < 3 or q % 2 == 0:
        raise ValueError(f"q must be odd and >= 3, got {q}")
    parts = []
    for d in divisors(q):
        if d == 1:
            continue
        dec = coset_decomposition(d)
        coset_sum = math.fsum(orbit_log_mean(rep, d) for rep in dec.unit_representatives)
        parts.append(dec.order_of_two * coset_sum)
    lhs = math.fsum(parts) / (q - 1)
    return lhs, g_closed_form(q)


def moebius_inverted_coset_sum(q: int) -> tuple[float, float]:
    """Moebius inversion of the divisor-sum identity.

    lhs = sum of exponents over the unit-coset representatives of q;
    rhs = (1/card(S_q)) * sum over divisors d > 1 of mu(q/d) (d-1) g(d).
    """
    if q < 3 or q % 2 == 0:
        raise ValueError(f"q must be odd and >= 3, got {q}")
    dec = coset_decomposition(q)
    lhs = math.fsum(orbit_log_mean(rep, q) for rep in dec.unit_representatives)
    rhs = math.fsum(
        moebius(q // d) * (d - 1) * g_closed_form(d)
        for d in divisors(q)
        if d != 1
    ) / dec.order_of_two
    return lhs, rhs


def _thread_count(workers: int | None) -> int:
    if workers is not None:
        return max(1, workers)
    raw = os.environ.get(THREADS_ENV_VAR, "").strip()
    if not raw:
        return 1
    try:
        return max(1, int(raw))
    except ValueError:
        return 1


def _positive_rows(q: int) -> list[tuple[int, int, float]]:
    dec = coset_decomposition(q)
    rows = []
    for rep in dec.unit_representatives:
        value = orbit_log_mean(rep, q)
        if value > 0.0:
            rows.append((q, rep, value))
    return rows


def _ordered_map(fn, items, workers: int):
    if workers <= 1:
        return [fn(it) for it in items]
    # executor.map preserves input order, so the assembled output is
    # identical for every thread count
    with ThreadPoolExecutor(max_workers=workers) as pool:
        return list(pool.map(fn, items))


def enumerate_positive_exponents(q_max: int, workers: int | None = None
                                 ) -> list[tuple[int, int, float]]:
    """(q, representative, exponent) for every positive exponent, odd 5 < q < q_max.

    For each q every unit coset is considered once through its smallest
    element; a pair is listed iff the computed double-precision orbit
    average is strictly positive.  Rows are sorted by q, then
    representative.  ``workers`` defaults to the TM_SCALING_THREADS
    environment variable (parallelism only — output is identical for any
    thread count).
    """
    if q_max > MAX_ENUMERATION_BOUND:
        raise ValueError(f"q_max capped at {MAX_ENUMERATION_BOUND}, got {q_max}")
    qs = range(7, q_max, 2)
    per_q = _ordered_map(_positive_rows, qs, _thread_count(workers))
    return [row for rows in per_q for row in rows]


def _figure_row(q: int) -> tuple[int, float, float]:
    return q, orbit_log_mean(1, q), g_closed_form(q)


def figure_data(q_max: int, workers: int | None = None
                ) -> list[tuple[int, float, float]]:
    """(q, exponent of 1/q, g(q)) for odd 3 <= q < q_max, ascending."""
    if q_max > MAX_ENUMERATION_BOUND:
        raise ValueError(f"q_max capped at {MAX_ENUMERATION_BOUND}, got {q_max}")
    qs = range(3, q_max, 2)
    return _ordered_map(_figure_row, qs, _thread_count(workers))


TABLE_CSV_HEADER = "q,p,beta"
FIGURE_CSV_HEADER = "q,beta_1_over_q,g_q"


def table_csv_lines(rows: list[tuple[int, int, float]], digits: int = 6) -> list[str]:
    lines = [TABLE_CSV_HEADER]
    lines.extend(f"{q},{p},{format_float(beta, digits)}" for q, p, beta in rows)
    return lines


def table_json_rows(rows: list[tuple[int, int, float]], digits: int = 6) -> list[dict]:
    return [
        {"q": q, "p": p, "beta": json_number(beta, digits)}
        for q, p, beta in rows
    ]


def figure_csv_lines(rows: list[tuple[int, float, float]], digits: int = 6) -> list[str]:
    lines = [FIGURE_CSV_HEADER]
    lines.extend(
        f"{q},{format_float(b, digits)},{format_float(g, digits)}"
        for q, b, g in rows
    )
    return lines


def figure_json_rows(rows: list[tuple[int, float, float]], digits: int = 6) -> list[dict]:
    return [
        {"q": q, "beta_1_over_q": json_number(b, digits), "g_q": json_number(g, digits)}
        for q, b, g in rows
    ]
