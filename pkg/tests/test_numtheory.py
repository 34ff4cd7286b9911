import math
import random

import pytest

from tmscaling.numtheory import (
    coset_decomposition,
    divisors,
    doubling_orbit,
    moebius,
    mult_order_of_two,
)

from conftest import brute_divisors, brute_prime_factors, euler_phi


def test_divisors_unit():
    assert divisors(1) == [1]


def test_divisors_prime_power():
    assert divisors(9) == [1, 3, 9]


def test_divisors_squarefree_composite():
    # frozen from the trial-division oracle
    assert divisors(105) == [1, 3, 5, 7, 15, 21, 35, 105]


@pytest.mark.parametrize("n", [2, 12, 64, 97, 360, 1001, 4096])
def test_divisors_against_brute_force(n):
    assert divisors(n) == brute_divisors(n)


def test_divisors_rejects_nonpositive():
    with pytest.raises(ValueError):
        divisors(0)


def test_moebius_small_values():
    assert moebius(1) == 1
    assert moebius(9) == 0  # square factor
    assert moebius(105) == -1  # 3 * 5 * 7


@pytest.mark.parametrize("n", list(range(1, 200)))
def test_moebius_against_factorisation(n):
    factors = brute_prime_factors(n)
    if len(set(factors)) != len(factors):
        assert moebius(n) == 0
    else:
        assert moebius(n) == (-1) ** len(factors)


@pytest.mark.parametrize("q", list(range(2, 300)))
def test_moebius_divisor_sum(q):
    assert sum(moebius(d) for d in divisors(q)) == 0
    assert sum(moebius(d) for d in divisors(1)) == 1


@pytest.mark.parametrize("q,expected", [(3, 2), (9, 6), (17, 8)])
def test_mult_order_of_two_known(q, expected):
    # frozen from a direct cycle search
    assert mult_order_of_two(q) == expected


@pytest.mark.parametrize("q", list(range(3, 400, 2)))
def test_mult_order_is_minimal(q):
    order = mult_order_of_two(q)
    assert pow(2, order, q) == 1
    assert all(pow(2, j, q) != 1 for j in range(1, order))


@pytest.mark.parametrize("bad", [2, 1, 0, -3, 10])
def test_mult_order_rejects_bad_modulus(bad):
    with pytest.raises(ValueError):
        mult_order_of_two(bad)


def test_doubling_orbit_examples():
    assert doubling_orbit(1, 7) == [1, 2, 4]
    assert doubling_orbit(3, 7) == [3, 6, 5]
    # gcd(3, 9) = 3: orbit shorter than the order of 2 mod 9
    assert doubling_orbit(3, 9) == [3, 6]


def test_doubling_orbit_rejects_multiple_of_q():
    with pytest.raises(ValueError):
        doubling_orbit(0, 7)
    with pytest.raises(ValueError):
        doubling_orbit(14, 7)


def test_orbit_length_equals_order_for_units():
    rng = random.Random(1)
    for _ in range(100):
        q = rng.randrange(3, 1000, 2)
        p = rng.randrange(1, q)
        if math.gcd(p, q) != 1:
            continue
        assert len(doubling_orbit(p, q)) == mult_order_of_two(q)


def test_coset_decomposition_q7():
    dec = coset_decomposition(7)
    assert dec.unit_orbits == [[1, 2, 4], [3, 6, 5]]
    assert dec.unit_representatives == [1, 3]
    assert dec.order_of_two == 3


def test_coset_decomposition_q9():
    dec = coset_decomposition(9)
    assert dec.unit_orbits == [[1, 2, 4, 8, 7, 5]]
    assert [sorted(o) for o in dec.orbits if sorted(o) == [3, 6]]
    assert dec.order_of_two == 6


def test_coset_decomposition_q17():
    dec = coset_decomposition(17)
    assert dec.unit_representatives == [1, 3]
    assert all(len(o) == 8 for o in dec.unit_orbits)


def test_coset_decomposition_rejects_even():
    with pytest.raises(ValueError):
        coset_decomposition(8)


@pytest.mark.parametrize("q", list(range(3, 402, 2)))
def test_decomposition_invariants(q):
    dec = coset_decomposition(q)
    # exact partition of {1, ..., q-1}
    all_residues = sorted(x for orbit in dec.orbits for x in orbit)
    assert all_residues == list(range(1, q))
    for orbit in dec.orbits:
        # full doubling cycle starting at the minimum
        assert orbit[0] == min(orbit)
        for i, x in enumerate(orbit):
            assert orbit[(i + 1) % len(orbit)] == (2 * x) % q
    # the orbit of 1 is the subgroup generated by 2
    assert dec.orbits[0][0] == 1
    assert len(dec.orbits[0]) == mult_order_of_two(q)
    # cosets have equal cardinality and exhaust the unit group
    assert all(len(o) == dec.order_of_two for o in dec.unit_orbits)
    assert sum(len(o) for o in dec.unit_orbits) == euler_phi(q)
    # deterministic ordering by representative
    reps = dec.representatives
    assert reps == sorted(reps)


def test_totient_sum_up_to_2000():
    for q in range(3, 2001, 2):
        dec = coset_decomposition(q)
        assert sum(len(o) for o in dec.unit_orbits) == euler_phi(q)
