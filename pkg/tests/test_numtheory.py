import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from groupdepth.errors import IncompleteFactorization, NotFoundWithinLimit
from groupdepth.numtheory import (
    FactoredInt,
    GoldbachTriple,
    big_omega,
    depth3_prime_search,
    factorize,
    is_prime,
    prime_divisors,
    primality_is_certified,
    ternary_goldbach,
    ternary_goldbach_range,
)


def _sieve(limit):
    flags = [True] * (limit + 1)
    flags[0] = flags[1] = False
    for p in range(2, int(limit**0.5) + 1):
        if flags[p]:
            for m in range(p * p, limit + 1, p):
                flags[m] = False
    return flags


def test_is_prime_matches_sieve_below_10000():
    flags = _sieve(10_000)
    for n in range(10_001):
        assert is_prime(n) == flags[n], n


def test_is_prime_large_known_values():
    assert is_prime(2**61 - 1)
    assert not is_prime(2**67 - 1)  # 193707721 * 761838257287
    assert is_prime(2**89 - 1)
    assert is_prime(10**18 + 9)
    assert not is_prime(10**18 + 7)


def test_primality_certified_boundary():
    assert primality_is_certified(2**61 - 1)
    assert not primality_is_certified(2**89 - 1)


def test_factorize_small():
    f = factorize(360)
    assert f.factors == ((2, 3), (3, 2), (5, 1))
    assert f.complete
    assert f.omega() == 6
    assert f.value == 360


def test_factorize_units_and_primes():
    assert factorize(1).factors == ()
    assert factorize(1).omega() == 0
    assert factorize(97).factors == ((97, 1),)


def test_factorize_semiprime_9841():
    # 3^9 + 2*... no: 9841 = (3^9 - 2)/2 + ... it is just 13 * 757
    f = factorize(9841)
    assert f.factors == ((13, 1), (757, 1))


def test_factorize_medium_composites():
    f = factorize((2**31 - 1) * (2**61 - 1))
    assert f.factors == ((2**31 - 1, 1), (2**61 - 1, 1))
    assert f.complete


def test_factorize_incomplete_on_tiny_budget():
    # Product of two 40-digit-ish primes cannot split within a tiny budget.
    p = 2**127 - 1
    q = 2**521 - 1
    f = factorize(p * q, budget=10)
    assert not f.complete
    assert f.omega() is None
    assert f.value == p * q
    rebuilt = f.factored_part() * f.cofactor()
    assert rebuilt == p * q


def test_big_omega_known_values():
    assert big_omega(1) == 0
    assert big_omega(2) == 1
    assert big_omega(1024) == 10
    assert big_omega(9828) == 7  # 2^2 * 3^3 * 7 * 13
    assert big_omega(2**4 * 3**2 * 5 * 11) == 8


def test_prime_divisors():
    assert prime_divisors(12) == (2, 3)
    assert prime_divisors(97) == (97,)
    with pytest.raises(IncompleteFactorization):
        prime_divisors((2**127 - 1) * (2**521 - 1), budget=10)


def test_factored_int_roundtrip():
    f = factorize(2**10 * 3**4 * 1009)
    g = FactoredInt.from_dict(f.to_dict())
    assert g == f
    assert g.omega() == f.omega()


@given(st.integers(min_value=2, max_value=10**6))
@settings(max_examples=200, deadline=None)
def test_factorize_product_reconstructs(n):
    f = factorize(n)
    assert f.complete
    prod = 1
    for p, e in f.factors:
        assert is_prime(p)
        prod *= p**e
    assert prod == n


@given(st.integers(min_value=2, max_value=10**4), st.integers(min_value=2, max_value=10**4))
@settings(max_examples=100, deadline=None)
def test_big_omega_additive(a, b):
    assert big_omega(a * b) == big_omega(a) + big_omega(b)


# -- ternary Goldbach -------------------------------------------------------


def test_goldbach_smallest_cases():
    assert ternary_goldbach(7) == GoldbachTriple(7, 2, 2, 3)
    assert ternary_goldbach(9) == GoldbachTriple(9, 3, 3, 3)
    assert ternary_goldbach(11) == GoldbachTriple(11, 3, 3, 5)
    assert ternary_goldbach(17) == GoldbachTriple(17, 3, 3, 11)
    assert ternary_goldbach(21) == GoldbachTriple(21, 3, 5, 13)


def test_goldbach_all_odd_preferred():
    # Every odd m >= 9 should get an all-odd triple; 7 is the lone exception.
    assert not ternary_goldbach(7).all_odd()
    for m in range(9, 2001, 2):
        t = ternary_goldbach(m)
        assert t.p1 + t.p2 + t.p3 == m
        assert t.all_odd(), m


def test_goldbach_triple_validation():
    with pytest.raises(ValueError):
        GoldbachTriple(11, 2, 3, 5)  # wrong sum
    with pytest.raises(ValueError):
        GoldbachTriple(12, 2, 4, 6)  # non-primes


def test_goldbach_range_iterates_consistently():
    triples = list(ternary_goldbach_range(7, 101))
    assert [t.m for t in triples] == list(range(7, 101, 2))
    for t in triples:
        assert t.p1 + t.p2 + t.p3 == t.m


def test_goldbach_roundtrip():
    t = ternary_goldbach(999)
    assert GoldbachTriple.from_dict(t.to_dict()) == t


# -- depth-three prime search ----------------------------------------------


def test_depth3_prime_search_frozen_values():
    # Smallest admissible primes, frozen from an independent scan.
    assert depth3_prime_search(2) == 43
    assert depth3_prime_search(3) == 2003
    assert depth3_prime_search(4) == 2003  # 2002 = 2 * 7 * 11 * 13


def test_depth3_prime_search_result_properties():
    for n in (2, 3, 4):
        p = depth3_prime_search(n)
        assert is_prime(p)
        assert p % 40 in (3, 13, 27, 37)
        assert big_omega(p - 1) >= n


def test_depth3_prime_search_limit():
    with pytest.raises(NotFoundWithinLimit):
        depth3_prime_search(2, limit=40)
