import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from primerng.errors import InvalidModulusError, InvalidPrimeError, NotAUnitError, UnsupportedSizeError
from primerng.numtheory import (
    Factorization,
    divisors,
    factorize,
    is_blum_prime,
    is_primitive_root,
    is_probable_prime,
    mod_exp,
    multiplicative_order,
)

from oracles import is_prime_slow, naive_pow, scan_order, trial_factor


@pytest.mark.parametrize(
    "args, expected",
    [((10, 6, 7), 1), ((2, 6, 13), 12), ((5, 0, 9), 1), ((123, 0, 2), 1)],
)
def test_mod_exp_examples(args, expected):
    assert mod_exp(*args) == expected


def test_mod_exp_exhaustive_against_repeated_multiplication():
    for m in range(2, 101):
        for b in range(0, m):
            for e in range(0, 101, 7):
                assert mod_exp(b, e, m) == naive_pow(b, e, m)


@pytest.mark.parametrize("m", [1, 0, -5])
def test_mod_exp_rejects_small_modulus(m):
    with pytest.raises(InvalidModulusError):
        mod_exp(2, 3, m)


@pytest.mark.parametrize("g, m, expected", [(2, 7, 3), (10, 7, 6), (2, 13, 12), (2, 32767, 15), (3, 2, 1)])
def test_multiplicative_order_examples(g, m, expected):
    assert multiplicative_order(g, m) == expected


def test_multiplicative_order_needs_unit():
    with pytest.raises(NotAUnitError):
        multiplicative_order(6, 9)


def test_multiplicative_order_matches_linear_scan():
    for m in range(2, 400):
        for g in range(1, m):
            if m % 2 == 0 and g % 2 == 0:
                continue
            try:
                got = multiplicative_order(g, m)
            except NotAUnitError:
                continue
            assert got == scan_order(g, m), (g, m)


@settings(max_examples=300)
@given(st.integers(2, 10**9), st.integers(1, 10**12))
def test_order_is_minimal(m, g):
    from math import gcd

    if gcd(g, m) != 1:
        return
    t = multiplicative_order(g, m)
    assert pow(g, t, m) == 1 % m
    for d in divisors(t)[:-1]:
        assert pow(g, d, m) != 1


def test_order_divides_p_minus_one():
    for p in (q for q in range(3, 2000) if is_prime_slow(q)):
        for g in (2, 3, 10, p - 2):
            if g % p:
                assert (p - 1) % multiplicative_order(g, p) == 0


@pytest.mark.parametrize("g, p, expected", [(2, 13, True), (2, 7, False), (10, 7, True), (2, 19, True)])
def test_is_primitive_root(g, p, expected):
    assert is_primitive_root(g, p) is expected


def test_is_primitive_root_rejects_composite():
    with pytest.raises(InvalidPrimeError):
        is_primitive_root(2, 15)


@pytest.mark.parametrize("n, expected", [(13, True), (15, False), (32767, False), (1, False), (2, True)])
def test_is_probable_prime_examples(n, expected):
    assert is_probable_prime(n, 20) is expected


def test_is_probable_prime_matches_trial_division():
    for n in range(0, 20000):
        assert is_probable_prime(n) == is_prime_slow(n), n


@pytest.mark.parametrize(
    "n, expected",
    [
        (3215031751, False),  # strong pseudoprime to bases 2, 3, 5, 7
        (2**61 - 1, True),
        (18446744073709551557, True),  # largest prime below 2^64
        (561, False),
        (41041, False),
        (825265, False),
        (321197185, False),
        ((2**31 - 1) * (2**31 + 11), False),
    ],
)
def test_is_probable_prime_hard_cases(n, expected):
    assert is_probable_prime(n) is expected


def test_is_probable_prime_beyond_64_bits_is_reproducible():
    m127 = 2**127 - 1
    assert is_probable_prime(m127, 10)
    assert not is_probable_prime(m127 * (2**61 - 1), 10)
    assert is_probable_prime(m127 * 3 + 2, 5) == is_probable_prime(m127 * 3 + 2, 5)


@pytest.mark.parametrize("p, expected", [(7, True), (13, False), (19, True), (15, False), (3, True)])
def test_is_blum_prime(p, expected):
    assert is_blum_prime(p) is expected


@pytest.mark.parametrize(
    "n, expected",
    [(32767, {7: 1, 31: 1, 151: 1}), (12, {2: 2, 3: 1}), (6897, {3: 1, 11: 2, 19: 1}), (2, {2: 1})],
)
def test_factorize_examples(n, expected):
    f = factorize(n)
    assert f.as_dict() == expected
    assert f.value == n


def test_factorize_str():
    assert str(factorize(32767)) == "7 · 31 · 151"
    assert str(factorize(12)) == "2^2 · 3"


def test_factorize_recomposes_exhaustively():
    for n in range(2, 10**6 + 1):
        f = factorize(n)
        prod = 1
        for p, e in f.factors:
            prod *= p**e
        assert prod == n


def test_factorize_random_64_bit():
    rng = random.Random(20261016)
    for _ in range(1000):
        n = rng.randrange(2, 2**64)
        f = factorize(n)
        prod = 1
        for p, e in f.factors:
            assert is_probable_prime(p)
            prod *= p**e
        assert prod == n


def test_factorize_semiprime_with_large_factors():
    p, q = 4294967291, 4294967279
    assert factorize(p * q).as_dict() == {q: 1, p: 1}


def test_factorize_bounds():
    factorize(2**64)
    with pytest.raises(UnsupportedSizeError):
        factorize(2**64 + 1)


def test_factorization_invariants():
    with pytest.raises(ValueError):
        Factorization(12, ((2, 1), (3, 1)))
    with pytest.raises(ValueError):
        Factorization(12, ((4, 1), (3, 1)))
