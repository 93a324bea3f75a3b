import random
from fractions import Fraction
from math import prod

import gmpy2
import pytest
from hypothesis import given, settings, strategies as st

from dpairs.arith import (
    SPFSieve,
    badesa_factor,
    factorize,
    is_fundamental,
    isqrt,
    kronecker,
    sigma1,
    split_discriminant,
    sqrt_mod,
)


def brute_sqrt_mod(n, m):
    return [x for x in range(m) if (x * x - n) % m == 0]


def divisors(m):
    return [d for d in range(1, m + 1) if m % d == 0]


@pytest.mark.parametrize("m, r", [(0, 0), (15, 3), (10**18, 10**9), (24, 4), (25, 5)])
def test_isqrt(m, r):
    assert isqrt(m) == r


def test_isqrt_negative():
    with pytest.raises(ValueError):
        isqrt(-1)


@given(st.integers(min_value=0, max_value=10**40))
def test_isqrt_bracket(m):
    r = isqrt(m)
    assert r * r <= m < (r + 1) ** 2


def test_kronecker_examples():
    # x^2 = -4 = 1 (mod 5) is solvable
    assert any((x * x + 4) % 5 == 0 for x in range(5))
    assert kronecker(-4, 5) == 1
    # x^2 = 5 (mod 8) has no solution
    assert not any((x * x - 5) % 8 == 0 for x in range(8))
    assert kronecker(5, 2) == -1
    for d in (-7, 0, 3, 12, 10**9 + 7):
        assert kronecker(d, 1) == 1


def test_kronecker_matches_gmpy2():
    rng = random.Random(1)
    for _ in range(5000):
        a = rng.randint(-10**6, 10**6)
        b = rng.randint(-10**6, 10**6)
        if a == 0 and b == 0:
            continue
        assert kronecker(a, b) == gmpy2.kronecker(a, b), (a, b)


def test_kronecker_multiplicative_in_bottom():
    rng = random.Random(2)
    for _ in range(10**4):
        a = rng.randint(-500, 500)
        b = rng.randint(-500, 500)
        c = rng.randint(-500, 500)
        if a == 0 and (b == 0 or c == 0):
            continue
        if b == 0 or c == 0:
            continue
        assert kronecker(a, b * c) == kronecker(a, b) * kronecker(a, c), (a, b, c)


@pytest.mark.parametrize("m, expected", [(1, ()), (20, ((2, 2), (5, 1))), (97, ((97, 1),))])
def test_factorize_examples(m, expected):
    assert factorize(m).factors == expected


def test_factorize_sieve_and_trial_agree():
    sieve = SPFSieve(5000)
    for m in range(1, 5001):
        f = factorize(m, sieve)
        assert f == factorize(m)
        assert prod(p**e for p, e in f.factors) == m
    # beyond the sieve falls back to trial division
    assert factorize(2**5 * 10007, sieve).factors == ((2, 5), (10007, 1))


@pytest.mark.parametrize("m, s", [(1, 1), (4, 7), (12, 28)])
def test_sigma1_examples(m, s):
    assert sigma1(m) == s


def test_sigma1_against_divisor_sum():
    for m in range(1, 400):
        assert sigma1(m) == sum(divisors(m))


@pytest.mark.parametrize(
    "D, d0, f", [(-20, -20, 1), (-16, -4, 2), (20, 5, 2), (-4, -4, 1), (-3, -3, 1), (12, 12, 1), (-108, -3, 6)]
)
def test_split_discriminant_examples(D, d0, f):
    sp = split_discriminant(D)
    assert (sp.d0, sp.f) == (d0, f)


@pytest.mark.parametrize("D", [4, 16, 0, 2, -5, 7])
def test_split_discriminant_rejects(D):
    with pytest.raises(ValueError):
        split_discriminant(D)


def test_split_discriminant_roundtrip():
    fundamentals = [d for d in range(-100, 101) if is_fundamental(d)]
    assert -4 in fundamentals and -3 in fundamentals and 5 in fundamentals and 8 in fundamentals
    assert 1 not in fundamentals and -16 not in fundamentals and 20 not in fundamentals
    for d0 in fundamentals:
        for f in range(1, 51):
            sp = split_discriminant(d0 * f * f)
            assert (sp.d0, sp.f) == (d0, f)


def badesa_by_divisor_sum(f, d0):
    total = Fraction(0)
    for l in divisors(f):
        term = Fraction(l)
        for p, _ in factorize(l).factors:
            term *= 1 - Fraction(kronecker(d0, p), p)
        total += term
    return total


@pytest.mark.parametrize("f, d0, value", [(1, -4, 1), (1, 5, 1), (2, -4, 3), (2, 5, 4)])
def test_badesa_examples(f, d0, value):
    assert badesa_factor(f, d0) == value
    assert badesa_by_divisor_sum(f, d0) == value


@pytest.mark.parametrize("d0", [-4, -3, 5, 8, -20])
def test_badesa_multiplicativity_lemma(d0):
    for f in range(1, 10**4 + 1):
        assert badesa_factor(f, d0) == badesa_by_divisor_sum(f, d0), f


@pytest.mark.parametrize("n, m, roots", [(1, 8, [1, 3, 5, 7]), (2, 3, []), (0, 1, [0]), (-4, 8, [2, 6]), (0, 16, [0, 4, 8, 12])])
def test_sqrt_mod_examples(n, m, roots):
    assert sqrt_mod(n, m) == roots
    assert brute_sqrt_mod(n, m) == roots


def test_sqrt_mod_exhaustive_small_moduli():
    rng = random.Random(3)
    for m in range(1, 700):
        for n in [rng.randint(-10**6, 10**6) for _ in range(8)] + [0, 1, -1, 4, -4, m, 2 * m]:
            assert sqrt_mod(n, m) == brute_sqrt_mod(n, m), (n, m)


@settings(max_examples=300, deadline=None)
@given(st.integers(min_value=1, max_value=10**5), st.integers(min_value=-10**9, max_value=10**9))
def test_sqrt_mod_random_moduli(m, n):
    # residues are sparse; exhaustive brute force over x in [0, m)
    assert sqrt_mod(n, m) == brute_sqrt_mod(n, m)


def test_sqrt_mod_squares_of_structured_n():
    # n a square times a high prime power hits the p | n branches
    for p, e in [(2, 12), (3, 7), (5, 5), (7, 4)]:
        m = p**e
        for n in (p**2, p**3, p**4 * 3, -(p**2), 0):
            assert sqrt_mod(n, m) == brute_sqrt_mod(n, m), (n, m)
