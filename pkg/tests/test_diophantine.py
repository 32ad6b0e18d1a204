"""Canonical seed decomposition, gear sequences, structural primality."""

import math

import pytest
from hypothesis import given
from hypothesis.strategies import integers

from gearsieve.diophantine import (
    canonical_seed,
    gear_sequence,
    is_prime_candidate,
    structural_is_prime,
)


def _sieve_primes(limit):
    """Test-local primality oracle: plain boolean sieve up to limit."""
    flags = bytearray([1]) * (limit + 1)
    flags[0] = flags[1] = 0
    for p in range(2, math.isqrt(limit) + 1):
        if flags[p]:
            flags[p * p :: p] = bytearray(len(flags[p * p :: p]))
    return flags


def test_seed_small_values():
    # n = 2 n0 + 3 m0 with n0 the unique choice in {0, 1, 2}
    s = canonical_seed(6)
    assert (s.n0, s.m0) == (0, 2)
    s = canonical_seed(7)
    assert (s.n0, s.m0) == (2, 1)
    s = canonical_seed(11)
    assert (s.n0, s.m0) == (1, 3)
    s = canonical_seed(25)
    assert (s.n0, s.m0) == (2, 7)
    s = canonical_seed(37)
    assert (s.n0, s.m0) == (2, 11)


def test_seed_residue_table():
    # the offset n0 depends only on n mod 3: 0 -> 0, 1 -> 2, 2 -> 1
    for n in range(4, 400):
        s = canonical_seed(n)
        assert s.n0 == {0: 0, 1: 2, 2: 1}[n % 3]


@given(integers(min_value=4, max_value=10**12))
def test_seed_roundtrip(n):
    s = canonical_seed(n)
    assert 2 * s.n0 + 3 * s.m0 == n
    assert s.n0 in (0, 1, 2)
    assert s.m0 >= 0


def test_seed_m0_is_maximal():
    # no decomposition with a larger m exists within the offset range
    for n in range(4, 300):
        s = canonical_seed(n)
        rest = n - 3 * (s.m0 + 1)
        representable = rest >= 0 and rest % 2 == 0 and rest // 2 <= 2
        assert not representable


def test_seed_rejects_small_n():
    with pytest.raises(ValueError):
        canonical_seed(3)
    with pytest.raises(ValueError):
        canonical_seed(0)


def test_candidate_matches_coprimality():
    # candidates are exactly the integers coprime to 6
    for n in range(5, 2000):
        s = canonical_seed(n)
        assert is_prime_candidate(s) == (math.gcd(n, 6) == 1)


def test_gear_sequence_structure():
    s = canonical_seed(97)  # n0 = 2, m0 = 31
    gears = gear_sequence(s)
    assert gears[0].n_k == s.n0 and gears[0].m_k == s.m0
    for g in gears:
        assert 2 * g.n_k + 3 * g.m_k == 97
        assert g.m_k % 2 == 1 and g.m_k >= 3
    ms = [g.m_k for g in gears]
    assert ms == list(range(s.m0, 2, -2))


def test_gear_sequence_rejects_even_m0():
    s = canonical_seed(6)  # m0 = 2, even
    with pytest.raises(ValueError):
        gear_sequence(s)


def test_structural_primality_examples():
    assert structural_is_prime(5)
    assert structural_is_prime(7)
    assert structural_is_prime(97)
    assert not structural_is_prime(25)
    assert not structural_is_prime(49)
    assert not structural_is_prime(91)  # 7 * 13
    assert not structural_is_prime(9)
    assert not structural_is_prime(15)


def test_structural_primality_rejects_multiples_of_two_and_three():
    for n in (4, 6, 8, 9, 12, 21, 27, 100):
        assert not structural_is_prime(n)


def test_structural_matches_sieve_oracle():
    limit = 20000
    flags = _sieve_primes(limit)
    for n in range(5, limit + 1):
        if math.gcd(n, 6) != 1:
            continue
        assert structural_is_prime(n) == bool(flags[n]), n


def test_structural_rejects_tiny_n():
    with pytest.raises(ValueError):
        structural_is_prime(3)


@given(integers(min_value=5, max_value=10**6))
def test_structural_agrees_with_factor_search(n):
    if math.gcd(n, 6) != 1:
        return
    has_factor = any(n % d == 0 for d in range(5, math.isqrt(n) + 1, 2))
    assert structural_is_prime(n) == (not has_factor)
