"""Windowed signal evaluation, certification, and the classical oracle."""

import math
from fractions import Fraction

import numpy as np
import pytest

from gearsieve.constellations import COUSINS, SEXY, TWINS, Constellation
from gearsieve.engine import (
    Window,
    build_basis,
    certify,
    classical_oracle_count,
    composite_signal,
    first_candidate_above,
    goldbach_count,
    signal_values,
    torus_average,
)


def _local_prime_set(limit):
    flags = bytearray([1]) * (limit + 1)
    flags[0] = flags[1] = 0
    for p in range(2, math.isqrt(limit) + 1):
        if flags[p]:
            flags[p * p :: p] = bytearray(len(flags[p * p :: p]))
    return {n for n in range(limit + 1) if flags[n]}


def _brute_signal(anchor, count, primes, offsets, count_self_hits):
    """Directly count divisor hits per position, one modulo at a time."""
    values = []
    for r in range(count):
        start = anchor + 2 * r
        hits = 0
        for p in primes:
            for h in offsets:
                member = start + h
                if member % p == 0 and (count_self_hits or member != p):
                    hits += 1
        values.append(hits)
    return values


def test_window_validation():
    with pytest.raises(ValueError):
        Window(8, 100)  # even anchor
    with pytest.raises(ValueError):
        Window(9, 100)  # divisible by three
    with pytest.raises(ValueError):
        Window(7, 7)  # empty
    w = Window(7, 900)
    assert w.length == 893
    assert w.positions == 447
    assert w.value_at(0) == 7 and w.value_at(446) == 899


def test_window_for_capacity():
    w = Window.for_capacity(30)
    assert (w.anchor, w.end) == (7, 900)
    w = Window.for_capacity(101, anchor=11)
    assert (w.anchor, w.end) == (11, 10201)


def test_in_range_positions():
    w = Window(7, 900)
    assert w.in_range_positions(0) == 447
    assert w.in_range_positions(2) == 446
    # a span wider than the window leaves nothing in range
    assert w.in_range_positions(1000) == 0


def test_build_basis():
    basis = build_basis(29)
    assert list(basis.primes) == [3, 5, 7, 11, 13, 17, 19, 23, 29]
    assert basis.m0 == 29
    with pytest.raises(ValueError):
        build_basis(30)
    with pytest.raises(ValueError):
        build_basis(1)


def test_first_candidate_above():
    assert first_candidate_above(9) == 11
    assert first_candidate_above(30) == 31
    assert first_candidate_above(7) == 11
    assert first_candidate_above(31) == 35


def test_signal_matches_brute_force():
    primes = build_basis(9).primes  # 3, 5, 7
    for offsets in ((0, 2), (0, 4), (0, 6), (0, 2, 6)):
        got = signal_values(7, 40, primes, offsets)
        want = _brute_signal(7, 40, [3, 5, 7], offsets, True)
        assert got.tolist() == want


def test_signal_proper_variant_matches_brute_force():
    primes = build_basis(13).primes
    got = signal_values(7, 60, primes, (0, 2), count_self_hits=False)
    want = _brute_signal(7, 60, [3, 5, 7, 11, 13], (0, 2), False)
    assert got.tolist() == want


def test_certified_twins_match_local_oracle():
    prime_set = _local_prime_set(1000)
    for m0 in (9, 15, 31):
        basis = build_basis(m0)
        window = Window.for_capacity(m0)
        trace = composite_signal(basis, window, TWINS)
        result = certify(trace, survivors=True)
        expected = [
            n
            for n in range(window.anchor, window.end - 2, 2)
            if n > m0 and n in prime_set and (n + 2) in prime_set
        ]
        assert list(result.survivors) == expected
        assert result.count == len(expected)


def test_certify_against_classical_oracle():
    # anchoring above the basis bound keeps every member clear of the
    # basis primes, so literal certification equals true tuple counting
    for m0, constellation in ((15, TWINS), (21, SEXY), (31, COUSINS)):
        basis = build_basis(m0)
        window = Window(first_candidate_above(m0), m0 * m0)
        trace = composite_signal(basis, window, constellation)
        assert certify(trace).count == classical_oracle_count(window, constellation)


def test_reference_window_counts():
    # certified twin counts over [7, m0^2) for the standard ladder head
    for m0, expected in ((29, 30), (49, 66), (99, 197)):
        basis = build_basis(m0)
        window = Window(7, (m0 + 1) ** 2)
        trace = composite_signal(basis, window, TWINS)
        assert certify(trace).count == expected


def test_survivor_values_are_twin_starts():
    basis = build_basis(29)
    window = Window(7, 900)
    result = certify(composite_signal(basis, window, TWINS), survivors=True)
    assert result.count == 30
    assert result.survivors[:5] == (41, 59, 71, 101, 107)
    prime_set = _local_prime_set(1000)
    for start in result.survivors:
        assert start in prime_set and start + 2 in prime_set
        assert start > 29


def test_inclusive_zero_count_under_proper_variant():
    # positions whose members are all prime, even when a member is a basis
    # prime itself, survive once self-hits are excluded
    basis = build_basis(29)
    window = Window(7, 900)
    trace = composite_signal(basis, window, TWINS, count_self_hits=False)
    assert int(np.count_nonzero(trace.values == 0)) == 33
    # the three extra survivors have a member at or below the basis bound
    strict = certify(composite_signal(basis, window, TWINS)).count
    assert strict == 30


def test_partition_independence_counts():
    basis = build_basis(31)
    window = Window.for_capacity(31)
    reference = composite_signal(basis, window, TWINS, segments=1).values
    for segments in (3, 8, 17):
        values = composite_signal(basis, window, TWINS, segments=segments).values
        assert np.array_equal(values, reference)


def test_partition_independence_mask():
    basis = build_basis(31)
    window = Window.for_capacity(31)
    reference = composite_signal(basis, window, TWINS, mode="mask").zero_mask()
    for segments in (3, 8, 17):
        trace = composite_signal(basis, window, TWINS, segments=segments, mode="mask")
        assert np.array_equal(trace.zero_mask(), reference)


def test_mask_mode_agrees_with_counts_mode():
    basis = build_basis(99)
    window = Window.for_capacity(99)
    counts = composite_signal(basis, window, TWINS)
    mask = composite_signal(basis, window, TWINS, mode="mask", segments=5)
    assert np.array_equal(mask.zero_mask(), counts.values == 0)
    assert certify(mask).count == certify(counts).count


def test_composite_signal_validation():
    basis = build_basis(9)
    window = Window(7, 100)
    with pytest.raises(ValueError):
        composite_signal(basis, window, Constellation("blocked", (0, 2, 4)))
    with pytest.raises(ValueError):
        composite_signal(basis, window, TWINS, segments=0)
    with pytest.raises(ValueError):
        composite_signal(basis, window, TWINS, mode="bits")
    with pytest.raises(ValueError):
        composite_signal(basis, Window(7, 2 * 10**9), TWINS)


def test_classical_oracle_small_windows():
    prime_set = _local_prime_set(12000)
    window = Window(11, 10000)
    for constellation in (TWINS, COUSINS, SEXY):
        expected = sum(
            1
            for n in range(11, 10000 - constellation.span, 2)
            if all(n + h in prime_set for h in constellation.offsets)
        )
        assert classical_oracle_count(window, constellation) == expected


def test_goldbach_examples():
    assert goldbach_count(8).count == 1
    assert goldbach_count(10).count == 2
    assert goldbach_count(100).count == 6
    result = goldbach_count(100, survivors=True)
    assert result.survivors == (3, 11, 17, 29, 41, 47)


def test_goldbach_matches_exhaustive_small():
    prime_set = _local_prime_set(600)
    for even in range(8, 600, 2):
        expected = sum(
            1
            for n in range(3, even // 2 + 1, 2)
            if n in prime_set and (even - n) in prime_set
        )
        assert goldbach_count(even).count == expected, even


def test_goldbach_validation():
    with pytest.raises(ValueError):
        goldbach_count(7)
    with pytest.raises(ValueError):
        goldbach_count(6)


def test_torus_average_exact():
    assert torus_average((3,), TWINS) == Fraction(1, 3)
    assert torus_average((3, 5), TWINS) == Fraction(1, 5)
    assert torus_average((3, 5, 7), TWINS) == Fraction(1, 7)
    assert torus_average((3,), SEXY) == Fraction(2, 3)
    assert torus_average((5, 7), COUSINS) == Fraction(3, 7)


def test_torus_average_rejects_large_modulus():
    with pytest.raises(ValueError):
        torus_average((101, 103, 107, 109, 113), TWINS)
