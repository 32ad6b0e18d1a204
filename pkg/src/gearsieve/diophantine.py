"""Diophantine generator N = 2n + 3m and the gear-based primality test.

Every integer N >= 4 decomposes uniquely as N = 2*n0 + 3*m0 with n0 in
{0, 1, 2} once m0 is maximized; (n0, m0) is the canonical seed. Descending
gears (n_k, m_k) = (n0 + 3k, m0 - 2k) keep 2*n_k + 3*m_k = N while the
modulus m_k walks down through every odd integer in [3, m0]. A candidate N
(odd, coprime to 3) is prime exactly when no gear with 1 < m_k <= isqrt(N)
has m_k dividing its phase n_k, which is trial division by odd moduli in
disguise: m_k | n_k implies m_k | N.

All arithmetic stays in machine integers; supported inputs fit 64 bits.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

# n mod 3 -> the unique n0 in {0,1,2} with 2*n0 == n (mod 3)
_OFFSET_FOR_RESIDUE = (0, 2, 1)


@dataclass(frozen=True)
class CanonicalSeed:
    """The maximal-m0 decomposition n = 2*n0 + 3*m0 with n0 in {0,1,2}."""

    n: int
    n0: int
    m0: int


@dataclass(frozen=True)
class Gear:
    """One (phase, modulus) pair descending from a seed."""

    k: int
    n_k: int
    m_k: int


def canonical_seed(n: int) -> CanonicalSeed:
    """Decompose n >= 4 into its canonical seed.

    The offset is forced by n mod 3 (2*n0 must match n there), and taking
    the smallest valid n0 maximizes m0 = (n - 2*n0) / 3.
    """
    if n < 4:
        raise ValueError(f"canonical seed requires n >= 4, got {n}")
    n0 = _OFFSET_FOR_RESIDUE[n % 3]
    return CanonicalSeed(n=n, n0=n0, m0=(n - 2 * n0) // 3)


def is_prime_candidate(seed: CanonicalSeed) -> bool:
    """True iff the seed's integer is odd and coprime to 3.

    Structurally: m0 odd rules out even n, and n0 != 0 rules out 3 | n.
    Equivalent to gcd(n, 6) = 1 for n > 3.
    """
    return seed.m0 % 2 == 1 and seed.n0 in (1, 2)


def gear_sequence(seed: CanonicalSeed) -> list[Gear]:
    """All gears of a candidate seed, moduli descending m0, m0-2, ..., 3.

    The moduli sweep exactly the odd integers in [3, m0], so every odd
    prime up to m0 appears as some gear's modulus.
    """
    if seed.m0 % 2 == 0:
        raise ValueError(f"gear sequence needs odd m0, got m0={seed.m0}")
    gears = []
    k = 0
    while seed.m0 - 2 * k >= 3:
        gears.append(Gear(k=k, n_k=seed.n0 + 3 * k, m_k=seed.m0 - 2 * k))
        k += 1
    return gears


def structural_is_prime(n: int) -> bool:
    """Primality via gear phases: no m_k in (1, isqrt(n)] may divide n_k.

    Rejects n <= 3 outright; callers that care about 2 and 3 must handle
    them before asking. Only gears with small enough moduli are visited,
    so the cost is O(sqrt(n)) iterations, not O(m0).
    """
    if n <= 3:
        raise ValueError(f"structural test is defined for n > 3, got {n}")
    seed = canonical_seed(n)
    if not is_prime_candidate(seed):
        return False
    root = math.isqrt(n)
    if root < 3:
        return True
    # First index k with m_k <= root; moduli descend by 2 per step.
    k = (seed.m0 - root + 1) // 2
    if k < 0:
        k = 0
    m_k = seed.m0 - 2 * k
    n_k = seed.n0 + 3 * k
    while m_k >= 3:
        if n_k % m_k == 0:
            return False
        n_k += 3
        m_k -= 2
    return True
