"""Offset patterns (k-tuples) and their local densities.

A constellation is a tuple of offsets H = (h_1, ..., h_k); the objects of
interest are integers N with N + h prime for every h in H. Each prime p
sees H through omega(p), the number of distinct residues of H mod p: a
position N survives p exactly when N mod p avoids all k of them, so p
leaves nu(p) = p - omega(p) residue classes alive. omega drives everything
here: admissibility, the mean-field density product, and the singular
constant that normalizes tuple counts against independent primes.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from .primes import odd_primes_upto, primes_upto


@dataclass(frozen=True)
class Constellation:
    """A named tuple of offsets, sorted ascending and starting at 0."""

    name: str
    offsets: tuple[int, ...]

    def __post_init__(self) -> None:
        if not self.offsets:
            raise ValueError("a constellation needs at least one offset")
        if list(self.offsets) != sorted(set(self.offsets)):
            raise ValueError(f"offsets must be strictly increasing, got {self.offsets}")
        if self.offsets[0] != 0:
            raise ValueError(f"offsets must start at 0, got {self.offsets}")

    @property
    def size(self) -> int:
        return len(self.offsets)

    @property
    def span(self) -> int:
        return self.offsets[-1]


TWINS = Constellation("twins", (0, 2))
COUSINS = Constellation("cousins", (0, 4))
SEXY = Constellation("sexy", (0, 6))


def omega(constellation: Constellation, p: int) -> int:
    """Number of distinct residues of the offsets mod p."""
    if p < 2:
        raise ValueError(f"omega needs a modulus >= 2, got {p}")
    return len({h % p for h in constellation.offsets})


def nu(constellation: Constellation, q: int) -> int:
    """Residue classes mod q left alive: q - omega(q)."""
    return q - omega(constellation, q)


@dataclass(frozen=True)
class AdmissibilityReport:
    """Per-prime occupancy of a constellation over the small primes.

    per_prime lists (p, omega(p)) for every prime p <= span + 2, including
    p = 2. The tuple is admissible when no prime is fully occupied
    (omega(p) < p for all p); primes beyond the listed range can never be
    full because omega(p) <= k < p there. blocking collects the odd primes
    that pin survivors into a single residue class (omega(p) = p - 1).
    """

    constellation: Constellation
    admissible: bool
    per_prime: tuple[tuple[int, int], ...]
    blocking: tuple[int, ...]


def is_admissible(constellation: Constellation) -> AdmissibilityReport:
    """Check admissibility and report each small prime's occupancy."""
    small = primes_upto(constellation.span + 2)
    per_prime = tuple((int(p), omega(constellation, int(p))) for p in small)
    admissible = all(w < p for p, w in per_prime)
    blocking = tuple(p for p, w in per_prime if p > 2 and w == p - 1)
    return AdmissibilityReport(
        constellation=constellation,
        admissible=admissible,
        per_prime=per_prime,
        blocking=blocking,
    )


@dataclass(frozen=True)
class DensityConstants:
    """Density products of a constellation over odd primes 3 <= q <= m0.

    partial_product is the mean-field survival factor prod (1 - omega(q)/q);
    singular_constant is prod nu(q) * q^(k-1) / (q-1)^k, the ratio of the
    true local density to the k-th power of the single-prime density. The
    latter converges as m0 grows (0.66016... for the pair (0, 2)).
    """

    constellation: Constellation
    m0: int
    partial_product: float
    singular_constant: float


def density_product(constellation: Constellation, m0: int) -> DensityConstants:
    """Accumulate both density products in the log domain.

    Summing log1p of the per-prime corrections keeps thousands of factors
    near 1 from losing precision; a fully occupied prime short-circuits
    both products to exactly 0.
    """
    k = constellation.size
    log_partial = 0.0
    log_singular = 0.0
    blocked = False
    for q in odd_primes_upto(m0):
        q = int(q)
        w = omega(constellation, q)
        if w == q:
            blocked = True
            break
        log_partial += math.log1p(-w / q)
        # nu * q^(k-1) / (q-1)^k = (1 - w/q) * (q/(q-1))^k
        log_singular += math.log1p(-w / q) - k * math.log1p(-1.0 / q)
    if blocked:
        return DensityConstants(constellation, m0, 0.0, 0.0)
    return DensityConstants(
        constellation=constellation,
        m0=m0,
        partial_product=math.exp(log_partial),
        singular_constant=math.exp(log_singular),
    )


def goldbach_omega(even_n: int, p: int) -> int:
    """Occupancy of the pair (0, even_n mod p) at an odd prime p.

    Representations even_n = a + b die at p when p divides a or b, which
    removes the residues 0 and even_n mod p: two classes in general, one
    when p divides even_n.
    """
    if even_n % 2 != 0 or even_n < 4:
        raise ValueError(f"goldbach occupancy expects an even n >= 4, got {even_n}")
    if p < 3 or p % 2 == 0:
        raise ValueError(f"goldbach occupancy expects an odd prime modulus, got {p}")
    return 1 if even_n % p == 0 else 2


def goldbach_oscillating_factor(even_n: int, m0: int) -> float:
    """prod (q-1)/(q-2) over odd primes q <= m0 dividing even_n.

    The even_n-dependent part of the pair density: divisor primes only
    knock out one residue class instead of two, boosting the count of
    representations relative to a generic even number.
    """
    if even_n % 2 != 0 or even_n < 4:
        raise ValueError(f"oscillating factor expects an even n >= 4, got {even_n}")
    factor = 1.0
    for q in odd_primes_upto(m0):
        q = int(q)
        if even_n % q == 0:
            factor *= (q - 1) / (q - 2)
    return factor
