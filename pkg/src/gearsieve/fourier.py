"""Fourier-side verification of the pair-survival calculus.

The twin survival sequence tau_p(d) over one period has an exact discrete
Fourier transform: a DC term ((p-2)/p)^2 and AC coefficients
4 cos^2(pi k / p) / p^2. This module computes both the closed forms and
direct O(p^2) DFTs and checks them against each other, accumulates the
product variance constant over all primes, evaluates the weighted ergodic
sum behind the equidistribution error table, and verifies the two
exponential-sum lemmas (geometric tail bound and two-prime injectivity).
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .constellations import TWINS
from .correlation import tau, tau_numerators
from .errors import InvariantError
from .primes import odd_primes_upto


@dataclass(frozen=True)
class FourierRow:
    p: int
    k: int
    coeff_closed: float
    coeff_dft: complex


@dataclass(frozen=True)
class VarianceStats:
    """AC variance of tau_p by formula and by Parseval, plus the ratio.

    ratio = 1 + var / mean^2 is the per-prime factor of the product
    variance constant.
    """

    p: int
    var_closed: float
    var_parseval: float
    ratio: float


@dataclass(frozen=True)
class EquidistReport:
    m0: int
    L: int
    N: int
    weighted_sum: float
    theory: float
    rel_error_pct: float
    convention: str


@dataclass(frozen=True)
class FitResult:
    alpha: float
    intercept: float


@dataclass(frozen=True)
class TwoPrimeReport:
    p: int
    q: int
    injective: bool
    freq_sum: float
    full_sum_bound: float


def _tau_sequence(p: int) -> np.ndarray:
    """Twin survival values tau_p(d) for d = 0 .. p-1 as float64."""
    return np.array([float(tau(TWINS, p, d).tau) for d in range(p)])


def tau_fourier(p: int) -> list[FourierRow]:
    """Closed-form and direct-DFT coefficients of tau_p for all k.

    The closed forms assume the three-value structure of tau_p, which
    only holds for p >= 5 (p = 3 collapses to a two-value sequence).
    The DFT is a deliberate direct summation, not a fast transform.
    """
    if p < 5:
        raise ValueError(f"fourier coefficients need p >= 5, got {p}")
    nums = np.array(tau_numerators(TWINS, p), dtype=np.int64)  # p * tau_p(d)
    dc = int(nums.sum())
    d = np.arange(p)
    # Two accuracy measures for the 1e-14 Parseval check: reduce k*d mod p
    # before taking phases (exp of large arguments drops low bits), and
    # transform the mean-centered integer sequence so the AC coefficients
    # carry no cancellation noise from the DC term.
    roots = np.exp(-2j * math.pi * d / p)
    centered = (nums * p - dc).astype(np.float64)
    scale = float(p) ** 3
    rows = [FourierRow(p=p, k=0, coeff_closed=(p - 2) ** 2 / p**2, coeff_dft=dc / p**2)]
    for k in range(1, p):
        dft = complex(np.sum(centered * roots[(k * d) % p]) / scale)
        closed = 4.0 * math.cos(math.pi * k / p) ** 2 / p**2
        rows.append(FourierRow(p=p, k=k, coeff_closed=closed, coeff_dft=dft))
    return rows


def variance_stats(p: int) -> VarianceStats:
    """Variance of tau_p over a period: closed form vs Parseval.

    Raises if the two disagree beyond 1e-14 relative, since both are
    exact quantities and any gap means the coefficient table is wrong.
    """
    if p < 5:
        raise ValueError(f"variance stats need p >= 5, got {p}")
    var_closed = 2.0 * (3 * p - 8) / p**4
    rows = tau_fourier(p)
    var_parseval = math.fsum(abs(row.coeff_dft) ** 2 for row in rows if row.k != 0)
    if abs(var_parseval - var_closed) > 1e-14 * var_closed:
        raise InvariantError(
            f"Parseval variance {var_parseval!r} != closed form {var_closed!r} at p={p}"
        )
    ratio = 1.0 + 2.0 * (3 * p - 8) / (p - 2) ** 4
    return VarianceStats(p=p, var_closed=var_closed, var_parseval=var_parseval, ratio=ratio)


def product_variance_constant(pmax: int) -> float:
    """prod_{5 <= p <= pmax} ratio(p) - 1, accumulated in the log domain.

    Converges to about 0.242; each factor is 1 + 2(3p-8)/(p-2)^4, so the
    log1p sum keeps precision over thousands of near-unit terms.
    """
    if pmax < 5:
        raise ValueError(f"product needs pmax >= 5, got {pmax}")
    ps = odd_primes_upto(pmax).astype(np.float64)
    ps = ps[ps >= 5]
    excess = 2.0 * (3.0 * ps - 8.0) / (ps - 2.0) ** 4
    return float(math.expm1(np.sum(np.log1p(excess))))


def _h_table(p: int, convention: str) -> np.ndarray:
    """Per-prime lookup giving the h factor as a function of d mod p.

    appendix_c reads tau_p at d directly; section4 reads it at 3d, which
    traverses the same cycle in a different order (gcd(3, p) = 1), so the
    two conventions pair weights with different factor values.
    """
    base = _tau_sequence(p)
    if convention == "appendix_c":
        return base
    return base[(3 * np.arange(p)) % p]


def weighted_ergodic_sum(m0: int, convention: str = "appendix_c", segments: int = 1) -> EquidistReport:
    """Sum_{d=1}^{N} (L - 3d) h(d) against the flat-average prediction.

    L = m0^2, N = floor(L/3), h(d) = prod_{5 <= p <= m0} tau_p(d mod p)
    (or tau_p(3d mod p) under section4), and theory = h_bar L^2 / 6 with
    h_bar = prod (p-2)^2/p^2. Factors come from tiled per-prime tables,
    so the hot path has no modular divisions; each segment accumulates
    with fsum and the per-segment totals merge with fsum in d order.
    """
    if m0 < 11:
        raise ValueError(f"weighted sum needs m0 >= 11, got {m0}")
    if convention not in ("appendix_c", "section4"):
        raise ValueError(f"unknown convention {convention!r}")
    if segments < 1:
        raise ValueError(f"segment count must be >= 1, got {segments}")
    ps = [int(p) for p in odd_primes_upto(m0) if p >= 5]
    tables = [(p, _h_table(p, convention)) for p in ps]
    big_l = m0 * m0
    n = big_l // 3
    bounds = [1 + i * n // segments for i in range(segments + 1)]
    partials = []
    for lo, hi in zip(bounds[:-1], bounds[1:]):
        if lo >= hi:
            continue
        count = hi - lo
        acc = np.ones(count)
        for p, table in tables:
            start = lo % p
            reps = (start + count + p - 1) // p
            acc *= np.tile(table, reps)[start : start + count]
        weights = big_l - 3.0 * np.arange(lo, hi, dtype=np.float64)
        partials.append(math.fsum(weights * acc))
    weighted = math.fsum(partials)
    h_bar = 1.0
    for p in ps:
        h_bar *= (p - 2) ** 2 / p**2
    theory = h_bar * big_l * big_l / 6.0
    rel = 100.0 * abs(weighted - theory) / theory
    return EquidistReport(
        m0=m0,
        L=big_l,
        N=n,
        weighted_sum=weighted,
        theory=theory,
        rel_error_pct=rel,
        convention=convention,
    )


def fit_power_law(x, y) -> FitResult:
    """Least-squares fit of y = c * x^(-alpha) in log-log coordinates."""
    lx = np.log(np.asarray(x, dtype=np.float64))
    ly = np.log(np.asarray(y, dtype=np.float64))
    if lx.size < 3 or np.unique(lx).size < 3:
        raise ValueError("power-law fit needs at least 3 distinct x values")
    slope, intercept = np.polyfit(lx, ly, 1)
    return FitResult(alpha=float(-slope), intercept=float(intercept))


def fit_decay_exponent(m0_list, errors=None, convention: str = "appendix_c") -> FitResult:
    """Decay exponent of the equidistribution error across an m0 ladder.

    With errors omitted, each m0's relative error is computed here; a
    caller that already ran the sweep can pass its errors to avoid the
    recomputation.
    """
    m0s = list(m0_list)
    if errors is None:
        errors = [weighted_ergodic_sum(m0, convention=convention).rel_error_pct for m0 in m0s]
    return fit_power_law(m0s, errors)


def weighted_exp_sum(theta: float, big_l: int) -> complex:
    """W(theta) = sum_{d=1}^{floor(L/3)} (L - 3d) e^(2 pi i d theta).

    For non-integer theta the geometric tail bound |W| <= L / (2 ||theta||)
    is checked on the way out (||.|| is distance to the nearest integer).
    """
    if big_l < 3:
        raise ValueError(f"weighted exponential sum needs L >= 3, got {big_l}")
    n = big_l // 3
    d = np.arange(1, n + 1, dtype=np.float64)
    phases = np.exp(2j * math.pi * d * theta)
    value = complex(np.sum((big_l - 3.0 * d) * phases))
    dist = abs(theta - round(theta))
    if dist > 0:
        bound = big_l / (2.0 * dist)
        if abs(value) > bound * (1.0 + 1e-12):
            raise InvariantError(
                f"|W({theta})| = {abs(value)} exceeds the bound {bound} at L={big_l}"
            )
    return value


def two_prime_checks(p: int, q: int) -> TwoPrimeReport:
    """Injectivity and frequency-sum bound for the two-prime phase map.

    Maps (j, k) in [1, p) x [1, q) to jq + kp mod pq; injectivity makes
    the frequency sum sum 1/||j/p + k/q|| comparable against the full
    harmonic majorant sum_m pq/min(m, pq-m), which is asserted here.
    """
    if not (1 < p < q):
        raise ValueError(f"need primes p < q, got ({p}, {q})")
    if p * q > 10**7:
        raise ValueError(f"product {p * q} too large")
    pq = p * q
    j = np.arange(1, p, dtype=np.int64)
    k = np.arange(1, q, dtype=np.int64)
    image = (np.add.outer(j * q, k * p) % pq).ravel()
    injective = np.unique(image).size == image.size
    dist = np.minimum(image, pq - image).astype(np.float64)
    freq_sum = float(np.sum(pq / dist))
    m = np.arange(1, pq, dtype=np.float64)
    full_sum_bound = float(np.sum(pq / np.minimum(m, pq - m)))
    if freq_sum > full_sum_bound * (1.0 + 1e-12):
        raise InvariantError(
            f"frequency sum {freq_sum} exceeds its majorant {full_sum_bound} for ({p}, {q})"
        )
    return TwoPrimeReport(
        p=p, q=q, injective=bool(injective), freq_sum=freq_sum, full_sum_bound=full_sum_bound
    )
