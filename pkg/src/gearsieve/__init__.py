"""Deterministic constellation sieve: generation, certification, statistics.

The package splits into a residue-arithmetic core (canonical seeds and
gear sequences), a windowed signal engine with an independent classical
oracle, exact local-survival calculus with moment reports, Fourier-side
verification of the same quantities, and a sweep harness that regenerates
the reference tables and figure data.
"""

from .constellations import (
    COUSINS,
    SEXY,
    TWINS,
    AdmissibilityReport,
    Constellation,
    DensityConstants,
    density_product,
    goldbach_oscillating_factor,
    is_admissible,
    omega,
)
from .correlation import (
    AsymptoticReport,
    LocalSurvival,
    MomentReport,
    asymptotic_report,
    crt_average,
    fano_theoretical,
    mean_field,
    tau,
    tau_table,
    universal_average,
    variance_decomposition,
)
from .diophantine import (
    CanonicalSeed,
    Gear,
    canonical_seed,
    gear_sequence,
    is_prime_candidate,
    structural_is_prime,
)
from .engine import (
    CertifiedResult,
    SieveBasis,
    SignalTrace,
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
from .errors import InvariantError
from .fourier import (
    EquidistReport,
    FitResult,
    FourierRow,
    TwoPrimeReport,
    VarianceStats,
    fit_decay_exponent,
    fit_power_law,
    product_variance_constant,
    tau_fourier,
    two_prime_checks,
    variance_stats,
    weighted_ergodic_sum,
    weighted_exp_sum,
)
from .harness import Conventions, RunConfig, run_table1, run_table2, run_table3

__version__ = "0.1.0"

__all__ = [
    "AdmissibilityReport",
    "AsymptoticReport",
    "CanonicalSeed",
    "CertifiedResult",
    "Constellation",
    "Conventions",
    "COUSINS",
    "DensityConstants",
    "EquidistReport",
    "FitResult",
    "FourierRow",
    "Gear",
    "InvariantError",
    "LocalSurvival",
    "MomentReport",
    "RunConfig",
    "SEXY",
    "SieveBasis",
    "SignalTrace",
    "TwoPrimeReport",
    "TWINS",
    "VarianceStats",
    "Window",
    "asymptotic_report",
    "build_basis",
    "canonical_seed",
    "certify",
    "classical_oracle_count",
    "composite_signal",
    "crt_average",
    "density_product",
    "fano_theoretical",
    "first_candidate_above",
    "fit_decay_exponent",
    "fit_power_law",
    "gear_sequence",
    "goldbach_count",
    "goldbach_oscillating_factor",
    "is_admissible",
    "is_prime_candidate",
    "mean_field",
    "omega",
    "product_variance_constant",
    "run_table1",
    "run_table2",
    "run_table3",
    "signal_values",
    "structural_is_prime",
    "tau",
    "tau_fourier",
    "tau_table",
    "torus_average",
    "two_prime_checks",
    "universal_average",
    "variance_decomposition",
    "variance_stats",
    "weighted_ergodic_sum",
    "weighted_exp_sum",
]
