"""Sweep orchestration: table regeneration, figure data files, decay fit.

Every run is a pure function of its configuration: reruns produce
byte-identical files, and the worker count only changes wall time, never
output. Rows are always written in ascending m0 order.
"""

from __future__ import annotations

import json
import math
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from pathlib import Path

import numpy as np

from .constellations import Constellation, TWINS
from .correlation import fano_theoretical, mean_field, variance_decomposition
from .engine import SieveBasis, Window, build_basis, certify, composite_signal
from .fourier import FitResult, fit_decay_exponent, weighted_ergodic_sum

MEAN_SOURCES = ("proper", "literal")
SURVIVOR_RANGES = ("inclusive", "strict")
H_CONVENTIONS = ("appendix_c", "section4")
OUTPUT_FORMATS = ("csv", "json")

DEFAULT_TABLE1_M0 = (30, 50, 100, 500, 1000)
DEFAULT_TABLE2_M0 = (30, 50, 100, 200, 500, 1000)
DEFAULT_TABLE3_M0 = (30, 50, 100, 200, 500, 1000)

TABLE1_HEADER = ("m0", "window", "twins", "mean", "var", "ratio")
TABLE1_DIAGNOSTIC_HEADER = (
    "m0", "window", "twins_inclusive", "twins_strict", "mean", "var", "ratio",
)
TABLE2_HEADER = ("m0", "L", "twins", "mu_N", "sigma_diag", "sigma_off", "variance")
TABLE3_HEADER = ("m0", "L", "weighted_sum", "theory", "rel_error_pct")
FIGURE1_HEADER = ("m0", "fano_observed", "fano_theoretical")
FIGURE2_HEADER = ("m0", "count_observed", "count_theory")
FIGURE3_HEADER = ("m0", "cv_observed", "reference")


@dataclass(frozen=True)
class Conventions:
    """Resolved choices for the statistics that admit more than one reading.

    table1_mean_source picks which signal variant feeds the mean/variance
    columns: "proper" counts proper-multiple hits only (a prime never kills
    its own position), "literal" counts every divisor hit. survivor_range
    picks the twin-count column: "inclusive" counts zero-signal positions
    across the whole window under the proper variant, "strict" counts only
    certified positions whose members all exceed the basis bound.
    h_convention selects the correlation-weight indexing for the
    equidistribution sum.
    """

    table1_mean_source: str = "proper"
    survivor_range: str = "inclusive"
    h_convention: str = "appendix_c"

    def __post_init__(self) -> None:
        if self.table1_mean_source not in MEAN_SOURCES:
            raise ValueError(
                f"table1_mean_source must be one of {MEAN_SOURCES}, "
                f"got {self.table1_mean_source!r}"
            )
        if self.survivor_range not in SURVIVOR_RANGES:
            raise ValueError(
                f"survivor_range must be one of {SURVIVOR_RANGES}, "
                f"got {self.survivor_range!r}"
            )
        if self.h_convention not in H_CONVENTIONS:
            raise ValueError(
                f"h_convention must be one of {H_CONVENTIONS}, "
                f"got {self.h_convention!r}"
            )


@dataclass(frozen=True)
class RunConfig:
    """One sweep: which m0 values, which tuple, and where output goes."""

    m0_list: tuple[int, ...]
    constellation: Constellation = TWINS
    anchor: int = 7
    conventions: Conventions = field(default_factory=Conventions)
    workers: int = 1
    output_dir: str = "."
    formats: tuple[str, ...] = ("csv",)

    def __post_init__(self) -> None:
        if not self.m0_list:
            raise ValueError("m0_list must be non-empty")
        for m0 in self.m0_list:
            if m0 < 5:
                raise ValueError(f"every m0 must be >= 5, got {m0}")
        if self.workers < 1:
            raise ValueError(f"workers must be >= 1, got {self.workers}")
        if not self.formats:
            raise ValueError("formats must name at least one of csv, json")
        for fmt in self.formats:
            if fmt not in OUTPUT_FORMATS:
                raise ValueError(f"unknown output format {fmt!r}")


def sweep_basis(m0: int) -> SieveBasis:
    """Basis for a sweep value: even m0 uses the odd bound just below it."""
    if m0 < 5:
        raise ValueError(f"sweep m0 must be >= 5, got {m0}")
    return build_basis(m0 if m0 % 2 == 1 else m0 - 1)


def _table1_row(args: tuple) -> dict:
    m0, constellation, anchor, conventions = args
    basis = sweep_basis(m0)
    window = Window.for_capacity(m0, anchor)
    proper = composite_signal(basis, window, constellation, count_self_hits=False)
    literal = composite_signal(basis, window, constellation)
    source = proper if conventions.table1_mean_source == "proper" else literal
    values = source.values
    mean = float(values.mean())
    var = float(values.var())
    inclusive = int(np.count_nonzero(proper.values == 0))
    strict = certify(literal).count
    twins = inclusive if conventions.survivor_range == "inclusive" else strict
    return {
        "m0": m0,
        "window": m0 * m0,
        "twins": twins,
        "twins_inclusive": inclusive,
        "twins_strict": strict,
        "mean": mean,
        "var": var,
        "ratio": var / mean,
    }


def _table2_row(args: tuple) -> dict:
    m0, constellation, anchor = args
    basis = sweep_basis(m0)
    window = Window.for_capacity(m0, anchor)
    trace = composite_signal(basis, window, constellation)
    count = certify(trace).count
    report = variance_decomposition(
        basis, window, constellation, observed_count=count
    )
    return {
        "m0": m0,
        "L": window.length,
        "twins": count,
        "mu_N": report.mu_N,
        "sigma_diag": report.sigma_diag,
        "sigma_off": report.sigma_off,
        "variance": report.variance,
    }


def _table3_row(args: tuple) -> dict:
    m0, h_convention = args
    report = weighted_ergodic_sum(m0, convention=h_convention)
    return {
        "m0": m0,
        "L": report.L,
        "weighted_sum": report.weighted_sum,
        "theory": report.theory,
        "rel_error_pct": report.rel_error_pct,
    }


def _figure_row(args: tuple) -> dict:
    m0, constellation, anchor = args
    basis = sweep_basis(m0)
    window = Window.for_capacity(m0, anchor)
    proper = composite_signal(basis, window, constellation, count_self_hits=False)
    literal = composite_signal(basis, window, constellation)
    values = proper.values
    mean = float(values.mean())
    count = certify(literal).count
    return {
        "m0": m0,
        "L": window.length,
        "fano_observed": float(values.var()) / mean,
        "fano_theoretical": fano_theoretical(basis.m0),
        "count_observed": count,
        "count_theory": mean_field(constellation, basis.m0, window.positions),
        "cv_observed": 1.0 / math.sqrt(count) if count > 0 else math.inf,
    }


def _sweep(row_fn, arg_list: list[tuple], workers: int) -> list[dict]:
    """Run one row job per m0, in parallel when asked, sorted by m0."""
    if workers > 1 and len(arg_list) > 1:
        with ProcessPoolExecutor(max_workers=workers) as pool:
            rows = list(pool.map(row_fn, arg_list))
    else:
        rows = [row_fn(a) for a in arg_list]
    rows.sort(key=lambda row: row["m0"])
    return rows


def run_table1(cfg: RunConfig) -> list[dict]:
    """Signal-statistics rows: window size, twin count, mean, var, ratio."""
    args = [
        (m0, cfg.constellation, cfg.anchor, cfg.conventions) for m0 in cfg.m0_list
    ]
    return _sweep(_table1_row, args, cfg.workers)


def run_table2(cfg: RunConfig) -> list[dict]:
    """Certified counts with the diagonal/off-diagonal variance split."""
    args = [(m0, cfg.constellation, cfg.anchor) for m0 in cfg.m0_list]
    return _sweep(_table2_row, args, cfg.workers)


def run_table3(cfg: RunConfig) -> list[dict]:
    """Weighted equidistribution rows, plus a trailing fit record.

    The fit record {"alpha", "intercept", "convention"} is appended when
    the sweep holds at least three distinct m0 values; it is kept out of
    the fixed-schema CSV and lands in a companion JSON file instead.
    """
    args = [(m0, cfg.conventions.h_convention) for m0 in cfg.m0_list]
    rows = _sweep(_table3_row, args, cfg.workers)
    if len(set(cfg.m0_list)) >= 3:
        fit = fit_decay_exponent(
            [row["m0"] for row in rows],
            errors=[row["rel_error_pct"] for row in rows],
        )
        rows.append(
            {
                "alpha": fit.alpha,
                "intercept": fit.intercept,
                "convention": cfg.conventions.h_convention,
            }
        )
    return rows


def format_cell(value) -> str:
    """CSV cell text: integers verbatim, reals at six significant digits."""
    if isinstance(value, (bool, np.bool_)):
        return str(int(value))
    if isinstance(value, (int, np.integer)):
        return str(int(value))
    if isinstance(value, (float, np.floating)):
        return format(float(value), ".6g")
    return str(value)


def write_csv(path: Path, header: tuple[str, ...], rows: list[dict]) -> None:
    with open(path, "w", encoding="utf-8", newline="") as fh:
        fh.write(",".join(header) + "\n")
        for row in rows:
            fh.write(",".join(format_cell(row[name]) for name in header) + "\n")


def write_json(path: Path, payload) -> None:
    with open(path, "w", encoding="utf-8") as fh:
        json.dump(payload, fh, indent=2)
        fh.write("\n")


def _emit(cfg: RunConfig, name: str, header: tuple[str, ...],
          rows: list[dict]) -> list[Path]:
    out_dir = Path(cfg.output_dir)
    out_dir.mkdir(parents=True, exist_ok=True)
    paths = []
    if "csv" in cfg.formats:
        path = out_dir / f"{name}.csv"
        write_csv(path, header, rows)
        paths.append(path)
    if "json" in cfg.formats:
        path = out_dir / f"{name}.json"
        write_json(path, [{k: row[k] for k in header} for row in rows])
        paths.append(path)
    return paths


def write_table1(cfg: RunConfig, diagnostic: bool = False) -> list[Path]:
    rows = run_table1(cfg)
    header = TABLE1_DIAGNOSTIC_HEADER if diagnostic else TABLE1_HEADER
    return _emit(cfg, "table1", header, rows)


def write_table2(cfg: RunConfig) -> list[Path]:
    return _emit(cfg, "table2", TABLE2_HEADER, run_table2(cfg))


def write_table3(cfg: RunConfig) -> list[Path]:
    records = run_table3(cfg)
    rows = [r for r in records if "m0" in r]
    paths = _emit(cfg, "table3", TABLE3_HEADER, rows)
    fits = [r for r in records if "alpha" in r]
    if fits:
        fit_path = Path(cfg.output_dir) / "table3_fit.json"
        write_json(fit_path, fits[0])
        paths.append(fit_path)
    return paths


def run_figures(cfg: RunConfig) -> list[Path]:
    """Emit the three figure data series as CSV files.

    fig3's reference column is C * L^(-1/2) with C pinned so the reference
    meets the observed coefficient of variation at the first m0.
    """
    args = [(m0, cfg.constellation, cfg.anchor) for m0 in cfg.m0_list]
    rows = _sweep(_figure_row, args, cfg.workers)
    scale = rows[0]["cv_observed"] * math.sqrt(rows[0]["L"])
    for row in rows:
        row["reference"] = scale / math.sqrt(row["L"])
    out_dir = Path(cfg.output_dir)
    out_dir.mkdir(parents=True, exist_ok=True)
    paths = []
    for name, header in (
        ("fig1_fano", FIGURE1_HEADER),
        ("fig2_counts", FIGURE2_HEADER),
        ("fig3_cv", FIGURE3_HEADER),
    ):
        path = out_dir / f"{name}.csv"
        write_csv(path, header, rows)
        paths.append(path)
    return paths


def fit_from_config(cfg: RunConfig) -> FitResult:
    """Decay-exponent fit over the configured ladder."""
    if len(set(cfg.m0_list)) < 3:
        raise ValueError("fit needs at least three distinct m0 values")
    return fit_decay_exponent(
        list(cfg.m0_list), convention=cfg.conventions.h_convention
    )
