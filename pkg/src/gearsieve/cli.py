"""Command-line front end.

Exit codes: 0 success, 2 invalid configuration or arguments, 3 I/O
failure, 4 internal invariant violation. All behaviour is controlled by
flags; there are no environment variables or config files.
"""

from __future__ import annotations

import argparse
import dataclasses
import json
import sys

from .constellations import (
    COUSINS,
    SEXY,
    TWINS,
    Constellation,
    is_admissible,
)
from .correlation import tau_table, variance_decomposition
from .diophantine import canonical_seed, is_prime_candidate, structural_is_prime
from .engine import Window, certify, composite_signal, goldbach_count
from .errors import InvariantError
from .fourier import tau_fourier, weighted_ergodic_sum
from .harness import (
    DEFAULT_TABLE1_M0,
    DEFAULT_TABLE2_M0,
    DEFAULT_TABLE3_M0,
    Conventions,
    RunConfig,
    fit_from_config,
    format_cell,
    run_figures,
    sweep_basis,
    write_table1,
    write_table2,
    write_table3,
)
from .primes import odd_primes_upto

_NAMED_TUPLES = {(0, 2): TWINS, (0, 4): COUSINS, (0, 6): SEXY}


def _parse_offsets(text: str) -> Constellation:
    try:
        offsets = tuple(int(part) for part in text.split(","))
    except ValueError:
        raise ValueError(f"tuple must be comma-separated integers, got {text!r}")
    named = _NAMED_TUPLES.get(offsets)
    if named is not None:
        return named
    name = "tuple_" + "_".join(str(h) for h in offsets)
    return Constellation(name, offsets)


def _parse_m0_list(text: str) -> tuple[int, ...]:
    try:
        return tuple(int(part) for part in text.split(","))
    except ValueError:
        raise ValueError(f"m0 list must be comma-separated integers, got {text!r}")


def _parse_formats(text: str) -> tuple[str, ...]:
    return tuple(part.strip() for part in text.split(","))


def _config_from(args: argparse.Namespace, default_m0: tuple[int, ...]) -> RunConfig:
    conventions = Conventions(
        table1_mean_source=getattr(args, "mean_source", "proper"),
        survivor_range=getattr(args, "survivor_range", "inclusive"),
        h_convention=getattr(args, "convention", "appendix_c"),
    )
    m0_list = _parse_m0_list(args.m0_list) if args.m0_list else default_m0
    return RunConfig(
        m0_list=m0_list,
        constellation=_parse_offsets(getattr(args, "tuple", "0,2")),
        anchor=getattr(args, "anchor", 7),
        conventions=conventions,
        workers=args.workers,
        output_dir=args.out,
        formats=_parse_formats(args.format),
    )


def _print_json(payload) -> None:
    print(json.dumps(payload, indent=2))


def _cmd_seed(args: argparse.Namespace) -> int:
    seed = canonical_seed(args.n)
    _print_json(
        {
            "n": seed.n,
            "n0": seed.n0,
            "m0": seed.m0,
            "candidate": is_prime_candidate(seed),
        }
    )
    return 0


def _cmd_prime(args: argparse.Namespace) -> int:
    _print_json({"n": args.n, "prime": structural_is_prime(args.n)})
    return 0


def _cmd_admissible(args: argparse.Namespace) -> int:
    report = is_admissible(_parse_offsets(args.offsets))
    payload = dataclasses.asdict(report)
    payload["constellation"] = {
        "name": report.constellation.name,
        "offsets": list(report.constellation.offsets),
    }
    _print_json(payload)
    return 0


def _cmd_scan(args: argparse.Namespace) -> int:
    basis = sweep_basis(args.m0)
    window = Window.for_capacity(args.m0, args.anchor)
    constellation = _parse_offsets(args.tuple)
    trace = composite_signal(
        basis, window, constellation, segments=args.segments, mode="mask"
    )
    result = certify(trace, survivors=args.survivors is not None)
    if args.survivors is not None:
        with open(args.survivors, "w", encoding="utf-8") as fh:
            for start in result.survivors:
                fh.write(f"{start}\n")
    _print_json(
        {
            "m0": args.m0,
            "anchor": args.anchor,
            "tuple": list(constellation.offsets),
            "window_end": window.end,
            "positions": window.positions,
            "in_range": trace.in_range,
            "count": result.count,
        }
    )
    return 0


def _cmd_tau(args: argparse.Namespace) -> int:
    rows = tau_table(_parse_offsets(args.tuple), args.p)
    print("d,tau_num,tau_den,case")
    for row in rows:
        print(f"{row.d},{row.tau.numerator},{row.tau.denominator},{row.case_label}")
    return 0


def _cmd_moments(args: argparse.Namespace) -> int:
    basis = sweep_basis(args.m0)
    window = Window.for_capacity(args.m0, args.anchor)
    report = variance_decomposition(
        basis, window, _parse_offsets(args.tuple), mu_source=args.mu_source
    )
    report.m0 = args.m0
    _print_json(dataclasses.asdict(report))
    return 0


def _cmd_equidist(args: argparse.Namespace) -> int:
    report = weighted_ergodic_sum(args.m0, convention=args.convention)
    print("m0,L,weighted_sum,theory,rel_error_pct")
    cells = (
        report.m0,
        report.L,
        report.weighted_sum,
        report.theory,
        report.rel_error_pct,
    )
    print(",".join(format_cell(cell) for cell in cells))
    return 0


def _cmd_fourier(args: argparse.Namespace) -> int:
    if args.pmax < 5:
        raise ValueError(f"pmax must be >= 5, got {args.pmax}")
    print("p,k,closed,dft_re,dft_im")
    for p in odd_primes_upto(args.pmax):
        if p < 5:
            continue
        for row in tau_fourier(int(p)):
            cells = (
                row.p,
                row.k,
                row.coeff_closed,
                row.coeff_dft.real,
                row.coeff_dft.imag,
            )
            print(",".join(format_cell(cell) for cell in cells))
    return 0


def _cmd_goldbach(args: argparse.Namespace) -> int:
    result = goldbach_count(args.even, survivors=args.survivors)
    payload = {"even": args.even, "count": result.count}
    if args.survivors:
        payload["survivors"] = list(result.survivors)
    _print_json(payload)
    return 0


def _cmd_table1(args: argparse.Namespace) -> int:
    cfg = _config_from(args, DEFAULT_TABLE1_M0)
    for path in write_table1(cfg, diagnostic=args.diagnostic):
        print(path)
    return 0


def _cmd_table2(args: argparse.Namespace) -> int:
    cfg = _config_from(args, DEFAULT_TABLE2_M0)
    for path in write_table2(cfg):
        print(path)
    return 0


def _cmd_table3(args: argparse.Namespace) -> int:
    cfg = _config_from(args, DEFAULT_TABLE3_M0)
    for path in write_table3(cfg):
        print(path)
    return 0


def _cmd_figures(args: argparse.Namespace) -> int:
    cfg = _config_from(args, DEFAULT_TABLE2_M0)
    for path in run_figures(cfg):
        print(path)
    return 0


def _cmd_fit(args: argparse.Namespace) -> int:
    m0_list = _parse_m0_list(args.m0_list) if args.m0_list else DEFAULT_TABLE3_M0
    cfg = RunConfig(
        m0_list=m0_list,
        conventions=Conventions(h_convention=args.convention),
    )
    fit = fit_from_config(cfg)
    _print_json(
        {
            "alpha": fit.alpha,
            "intercept": fit.intercept,
            "convention": args.convention,
        }
    )
    return 0


def _add_sweep_flags(sub: argparse.ArgumentParser, *, tuple_flag: bool = True) -> None:
    sub.add_argument("--m0-list", default=None,
                     help="comma-separated m0 values (default: built-in ladder)")
    if tuple_flag:
        sub.add_argument("--tuple", default="0,2",
                         help="offset pattern, comma-separated (default: 0,2)")
        sub.add_argument("--anchor", type=int, default=7,
                         help="window anchor (default: 7)")
    sub.add_argument("--workers", type=int, default=1,
                     help="parallel jobs across m0 values (default: 1)")
    sub.add_argument("--out", default=".",
                     help="output directory (default: current directory)")
    sub.add_argument("--format", default="csv",
                     help="output formats, comma-separated csv,json (default: csv)")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="gearsieve",
        description="Deterministic constellation sieve and its statistics",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("seed", help="canonical two-three decomposition of n")
    p.add_argument("n", type=int)
    p.set_defaults(func=_cmd_seed)

    p = sub.add_parser("prime", help="structural primality of n")
    p.add_argument("n", type=int)
    p.set_defaults(func=_cmd_prime)

    p = sub.add_parser("admissible", help="admissibility report for a pattern")
    p.add_argument("offsets", help="offset pattern, comma-separated, e.g. 0,2,6")
    p.set_defaults(func=_cmd_admissible)

    p = sub.add_parser("scan", help="certified constellation count over a window")
    p.add_argument("--m0", type=int, required=True,
                   help="basis bound; window is [anchor, m0^2)")
    p.add_argument("--anchor", type=int, default=7,
                   help="window anchor (default: 7)")
    p.add_argument("--tuple", default="0,2",
                   help="offset pattern (default: 0,2)")
    p.add_argument("--survivors", default=None, metavar="PATH",
                   help="also write surviving start values, one per line")
    p.add_argument("--segments", type=int, default=1,
                   help="partition count for the striding pass (default: 1)")
    p.set_defaults(func=_cmd_scan)

    p = sub.add_parser("tau", help="per-distance survival table for one prime")
    p.add_argument("--p", type=int, required=True)
    p.add_argument("--tuple", default="0,2",
                   help="offset pattern (default: 0,2)")
    p.set_defaults(func=_cmd_tau)

    p = sub.add_parser("moments", help="count moments and derived ratios")
    p.add_argument("--m0", type=int, required=True)
    p.add_argument("--tuple", default="0,2",
                   help="offset pattern (default: 0,2)")
    p.add_argument("--anchor", type=int, default=7,
                   help="window anchor (default: 7)")
    p.add_argument("--mu-source", choices=("observed", "expected"),
                   default="observed",
                   help="mean source for the report (default: observed)")
    p.set_defaults(func=_cmd_moments)

    p = sub.add_parser("equidist", help="weighted equidistribution sum at one m0")
    p.add_argument("--m0", type=int, required=True)
    p.add_argument("--convention", choices=("appendix_c", "section4"),
                   default="appendix_c",
                   help="weight-table indexing (default: appendix_c)")
    p.set_defaults(func=_cmd_equidist)

    p = sub.add_parser("fourier", help="closed-form vs DFT coefficient table")
    p.add_argument("--pmax", type=int, required=True)
    p.set_defaults(func=_cmd_fourier)

    p = sub.add_parser("goldbach", help="certified two-prime decompositions")
    p.add_argument("--even", type=int, required=True)
    p.add_argument("--survivors", action="store_true",
                   help="include the surviving first members")
    p.set_defaults(func=_cmd_goldbach)

    p = sub.add_parser("table1", help="signal statistics sweep")
    _add_sweep_flags(p)
    p.add_argument("--mean-source", choices=("proper", "literal"),
                   default="proper",
                   help="signal variant for mean/var (default: proper)")
    p.add_argument("--survivor-range", choices=("inclusive", "strict"),
                   default="inclusive",
                   help="twin-count convention (default: inclusive)")
    p.add_argument("--diagnostic", action="store_true",
                   help="emit both twin-count conventions side by side")
    p.set_defaults(func=_cmd_table1)

    p = sub.add_parser("table2", help="variance decomposition sweep")
    _add_sweep_flags(p)
    p.set_defaults(func=_cmd_table2)

    p = sub.add_parser("table3", help="equidistribution sweep with decay fit")
    _add_sweep_flags(p, tuple_flag=False)
    p.add_argument("--convention", choices=("appendix_c", "section4"),
                   default="appendix_c",
                   help="weight-table indexing (default: appendix_c)")
    p.set_defaults(func=_cmd_table3)

    p = sub.add_parser("figures", help="figure data series as CSV files")
    _add_sweep_flags(p)
    p.set_defaults(func=_cmd_figures)

    p = sub.add_parser("fit", help="decay-exponent fit over an m0 ladder")
    p.add_argument("--m0-list", default=None,
                   help="comma-separated m0 values (default: built-in ladder)")
    p.add_argument("--convention", choices=("appendix_c", "section4"),
                   default="appendix_c",
                   help="weight-table indexing (default: appendix_c)")
    p.set_defaults(func=_cmd_fit)

    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except InvariantError as exc:
        print(f"invariant violation: {exc}", file=sys.stderr)
        return 4
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except OSError as exc:
        print(f"i/o error: {exc}", file=sys.stderr)
        return 3


if __name__ == "__main__":
    sys.exit(main())
