## { MODULE

## This file is part of the "mbfbound" project.
## Copyright (c) 2025 Neco Kriel.
## Licensed under the MIT License. See LICENSE for details.

##
## === DEPENDENCIES
##

## stdlib
import argparse
import csv
import dataclasses
import io
import json
import logging
import sys
from collections.abc import Sequence
from pathlib import Path

## third-party
import numpy

## local
from mbfbound import bftest, sim, verify
from mbfbound.errors import ConfigError, DimensionError, MbfboundError, NotMajorized
from mbfbound.utils.files import read_matrix_csv, write_atomic

log = logging.getLogger(__name__)

EXIT_OK = 0
EXIT_USAGE = 1
EXIT_DATA = 2
EXIT_VIOLATIONS = 3

LOG_FORMAT = "%(asctime)s %(levelname)s %(name)s: %(message)s"

##
## === ARGUMENT PARSING
##


class _ArgumentParser(argparse.ArgumentParser):
    """
    argparse exits with status 2 on usage errors; here usage errors share exit status 1.
    """

    def error(
        self,
        message: str,
    ):
        self.print_usage(sys.stderr)
        self.exit(EXIT_USAGE, f"{self.prog}: error: {message}\n")


def _method_choice(
    label: str,
) -> str:
    if label.strip().lower() == "all": return "all"
    try:
        return bftest.Method.parse(label).value
    except ValueError as err:
        raise argparse.ArgumentTypeError(str(err)) from None


def _positive_int(
    label: str,
) -> int:
    try:
        value = int(label)
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected an integer, but got `{label}`") from None
    if value < 1: raise argparse.ArgumentTypeError(f"expected a positive integer, but got {value}")
    return value


def _seed(
    label: str,
) -> int:
    try:
        value = int(label, 0)
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected an integer seed, but got `{label}`") from None
    if not (0 <= value < 2**64): raise argparse.ArgumentTypeError(f"seed must be an unsigned 64-bit integer, got {value}")
    return value


def build_parser() -> argparse.ArgumentParser:
    parser = _ArgumentParser(
        prog="mbfbound",
        description="Multivariate Behrens-Fisher testing with finite-sample F bounds.",
    )
    verbosity = parser.add_mutually_exclusive_group()
    verbosity.add_argument("-v", "--verbose", action="store_true", help="log debug messages")
    verbosity.add_argument("-q", "--quiet", action="store_true", help="log warnings and errors only")
    subparsers = parser.add_subparsers(dest="command", required=True, parser_class=_ArgumentParser)
    ## test
    test_parser = subparsers.add_parser("test", help="test mu1 = mu2 on two CSV samples")
    test_parser.add_argument("--x", required=True, type=Path, help="CSV of the first sample (one observation per line)")
    test_parser.add_argument("--y", required=True, type=Path, help="CSV of the second sample (one observation per line)")
    test_parser.add_argument(
        "--method",
        default="all",
        type=_method_choice,
        help="all (default), FBound, Yao, Johansen, NelVanDerMerwe (nvdm) or KrishnamoorthyYu (ky)",
    )
    test_parser.add_argument("--header", action="store_true", help="skip the first line of each CSV")
    test_parser.add_argument("--format", choices=("csv", "json"), default="csv", help="output format (default: csv)")
    test_parser.add_argument("--out", type=Path, default=None, help="output file (default: stdout)")
    ## simulate
    sim_parser = subparsers.add_parser("simulate", help="empirical Type I error study")
    sim_parser.add_argument("--config", type=Path, default=None, help="config JSON (default: the published grid)")
    sim_parser.add_argument("--out-dir", required=True, type=Path, help="directory for results, manifest and figures")
    sim_parser.add_argument("--seed", type=_seed, default=None, help="override the config's base_seed")
    sim_parser.add_argument("--workers", type=_positive_int, default=None, help="worker processes (MBF_THREADS wins)")
    sim_parser.add_argument("--replot", action="store_true", help="redraw figures from an existing results.csv only")
    ## verify
    verify_parser = subparsers.add_parser("verify", help="numerical checks of the ordering and bound results")
    verify_parser.add_argument("--which", default="all", choices=("all",) + verify.CHECKS, help="check to run (default: all)")
    verify_parser.add_argument("--seed", type=_seed, default=verify.DEFAULT_SEED, help="base seed (default: 0x5EED)")
    verify_parser.add_argument("--out", type=Path, default=None, help="report JSON file (default: stdout)")
    verify_parser.add_argument("--quick", action="store_true", help="reduced sizes for a smoke run")
    verify_parser.add_argument("--workers", type=_positive_int, default=None, help="worker processes (MBF_THREADS wins)")
    verify_parser.add_argument("--debug-pair", action="store_true", help="inject a non-majorized pair into theorem1")
    ## bounds
    bounds_parser = subparsers.add_parser("bounds", help="tabulate the F bounds on P(T^2 <= t)")
    bounds_parser.add_argument("--p", required=True, type=_positive_int, help="number of variables")
    bounds_parser.add_argument("--m", required=True, type=_positive_int, help="size of the first sample")
    bounds_parser.add_argument("--n", required=True, type=_positive_int, help="size of the second sample")
    bounds_parser.add_argument("--t-max", type=float, default=20.0, help="largest t (default: 20)")
    bounds_parser.add_argument("--t-steps", type=_positive_int, default=21, help="number of t values from 0 (default: 21)")
    bounds_parser.add_argument("--out", type=Path, default=None, help="output file (default: stdout)")
    return parser


##
## === OUTPUT
##


def _emit_text(
    text: str,
    out: Path | None,
) -> None:
    if out is None:
        sys.stdout.write(text)
        sys.stdout.flush()
    else:
        write_atomic(out, text)
        log.info(f"Wrote {out}")


def _csv_text(
    header: Sequence[str],
    rows: Sequence[Sequence[object]],
) -> str:
    buffer = io.StringIO()
    writer = csv.writer(buffer, lineterminator="\n")
    writer.writerow(header)
    writer.writerows(rows)
    return buffer.getvalue()


def _fmt(
    value: float | None,
) -> str:
    if value is None or not numpy.isfinite(value): return ""
    return repr(float(value))


##
## === SUBCOMMANDS
##


def cmd_test(
    args: argparse.Namespace,
) -> int:
    x = read_matrix_csv(args.x, header=args.header)
    y = read_matrix_csv(args.y, header=args.header)
    if x.shape[1] != y.shape[1]:
        raise DimensionError(f"{args.x} has {x.shape[1]} columns but {args.y} has {y.shape[1]}.")
    p = x.shape[1]
    for path, sample in ((args.x, x), (args.y, y)):
        if not sample.shape[0] > p:
            raise DimensionError(f"{path} has {sample.shape[0]} rows; need more rows than its {p} columns.")
    data = bftest.TwoSampleData(x=x, y=y)
    methods = bftest.ALL_METHODS if args.method == "all" else (bftest.Method(args.method),)
    results = bftest.run_tests(data, methods)
    if args.format == "json":
        text = json.dumps({"m": data.m, "n": data.n, "p": data.p, "results": [result.to_dict() for result in results]}, indent=2, allow_nan=False) + "\n"
    else:
        text = _csv_text(
            ("method", "statistic", "df1", "df2", "scale", "nu", "p_value"),
            [
                (
                    result.method.value,
                    _fmt(result.statistic),
                    _fmt(result.df_info.df1),
                    _fmt(result.df_info.df2),
                    _fmt(result.df_info.scale),
                    _fmt(result.df_info.nu),
                    _fmt(result.p_value),
                )
                for result in results
            ],
        )
    _emit_text(text, args.out)
    return EXIT_OK


def _emit_figures(
    results: Sequence[sim.SettingResult],
    out_dir: Path,
) -> None:
    for alpha in sorted({result.alpha for result in results}, reverse=True):
        path = sim.emit_svg(results, alpha, out_dir / f"size_alpha{alpha:g}.svg")
        log.info(f"Wrote {path}")


def cmd_simulate(
    args: argparse.Namespace,
) -> int:
    out_dir: Path = args.out_dir
    if args.replot:
        results = sim.read_results_csv(out_dir / "results.csv")
        if not results: raise ConfigError(f"{out_dir / 'results.csv'} holds no results.")
        _emit_figures(results, out_dir)
        return EXIT_OK
    config = sim.SimConfig.paper_grid() if args.config is None else sim.SimConfig.from_json(args.config)
    overrides = {}
    if args.seed is not None: overrides["base_seed"] = args.seed
    if args.workers is not None: overrides["parallelism"] = args.workers
    if overrides: config = dataclasses.replace(config, **overrides)
    out_dir.mkdir(parents=True, exist_ok=True)
    results, manifest = sim.run_grid(config, sigma_file=out_dir / "sigma.json")
    manifest.write(out_dir / "manifest.json")
    if not results:
        log.error("Every setting failed; see manifest.json")
        return EXIT_DATA
    sim.emit_csv(results, out_dir / "results.csv")
    sim.emit_json(results, out_dir / "results.json")
    _emit_figures(results, out_dir)
    if manifest.partial:
        log.error("Some settings failed; results are partial (see manifest.json)")
        return EXIT_DATA
    return EXIT_OK


def cmd_verify(
    args: argparse.Namespace,
) -> int:
    config = verify.VerifyConfig.quick() if args.quick else verify.VerifyConfig()
    if args.debug_pair: config = config.replace(debug_pair=True)
    reports = verify.run_verify(
        which=args.which,
        config=config,
        base_seed=args.seed,
        num_workers=args.workers,
    )
    if args.out is None:
        _emit_text(json.dumps(verify.reports_to_dict(reports), indent=2, allow_nan=False) + "\n", None)
    else:
        verify.write_reports(reports, args.out)
        log.info(f"Wrote {args.out}")
    total = sum(report.violations for report in reports)
    if total:
        log.error(f"{total} violation(s) across {sum(not report.passed for report in reports)} check(s)")
        return EXIT_VIOLATIONS
    return EXIT_OK


def cmd_bounds(
    args: argparse.Namespace,
) -> int:
    if not args.t_max > 0: raise ConfigError(f"`--t-max` must be positive, but got {args.t_max}.")
    bftest.check_dimensions(args.p, args.m, args.n)
    grid = numpy.linspace(0.0, args.t_max, args.t_steps) if args.t_steps > 1 else numpy.array([0.0])
    bounds = bftest.bound_cdfs(grid, args.p, args.m, args.n)
    pvalues = bftest.fbound_pvalue(grid, args.p, args.m, args.n)
    rows = [
        (_fmt(t), _fmt(lower), _fmt(upper), _fmt(pvalue))
        for t, lower, upper, pvalue in zip(grid, numpy.atleast_1d(bounds.lower), numpy.atleast_1d(bounds.upper), numpy.atleast_1d(pvalues))
    ]
    _emit_text(_csv_text(("t", "lower", "upper", "fbound_pvalue"), rows), args.out)
    return EXIT_OK


COMMANDS = {
    "test": cmd_test,
    "simulate": cmd_simulate,
    "verify": cmd_verify,
    "bounds": cmd_bounds,
}

##
## === PROGRAM MAIN
##


def configure_logging(
    verbose: bool = False,
    quiet: bool = False,
) -> None:
    level = logging.DEBUG if verbose else logging.WARNING if quiet else logging.INFO
    logging.basicConfig(level=level, format=LOG_FORMAT, stream=sys.stderr, force=True)


def main(
    argv: Sequence[str] | None = None,
) -> int:
    args = build_parser().parse_args(argv)
    configure_logging(verbose=args.verbose, quiet=args.quiet)
    try:
        return COMMANDS[args.command](args)
    except (NotMajorized, ConfigError) as err:
        log.error(str(err))
        return EXIT_USAGE
    except (MbfboundError, OSError) as err:
        log.error(str(err))
        return EXIT_DATA


## } MODULE
