"""
lpthreshold command line.

    lpthreshold theory --p 1 --rho 0.5
    lpthreshold theory --p 0 1 2 --rho-grid 0.01:0.99:99 --worst-case --out fig2a.csv
    lpthreshold experiment --rho 0.5 --n-list 10,12,...,30 --trials 10000 --seed 7
    lpthreshold plot --figure 2b --input data/run/estimates.csv --out fig2b.svg
    lpthreshold saddle --p 1 --alpha 0.7 --rho 0.5
    lpthreshold extrapolate --estimates data/run/estimates.csv

Exit codes: 0 success, 1 computation or I/O failure, 2 bad arguments.
"""

import argparse
import sys
from typing import List, Optional

from loguru import logger

from config import config
from ..errors import LpThresholdError
from ..experiment import parse_progression
from . import commands
from .logging_setup import configure_logging

logger = logger.bind(name="CLI")

EXIT_OK = 0
EXIT_FAILURE = 1
EXIT_USAGE = 2


def _n_list(text: str) -> List[int]:
    try:
        values = parse_progression(text, int)
    except ValueError as exc:
        raise argparse.ArgumentTypeError(str(exc)) from exc
    if any(n < 1 for n in values):
        raise argparse.ArgumentTypeError(f"N values must be positive: {text!r}")
    return values


def _unit_interval(text: str) -> float:
    value = float(text)
    if not 0 < value < 1:
        raise argparse.ArgumentTypeError(f"must lie in (0, 1), got {text}")
    return value


def _positive_float(text: str) -> float:
    value = float(text)
    if not value > 0:
        raise argparse.ArgumentTypeError(f"must be positive, got {text}")
    return value


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="lpthreshold",
        description="Phase boundaries of Lp compressed-sensing reconstruction: replica theory and Monte Carlo.",
    )
    parser.add_argument("--log-level", default=None, help=f"stderr log level (default {config.LOG_LEVEL})")
    sub = parser.add_subparsers(dest="command", required=True)

    theory = sub.add_parser("theory", help="replica thresholds alpha_c(rho)")
    theory.add_argument("--p", type=int, nargs="+", choices=[0, 1, 2], required=True,
                        help="reconstruction norm(s)")
    where = theory.add_mutually_exclusive_group(required=True)
    where.add_argument("--rho", type=_unit_interval, help="single density")
    where.add_argument("--rho-grid", type=commands.parse_rho_grid, metavar="START:STOP:COUNT",
                       help="inclusive, evenly spaced density grid")
    theory.add_argument("--worst-case", action="store_true", help="add the L1 worst-case sufficient bound")
    theory.add_argument("--out", help="output path for grid queries (stdout CSV when omitted)")
    theory.add_argument("--format", choices=["csv", "svg"], help="output format (default from --out suffix)")
    theory.set_defaults(handler=commands.cmd_theory)

    experiment = sub.add_parser("experiment", help="Monte Carlo sweep of basis-pursuit success")
    experiment.add_argument("--config", help="sweep file of key = value lines (overrides the sweep flags)")
    experiment.add_argument("--rho", type=_unit_interval, help="signal density")
    experiment.add_argument("--n-list", type=_n_list, help="signal sizes, e.g. 10,12,...,30")
    experiment.add_argument("--trials", type=int, default=config.TRIALS_PER_POINT, help="trials per (N, P)")
    experiment.add_argument("--ensemble", choices=["gaussian", "orthogonal"], default="gaussian")
    experiment.add_argument("--prior", choices=["gauss", "pm1"], default="gauss", help="law of the non-zeros")
    experiment.add_argument("--support", choices=["bernoulli", "fixed"], default="bernoulli")
    experiment.add_argument("--seed", type=int, default=0, help="master seed")
    experiment.add_argument("--alpha-window", type=float, default=config.ALPHA_WINDOW,
                            help="half-width of the alpha window around the replica threshold")
    experiment.add_argument("--out-dir", default=str(config.DATA_DIR / "experiment"))
    experiment.add_argument("--resume", action="store_true", help="skip trials already in the trials CSV")
    experiment.add_argument("--workers", type=int, default=None,
                            help=f"worker processes (default LPTHRESH_WORKERS or {config.DEFAULT_WORKERS})")
    experiment.add_argument("--no-progress", action="store_true", help="hide the progress bar")
    experiment.set_defaults(handler=commands.cmd_experiment)

    plot = sub.add_parser("plot", help="render a figure to SVG")
    plot.add_argument("--figure", choices=["2a", "2b"], required=True,
                      help="2a: alpha_c(rho) curves; 2b: alpha_c(N) against 1/N")
    plot.add_argument("--input", nargs="+", required=True, help="theory CSVs (2a) or estimates CSVs (2b)")
    plot.add_argument("--out", required=True, help="output .svg path")
    plot.add_argument("--theory", action="store_true", help="2b: draw the replica alpha_c as a reference line")
    plot.set_defaults(handler=commands.cmd_plot)

    saddle = sub.add_parser("saddle", help="solve the RS saddle point at one (alpha, rho)")
    saddle.add_argument("--p", type=int, choices=[0, 1, 2], required=True)
    saddle.add_argument("--alpha", type=_positive_float, required=True)
    saddle.add_argument("--rho", type=_unit_interval, required=True)
    saddle.add_argument("--branch", choices=["auto", "success", "failure"], default="auto")
    saddle.set_defaults(handler=commands.cmd_saddle)

    extrapolate = sub.add_parser("extrapolate", help="quadratic 1/N extrapolation of an estimates CSV")
    extrapolate.add_argument("--estimates", required=True)
    extrapolate.set_defaults(handler=commands.cmd_extrapolate)

    return parser


def main(argv: Optional[List[str]] = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return exc.code if isinstance(exc.code, int) else EXIT_USAGE

    configure_logging(args.log_level)
    try:
        return args.handler(args)
    except LpThresholdError as exc:
        logger.error(f"{args.command} failed: {exc}")
        return EXIT_FAILURE
    except ValueError as exc:
        logger.error(f"{args.command}: invalid argument: {exc}")
        return EXIT_USAGE
    except OSError as exc:
        logger.error(f"{args.command}: {exc}")
        return EXIT_FAILURE


if __name__ == "__main__":
    sys.exit(main())
