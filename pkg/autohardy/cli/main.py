"""
The `autohardy` command line.

    python -m autohardy weights  --weight wopt:q=2 --max-n 5
    python -m autohardy verify   --weight whg:q=2,gamma=0.70710678 --depth 10 --trials 200 --seed 1
    python -m autohardy sweep    --mode poincare --tree homogeneous:q=2 --windows 3,10,50,200
    python -m autohardy violator --weight whg:q=2,gamma=0.70710678 --constant 1.5

Every subcommand writes CSV to standard output or to --out, and logs to standard error. Exit codes: 0 pass, 1 an
inequality violated where none was expected, 2 a configuration error, 3 a search budget exhausted.
"""
import argparse
import logging
import sys
from typing import List, Optional, Tuple

from autohardy import exc
from autohardy.cli import commands
from autohardy.util import config_util, csv_util

logger = logging.getLogger(__name__)


def _int_list(text: str) -> Tuple[int, ...]:
    try:
        values = tuple(int(value) for value in text.split(",") if value.strip())
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected comma separated integers, got '{text}'")
    if not values:
        raise argparse.ArgumentTypeError("expected at least one integer")
    return values


def _annulus(text: str) -> Tuple[int, int]:
    values = _int_list(text)
    if len(values) != 2 or not values[1] > values[0] >= 0:
        raise argparse.ArgumentTypeError(f"expected an annulus a,b with b > a >= 0, got '{text}'")
    return values


def _common_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(add_help=False)
    parser.add_argument("--tree", default=None, help="Tree spec, e.g. homogeneous:q=2 (default: the tree of the weight).")
    parser.add_argument("--weight", default=None, help="Weight descriptor, e.g. whg:q=2,gamma=0.70710678.")
    parser.add_argument("--out", default=None, help="Output CSV path (default: standard output).")
    parser.add_argument("--log-level", dest="log_level", default=None, help="Logging level, e.g. INFO or DEBUG.")
    parser.add_argument(
        "--param-tolerance",
        dest="param_tolerance",
        type=float,
        default=config_util.config_float("cli", "param_tolerance"),
        help="Snap parameters this close to a bound of their range onto it.",
    )
    return parser


def build_parser() -> argparse.ArgumentParser:
    common = _common_parser()

    parser = argparse.ArgumentParser(
        prog="autohardy", description="Hardy weights and improved Poincaré inequalities on radial trees."
    )
    subparsers = parser.add_subparsers(dest="command", required=True)

    weights = subparsers.add_parser("weights", parents=[common], help="Tabulate a weight family.")
    weights.add_argument("--max-n", dest="max_n", type=int, default=10)

    verify = subparsers.add_parser("verify", parents=[common], help="Check the Hardy gap on test functions.")
    verify.add_argument("--depth", type=int, default=config_util.config_int("cli", "depth"))
    verify.add_argument("--trials", type=int, default=config_util.config_int("cli", "trials"))
    verify.add_argument("--seed", type=int, default=config_util.config_int("cli", "seed"))
    verify.add_argument("--tolerance", type=float, default=config_util.config_float("cli", "tolerance"))
    verify.add_argument("--annulus", type=_annulus, default=None, help="Radial trials on the annulus a,b.")
    verify.add_argument("--weight-scale", dest="weight_scale", type=float, default=1.0)

    sweep = subparsers.add_parser("sweep", parents=[common], help="Sweep windows of the smallest eigenvalue.")
    sweep.add_argument(
        "--mode",
        choices=(commands.MODE_POINCARE, commands.MODE_CRITICAL, commands.MODE_RATIO, commands.MODE_NULLCRIT),
        default=commands.MODE_POINCARE,
    )
    sweep.add_argument("--windows", type=_int_list, default=None)
    sweep.add_argument("--annulus-start", dest="annulus_start", type=int, default=2)
    sweep.add_argument("--weight-scale", dest="weight_scale", type=float, default=1.0)
    sweep.add_argument("--ground", default=None, help="Ground state descriptor for nullcrit, e.g. green-sqrt.")
    sweep.add_argument("--N", dest="N", type=int, default=None, help="Last radius of the nullcrit partial sums.")

    violator = subparsers.add_parser("violator", parents=[common], help="Search for a violating radial function.")
    violator.add_argument(
        "--mode", choices=(commands.VIOLATOR_WEIGHT, commands.VIOLATOR_RBAR), default=commands.VIOLATOR_WEIGHT
    )
    violator.add_argument("--constant", type=float, default=None)
    violator.add_argument("--constant-factor", dest="constant_factor", type=float, default=None)
    violator.add_argument("--max-window", dest="max_window", type=int, default=None)
    violator.add_argument("--annulus-start", dest="annulus_start", type=int, default=2)

    return parser


def main(argv: Optional[List[str]] = None) -> int:
    """
    Run one subcommand and return its exit code.
    """
    parser = build_parser()

    try:
        args = parser.parse_args(argv)
    except SystemExit as e:
        return commands.EXIT_CONFIG if e.code else commands.EXIT_OK

    config_util.setup_logging(level=args.log_level)

    try:
        result = commands.COMMANDS[args.command](args)
    except exc.NonnegativityViolated as e:
        logger.error(str(e))
        return commands.EXIT_VIOLATION
    except exc.HardyException as e:
        logger.error(f"{type(e).__name__}: {e}")
        return commands.EXIT_CONFIG

    csv_util.write_text(result.text, out=args.out)
    return result.exit_code


def run():
    sys.exit(main())
