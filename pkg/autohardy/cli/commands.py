"""
The subcommands of the command line. Each takes the parsed arguments and returns the CSV text it produced together
with its exit code; writing the text and mapping exceptions to exit codes is left to `autohardy.cli.main`.
"""
import logging
from argparse import Namespace
from dataclasses import dataclass
from typing import Tuple

import numpy as np

from autohardy import exc
from autohardy.cli import descriptors
from autohardy.forms.quadratic import hardy_gap, radial_to_vertex
from autohardy.forms.random_functions import random_test_function
from autohardy.functions.potential import RadialPotential
from autohardy.spectral.pencil import build_pencil
from autohardy.spectral.sweeps import (
    criticality_probe,
    hardy_ratio_sweep,
    null_criticality_sums,
    poincare_bottom_sweep,
)
from autohardy.spectral.violator import find_violator, witness_vector
from autohardy.tree.radial_tree import RadialTreeSpec
from autohardy.tree.truncated import build_truncated
from autohardy.util import config_util, csv_util
from autohardy.weights.homogeneous import RemainderBar
from autohardy.weights.operations import asymptotic_gap

logger = logging.getLogger(__name__)

EXIT_OK = 0
EXIT_VIOLATION = 1
EXIT_CONFIG = 2
EXIT_BUDGET = 3

WEIGHTS_HEADER = ("n", "W", "remainder", "asymptotic_gap")
VERIFY_HEADER = ("trial", "kind", "seed", "gap")

MODE_POINCARE = "poincare"
MODE_CRITICAL = "critical"
MODE_RATIO = "ratio"
MODE_NULLCRIT = "nullcrit"

DEFAULT_WINDOWS = {
    MODE_POINCARE: (3, 10, 50, 200),
    MODE_CRITICAL: (3, 10, 100, 1000, 10000),
    MODE_RATIO: (100, 1000, 10000),
}

VIOLATOR_WEIGHT = "weight"
VIOLATOR_RBAR = "rbar"


@dataclass(frozen=True)
class CommandResult:
    text: str
    exit_code: int = EXIT_OK


def _weight(args: Namespace):
    if args.weight is None:
        raise exc.DescriptorException(f"The {args.command} command needs --weight.")
    weight = descriptors.parse_weight(args.weight, param_tolerance=args.param_tolerance)
    return weight, descriptors.tree_for_weight(weight, args.tree)


def _tree(args: Namespace) -> RadialTreeSpec:
    if args.tree is None:
        return RadialTreeSpec.homogeneous(q=config_util.config_int("cli", "q"))
    return descriptors.parse_tree(args.tree)


def _scaled(potential: RadialPotential, scale: float) -> RadialPotential:
    if scale == 1.0:
        return potential
    return scale * potential


def cmd_weights(args: Namespace) -> CommandResult:
    """
    Tabulate W(n), the Poincaré remainder W(n) - Λ_q (R(n) for remainder families) and the asymptotic gap
    n² (W(n) - Λ_q) / q^{1/2} for n from the first radius of the family up to --max-n.
    """
    weight, _ = _weight(args)
    homogeneous = weight.homogeneous_q is not None

    rows = []
    for n in range(weight.first_radius, args.max_n + 1):
        remainder = float(weight.excess(np.array([n]))[0]) if homogeneous else None
        gap = asymptotic_gap(weight, n) if homogeneous and n >= 2 else None
        rows.append((n, weight(n), remainder, gap))

    return CommandResult(text=csv_util.format_rows(header=WEIGHTS_HEADER, rows=rows))


def _spectral_trial(spec: RadialTreeSpec, target: RadialPotential, window: Tuple[int, int], tree=None):
    """
    The bottom eigenvector of the pencil of the target weight on the window, which minimises the gap among radial
    functions and so finds a violation of a non-Hardy weight deterministically.
    """
    pencil = build_pencil(spec=spec, weight=target, window=window)
    phi, _ = witness_vector(spec=spec, pencil=pencil)
    if tree is not None:
        phi = radial_to_vertex(tree=tree, phi=phi)
    return float(hardy_gap(spec=spec, weight=target, phi=phi))


def cmd_verify(args: Namespace) -> CommandResult:
    """
    Evaluate the Hardy gap of the (scaled) weight on random test functions and on one spectral trial.

    Without --annulus the random functions are non-radial functions on the ball of radius --depth - 1 of an explicit
    truncation; with --annulus a,b they are radial functions supported in [a, b). The command passes when the
    smallest gap is at least -tolerance.
    """
    weight, spec = _weight(args)

    if args.trials < 1:
        raise exc.InvalidParams(bound="trials >= 1", message=f"verify needs trials >= 1, got {args.trials}.")

    target = _scaled(weight.as_weight(), args.weight_scale)

    rows = []
    if args.annulus is None:
        if args.depth < 2:
            raise exc.InvalidParams(
                bound="depth >= 2", message=f"verify on a ball needs depth >= 2, got {args.depth}."
            )
        tree = build_truncated(spec=spec, depth=args.depth)
        window = (0, args.depth - 1)
        for trial in range(args.trials):
            seed = args.seed + trial
            phi = random_test_function(tree, seed=seed)
            rows.append((trial, "random", seed, float(hardy_gap(spec=spec, weight=target, phi=phi))))
    else:
        tree = None
        window = args.annulus
        for trial in range(args.trials):
            seed = args.seed + trial
            phi = random_test_function(spec, seed=seed, annulus=window)
            rows.append((trial, "random", seed, float(hardy_gap(spec=spec, weight=target, phi=phi))))

    rows.append((args.trials, "spectral", None, _spectral_trial(spec=spec, target=target, window=window, tree=tree)))

    min_gap = min(row[3] for row in rows)
    passed = min_gap >= -args.tolerance

    logger.info(
        f"verify {weight.descriptor} (scale {args.weight_scale:g}) on [{window[0]}, {window[1]}): "
        f"min_gap = {min_gap:.3e}, {'pass' if passed else 'violation'}."
    )

    text = csv_util.format_rows(header=VERIFY_HEADER, rows=rows)
    text += csv_util.format_rows(header=("min_gap",), rows=[(min_gap,)])
    return CommandResult(text=text, exit_code=EXIT_OK if passed else EXIT_VIOLATION)


def cmd_sweep(args: Namespace) -> CommandResult:
    """
    Run one of the window sweeps: the bottom of the spectrum on balls (poincare), the criticality probe (critical),
    the best constant on annuli (ratio) or the null-criticality partial sums (nullcrit).
    """
    windows = args.windows if args.windows is not None else DEFAULT_WINDOWS.get(args.mode)

    if args.mode == MODE_POINCARE:
        return CommandResult(text=poincare_bottom_sweep(spec=_tree(args), windows=windows).to_csv())

    weight, spec = _weight(args)

    if args.mode == MODE_CRITICAL:
        potential = _scaled(weight.as_weight(), args.weight_scale)
        return CommandResult(text=criticality_probe(spec=spec, weight=potential, windows=windows).to_csv())

    if args.mode == MODE_RATIO:
        result = hardy_ratio_sweep(
            spec=spec,
            weight=_scaled(weight, args.weight_scale),
            windows=windows,
            annulus_start=args.annulus_start,
            poincare_baseline=weight.is_remainder,
        )
        return CommandResult(text=result.to_csv())

    if args.ground is None or args.N is None:
        raise exc.DescriptorException("The nullcrit sweep needs --ground and --N.")

    z = descriptors.parse_function(args.ground, spec=spec)
    sums = null_criticality_sums(spec=spec, weight=weight.as_weight(), z=z, n_max=args.N)
    return CommandResult(text=sums.to_csv())


def _constant(args: Namespace) -> float:
    constant = args.constant_factor if args.mode == VIOLATOR_RBAR else args.constant
    if constant is None and args.mode == VIOLATOR_RBAR:
        constant = args.constant

    if constant is None:
        raise exc.DescriptorException("The violator command needs --constant (or --constant-factor with --mode rbar).")
    if not constant > 1.0:
        raise exc.InvalidParams(
            bound="C > 1", message=f"No violator of C = {constant:g} <= 1 exists for a Hardy weight."
        )
    return constant


def cmd_violator(args: Namespace) -> CommandResult:
    """
    Search growing annuli for a radial function violating the inequality with the weight rescaled by C > 1.

    `--mode rbar` searches for a violation of the improved Poincaré inequality with the remainder R̄ rescaled by
    C, on its own window budget (`remainder_max_window`).
    """
    constant = _constant(args)

    if args.mode == VIOLATOR_RBAR:
        spec = _tree(args)
        if not spec.is_homogeneous:
            raise exc.DescriptorException(f"The rbar violator needs a homogeneous tree, got {spec.to_string()}.")
        max_window = args.max_window or config_util.config_int("spectral", "remainder_max_window")
        result = find_violator(
            spec=spec,
            weight=RemainderBar(q=spec.q),
            constant=constant,
            max_window=max_window,
            annulus_start=args.annulus_start,
            poincare_baseline=True,
        )
    else:
        weight, spec = _weight(args)
        result = find_violator(
            spec=spec,
            weight=weight.as_weight(),
            constant=constant,
            max_window=args.max_window,
            annulus_start=args.annulus_start,
        )

    if result.found:
        logger.info(
            f"Witness on [{result.window[0]}, {result.window[1]}) with ratio {result.ratio:.9g} < {constant:g}, "
            f"gap {result.gap:.3e} verified by {result.verified_by}."
        )
        return CommandResult(text=result.to_csv())

    return CommandResult(text=result.to_csv(), exit_code=EXIT_BUDGET)


COMMANDS = {
    "weights": cmd_weights,
    "verify": cmd_verify,
    "sweep": cmd_sweep,
    "violator": cmd_violator,
}
