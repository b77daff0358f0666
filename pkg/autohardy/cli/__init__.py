from autohardy.cli.commands import (
    EXIT_BUDGET,
    EXIT_CONFIG,
    EXIT_OK,
    EXIT_VIOLATION,
    CommandResult,
    cmd_sweep,
    cmd_verify,
    cmd_violator,
    cmd_weights,
)
from autohardy.cli.descriptors import parse_function, parse_tree, parse_weight, split_descriptor, tree_for_weight
from autohardy.cli.main import build_parser, main, run
