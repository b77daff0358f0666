import logging
from typing import Optional, Tuple, Union

import numpy as np

from autohardy import exc
from autohardy.forms.vectors import RadialVector, VertexFunction
from autohardy.tree.radial_tree import RadialTreeSpec
from autohardy.tree.truncated import TruncatedTree

logger = logging.getLogger(__name__)

UNIFORM = "uniform"
GAUSSIAN = "gaussian"


def counter_generator(seed: int) -> np.random.Generator:
    """
    A Philox counter-based generator keyed by the seed, whose k-th draw depends only on (seed, k), so that vertex k
    always receives the same value on every platform.
    """
    return np.random.Generator(np.random.Philox(key=int(seed)))


def _draw(seed: int, size: int, distribution: str) -> np.ndarray:
    generator = counter_generator(seed)
    if distribution == UNIFORM:
        return generator.uniform(-1.0, 1.0, size=size)
    if distribution == GAUSSIAN:
        return generator.standard_normal(size=size)
    raise exc.DomainError(f"Unknown distribution {distribution}, use {UNIFORM} or {GAUSSIAN}.")


def random_test_function(
    target: Union[TruncatedTree, RadialTreeSpec],
    seed: int,
    annulus: Optional[Tuple[int, int]] = None,
    distribution: str = UNIFORM,
) -> Union[VertexFunction, RadialVector]:
    """
    A reproducible random test function with a prescribed support.

    Parameters
    ----------
    target
        A truncation, giving a (non-radial) `VertexFunction`, or a tree spec, giving a `RadialVector`.
    seed
        The key of the counter-based generator.
    annulus
        The radii [a, b) carrying the support. Without it a truncation of depth N uses the ball B_{N-1}(o), so the
        function vanishes on the outermost sphere.
    distribution
        `uniform` draws values in [-1, 1], `gaussian` standard normal values.

    Raises
    ------
    BudgetExceeded
        If the annulus does not fit in the truncation.
    """
    if isinstance(target, RadialTreeSpec):
        if annulus is None:
            raise exc.DomainError("A radial test function needs an annulus [a, b).")
        start, stop = annulus
        if not stop > start >= 0:
            raise exc.DomainError(f"An annulus needs b > a >= 0, got [{start}, {stop}).")
        return RadialVector(start=start, coefficients=_draw(seed, stop - start, distribution))

    tree = target
    start, stop = (0, tree.depth - 1) if annulus is None else annulus

    if not stop > start >= 0:
        raise exc.DomainError(f"An annulus needs b > a >= 0, got [{start}, {stop}).")
    if stop > tree.depth:
        raise exc.BudgetExceeded(requested=f"support radius {stop}", budget=f"truncation depth {tree.depth}")

    values = _draw(seed, tree.vertex_count, distribution)
    values[(tree.radius < start) | (tree.radius >= stop)] = 0.0

    logger.debug(f"Random {distribution} function on [{start}, {stop}) of a depth {tree.depth} tree, seed {seed}.")
    return VertexFunction(tree=tree, values=values)
