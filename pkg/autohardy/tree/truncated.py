import logging
from dataclasses import dataclass
from typing import Optional

import numpy as np

from autohardy import exc
from autohardy.tree.radial_tree import RadialTreeSpec, ball_volume
from autohardy.util import config_util

logger = logging.getLogger(__name__)


@dataclass(frozen=True, eq=False)
class TruncatedTree:
    """
    An explicit realisation of the ball B_N(o) of a radial tree, with vertices indexed contiguously in breadth-first
    order (the root is vertex 0, then the sphere of radius 1, and so on).

    Functions on the tree are extended by zero outside the ball, so the edges joining the outermost sphere (radius
    N - 1) to its children outside the ball still carry energy. Their number per outer vertex is `boundary_degree`.

    Parameters
    ----------
    spec
        The branching data the tree realises.
    depth
        N, so that the tree contains the radii 0, ..., N - 1.
    radius
        The radius of every vertex.
    parent
        The index of the parent of every vertex, -1 for the root.
    level_offsets
        The index of the first vertex of every sphere, with a final entry equal to the vertex count.
    """

    spec: RadialTreeSpec
    depth: int
    radius: np.ndarray
    parent: np.ndarray
    level_offsets: np.ndarray

    @property
    def vertex_count(self) -> int:
        return int(self.radius.shape[0])

    def level(self, n: int) -> slice:
        """
        The index range of the sphere of radius n.
        """
        return slice(int(self.level_offsets[n]), int(self.level_offsets[n + 1]))

    @property
    def children_count(self) -> np.ndarray:
        """
        The number of children of every vertex inside the truncation.
        """
        return np.bincount(self.parent[1:], minlength=self.vertex_count)

    @property
    def boundary_degree(self) -> np.ndarray:
        """
        The number of edges from every vertex to children lying outside the truncation (nonzero on the outer sphere
        only).
        """
        degree = np.zeros(self.vertex_count, dtype=np.int64)
        outer = self.depth - 1
        children = self.spec.branching(outer) + (1 if outer == 0 else 0)
        degree[self.level(outer)] = children
        return degree

    @property
    def degree(self) -> np.ndarray:
        """
        The degree of every vertex in the infinite tree.
        """
        branching = self.spec.branching_array(self.depth)[self.radius]
        return branching + 1

    def edges(self) -> np.ndarray:
        """
        The (child, parent) pairs of all edges inside the truncation, shape (vertex_count - 1, 2).
        """
        children = np.arange(1, self.vertex_count)
        return np.stack([children, self.parent[1:]], axis=1)


def build_truncated(spec: RadialTreeSpec, depth: int, budget: Optional[int] = None) -> TruncatedTree:
    """
    Build the explicit tree B_N(o) breadth first.

    The root receives m̄(0) + 1 children and every vertex at radius 1 <= n < N - 1 receives m̄(n) children.

    Parameters
    ----------
    spec
        The branching data of the tree.
    depth
        N >= 1; the tree contains every vertex with |x| < N.
    budget
        The largest vertex count allowed, by default the `vertex_budget` of the configuration.
    """
    if depth < 1:
        raise exc.DomainError(f"A truncation needs depth >= 1, got {depth}.")

    if budget is None:
        budget = config_util.config_int("tree", "vertex_budget")

    try:
        requested = ball_volume(spec=spec, n=depth)
    except exc.OverflowAtDepth:
        raise exc.BudgetExceeded(requested=f"B_{depth}(o)", budget=budget)

    if requested > budget:
        raise exc.BudgetExceeded(requested=requested, budget=budget)

    radius = np.empty(requested, dtype=np.int64)
    parent = np.empty(requested, dtype=np.int64)
    level_offsets = np.zeros(depth + 1, dtype=np.int64)

    radius[0] = 0
    parent[0] = -1
    level_offsets[1] = 1

    for n in range(depth - 1):
        start, stop = level_offsets[n], level_offsets[n + 1]
        children = spec.branching(n) + (1 if n == 0 else 0)

        new_stop = stop + (stop - start) * children
        parent[stop:new_stop] = np.repeat(np.arange(start, stop), children)
        radius[stop:new_stop] = n + 1
        level_offsets[n + 2] = new_stop

    logger.debug(f"Built truncated tree of depth {depth} with {requested} vertices.")

    return TruncatedTree(
        spec=spec, depth=depth, radius=radius, parent=parent, level_offsets=level_offsets
    )
