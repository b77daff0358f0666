from collections import deque

import numpy as np
import pytest

import autohardy as ah


def bfs_sphere_sizes(spec: ah.RadialTreeSpec, depth: int):
    """
    Sphere sizes of B_depth(o) counted by walking an explicit adjacency list breadth first, independent of the
    recurrence used by the package.
    """
    adjacency = {0: []}
    radius = {0: 0}
    queue = deque([0])
    next_vertex = 1

    while queue:
        vertex = queue.popleft()
        n = radius[vertex]
        if n == depth - 1:
            continue
        children = spec.branching(n) + (1 if n == 0 else 0)
        for _ in range(children):
            adjacency[vertex].append(next_vertex)
            adjacency[next_vertex] = [vertex]
            radius[next_vertex] = n + 1
            queue.append(next_vertex)
            next_vertex += 1

    return np.bincount(list(radius.values()), minlength=depth).tolist(), adjacency


def dense_lambda_min(system) -> float:
    return float(np.linalg.eigvalsh(system.dense())[0])


@pytest.fixture(name="t3")
def make_t3():
    return ah.RadialTreeSpec.homogeneous(q=2)


@pytest.fixture(name="t4")
def make_t4():
    return ah.RadialTreeSpec.homogeneous(q=3)


@pytest.fixture(name="repeat_tree")
def make_repeat_tree():
    return ah.RadialTreeSpec.custom(prefix=[2, 4, 4, 5, 6])


@pytest.fixture(name="affine_tree")
def make_affine_tree():
    return ah.RadialTreeSpec.custom(prefix=[3, 4, 5], extend="affine", affine=(1.0, 2.0))
