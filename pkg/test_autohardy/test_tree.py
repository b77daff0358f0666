import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

import autohardy as ah
from autohardy import exc
from autohardy.tree import radial_tree
from autohardy.util.log_space import LogMagnitude

from test_autohardy.conftest import bfs_sphere_sizes


class TestRadialTreeSpec:
    def test__homogeneous(self, t3):
        assert t3.is_homogeneous
        assert t3.q == 2
        assert t3.branching(0) == 2
        assert t3.branching(57) == 2
        assert t3.degree(5) == 3

    def test__custom_repeat_extension(self, repeat_tree):
        assert [repeat_tree.branching(n) for n in range(8)] == [2, 4, 4, 5, 6, 6, 6, 6]
        assert not repeat_tree.is_homogeneous

        with pytest.raises(exc.TreeException):
            repeat_tree.q

    def test__custom_affine_extension(self, affine_tree):
        assert [affine_tree.branching(n) for n in range(6)] == [3, 4, 5, 5, 6, 7]
        assert affine_tree.branching_array(6).tolist() == [3, 4, 5, 5, 6, 7]

    def test__nondecreasing(self, repeat_tree, affine_tree):
        assert repeat_tree.is_nondecreasing
        assert affine_tree.is_nondecreasing

        assert not ah.RadialTreeSpec.custom(prefix=[3, 2]).is_nondecreasing
        assert not ah.RadialTreeSpec.custom(prefix=[2, 9], extend="affine", affine=(1.0, 0.0)).is_nondecreasing

    def test__branching_must_be_transient(self):
        with pytest.raises(exc.TreeException):
            ah.RadialTreeSpec.custom(prefix=[2, 1])

        with pytest.raises(exc.TreeException):
            ah.RadialTreeSpec.custom(prefix=[])

        with pytest.raises(exc.TreeException):
            ah.RadialTreeSpec.custom(prefix=[2], extend="affine")

    def test__string_form(self, t3, repeat_tree, affine_tree):
        assert t3.to_string() == "homogeneous:q=2"
        assert repeat_tree.to_string() == "custom:prefix=2,4,4,5,6;extend=repeat"
        assert affine_tree.to_string() == "custom:prefix=3,4,5;extend=affine:1,2"

        for spec in (t3, repeat_tree, affine_tree):
            assert ah.RadialTreeSpec.from_string(spec.to_string()) == spec

        assert ah.RadialTreeSpec.from_string("custom:prefix=2,3") == ah.RadialTreeSpec.custom(prefix=[2, 3])

        with pytest.raises(exc.DescriptorException):
            ah.RadialTreeSpec.from_string("binary")


class TestSphereSizes:
    def test__homogeneous_t3(self, t3):
        assert radial_tree.sphere_sizes(t3, 4) == [1, 3, 6, 12, 24]
        assert radial_tree.sphere_size(t3, 10) == 3 * 2 ** 9

    def test__custom(self, repeat_tree):
        assert radial_tree.sphere_sizes(repeat_tree, 6) == [1, 3, 12, 48, 240, 1440, 8640]

    def test__agree_with_breadth_first_construction(self, repeat_tree, affine_tree):
        for spec in (ah.RadialTreeSpec.homogeneous(q=3), repeat_tree, affine_tree):
            sizes, adjacency = bfs_sphere_sizes(spec, depth=6)

            assert sizes == radial_tree.sphere_sizes(spec, 5)
            assert len(adjacency[0]) == spec.branching(0) + 1
            assert len(adjacency[1]) == spec.degree(1)

    @pytest.mark.parametrize(
        "spec, max_radius",
        [
            (ah.RadialTreeSpec.homogeneous(q=2), 12),
            (ah.RadialTreeSpec.homogeneous(q=3), 12),
            (ah.RadialTreeSpec.custom(prefix=[2, 2, 3]), 10),
            (ah.RadialTreeSpec.custom(prefix=[2], extend="affine", affine=(0.25, 1.5)), 10),
        ],
    )
    def test__breadth_first_construction_up_to_radius(self, spec, max_radius):
        sizes, _ = bfs_sphere_sizes(spec, depth=max_radius + 1)

        assert sizes == radial_tree.sphere_sizes(spec, max_radius)
        for n in range(1, max_radius + 2):
            assert radial_tree.ball_volume(spec, n) == sum(sizes[:n])

    def test__overflow_is_reported(self, t3):
        assert radial_tree.sphere_size(t3, 100) == 3 * 2 ** 99

        with pytest.raises(exc.OverflowAtDepth) as e:
            radial_tree.sphere_size(t3, 200)

        assert e.value.depth == 128

    def test__log_sizes_reach_any_depth(self, t3):
        logs = radial_tree.log_sphere_sizes(t3, 5)
        assert logs == pytest.approx(np.log([1, 3, 6, 12, 24]), abs=1e-14)

        deep = radial_tree.log_sphere_sizes(t3, 100001)
        assert deep[-1] == pytest.approx(math.log(3.0) + 99999 * math.log(2.0), rel=1e-12)

    def test__log_sizes_stay_accurate_on_growing_tree(self, affine_tree):
        depth = 20001
        increments = np.log(affine_tree.branching_array(depth - 1).astype(float))
        increments[0] = math.log(affine_tree.branching(0) + 1.0)

        logs = radial_tree.log_sphere_sizes(affine_tree, depth)

        assert logs[-1] == pytest.approx(math.fsum(increments), rel=1e-13)
        assert logs[1000] == pytest.approx(math.fsum(increments[:1000]), rel=1e-13)

    def test__log_psi_stays_accurate_at_depth(self, t3, repeat_tree):
        logs = radial_tree.log_psi_array(t3, psi1=1.0, n_max=100001)
        assert logs[-1] == pytest.approx(100000 * math.log(2.0), rel=1e-13)

        expected = math.log(4.0 * 4.0 * 5.0) + 99996 * math.log(6.0)
        assert radial_tree.log_psi_sequence(repeat_tree, psi1=1.0, n=100000) == pytest.approx(expected, rel=1e-13)


class TestBallAndEdges:
    def test__ball_volume(self, t3):
        assert radial_tree.ball_volume(t3, 1) == 1
        assert radial_tree.ball_volume(t3, 3) == 10

        with pytest.raises(exc.DomainError):
            radial_tree.ball_volume(t3, 0)

    @given(n=st.integers(min_value=1, max_value=30))
    @settings(max_examples=30, deadline=None)
    def test__closed_form_matches_summed_spheres(self, n):
        for spec in (
            ah.RadialTreeSpec.homogeneous(q=2),
            ah.RadialTreeSpec.custom(prefix=[2, 4, 4, 5, 6]),
            ah.RadialTreeSpec.custom(prefix=[3, 4, 5], extend="affine", affine=(1.0, 2.0)),
        ):
            assert radial_tree.ball_volume_closed_form(spec, n) == radial_tree.ball_volume(spec, n)

    def test__ball_volume_overflows_on_growing_tree(self, affine_tree):
        assert radial_tree.ball_volume(affine_tree, 30) == radial_tree.ball_volume_closed_form(affine_tree, 30)

        with pytest.raises(exc.OverflowAtDepth):
            radial_tree.ball_volume(affine_tree, 60)

    def test__edges_between_spheres(self, t3, repeat_tree):
        assert radial_tree.edge_count_between_spheres(t3, 0) == 3
        assert radial_tree.edge_count_between_spheres(t3, 4) == 48

        assert radial_tree.edge_count_between_spheres(repeat_tree, 0) == 3

        for n in range(1, 6):
            expected = repeat_tree.branching(n) * radial_tree.sphere_size(repeat_tree, n)
            assert radial_tree.edge_count_between_spheres(repeat_tree, n) == expected

    def test__log_edge_counts(self, t3):
        assert radial_tree.log_edge_counts(t3, 3) == pytest.approx(np.log([3, 6, 12]), abs=1e-14)


class TestPsi:
    def test__psi_sequence(self, repeat_tree):
        assert radial_tree.psi_sequence(repeat_tree, psi1=1.0, n=1) == pytest.approx(1.0)
        assert radial_tree.psi_sequence(repeat_tree, psi1=1.0, n=3) == pytest.approx(16.0)
        assert radial_tree.psi_sequence(repeat_tree, psi1=2.0, n=4) == pytest.approx(2.0 * 4 * 4 * 5)

    def test__psi_goes_to_log_space(self, t3):
        value = radial_tree.psi_sequence(t3, psi1=1.0, n=2000)

        assert isinstance(value, LogMagnitude)
        assert value.log == pytest.approx(1999 * math.log(2.0), rel=1e-12)

    def test__log_psi_array(self, repeat_tree):
        logs = radial_tree.log_psi_array(repeat_tree, psi1=1.0, n_max=4)
        assert logs == pytest.approx(np.log([1.0, 4.0, 16.0, 80.0]), abs=1e-14)

    def test__psi_needs_positive_radius(self, t3):
        with pytest.raises(exc.DomainError):
            radial_tree.psi_sequence(t3, psi1=1.0, n=0)


class TestTruncatedTree:
    def test__t3_depth_4(self, t3):
        tree = ah.build_truncated(t3, depth=4)

        assert tree.vertex_count == 22
        assert tree.level_offsets.tolist() == [0, 1, 4, 10, 22]
        assert tree.edges().shape == (21, 2)
        assert np.all(tree.degree == 3)
        assert tree.boundary_degree[tree.level(3)].tolist() == [2] * 12
        assert np.all(tree.boundary_degree[:10] == 0)

    def test__interior_degrees_are_the_tree_degrees(self, repeat_tree):
        tree = ah.build_truncated(repeat_tree, depth=5)

        inside = tree.children_count + np.where(tree.radius > 0, 1, 0)
        interior = tree.radius < tree.depth - 1
        assert np.array_equal(inside[interior], tree.degree[interior])
        assert np.array_equal((inside + tree.boundary_degree)[~interior], tree.degree[~interior])

    def test__matches_breadth_first_construction(self, affine_tree):
        sizes, _ = bfs_sphere_sizes(affine_tree, depth=5)
        tree = ah.build_truncated(affine_tree, depth=5)

        assert np.bincount(tree.radius).tolist() == sizes

    def test__budget(self, t3):
        with pytest.raises(exc.BudgetExceeded):
            ah.build_truncated(t3, depth=30, budget=1000)

        with pytest.raises(exc.BudgetExceeded):
            ah.build_truncated(t3, depth=300)

        with pytest.raises(exc.DomainError):
            ah.build_truncated(t3, depth=0)
