import functools
import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

import autohardy as ah
from autohardy import exc
from autohardy.forms import GAP_TABLE_HEADER, RadialVector, VertexFunction

whg_2 = ah.WHalfGamma(q=2, gamma=1.0 / math.sqrt(2.0))


def hardy_weights(q: int):
    sqrt_q = math.sqrt(q)
    return [
        ah.WOpt(q=q),
        ah.WHalfGamma(q=q, gamma=1.0 / sqrt_q),
        ah.WHalfGamma(q=q, gamma=1.0 / sqrt_q + sqrt_q - math.sqrt(2.0)),
        ah.WBetaGamma(q=q, beta=0.25, gamma=1.0 / sqrt_q),
        ah.RemainderRq(q=q).as_weight(),
    ]


class TestVectors:
    def test__radial_vector(self):
        phi = RadialVector(start=3, coefficients=[1.0, 2.0])

        assert phi.stop == 5
        assert phi.radii.tolist() == [3, 4]
        assert phi.at([2, 3, 4, 5]).tolist() == [0.0, 1.0, 2.0, 0.0]
        assert (2.0 * phi).coefficients.tolist() == [2.0, 4.0]

    def test__radial_vector_validation(self):
        with pytest.raises(exc.DomainError):
            RadialVector(start=-1, coefficients=[1.0])

        with pytest.raises(exc.DomainError):
            RadialVector(start=0, coefficients=[])

        with pytest.raises(exc.DomainError):
            RadialVector(start=0, coefficients=[np.nan])

    def test__vertex_function_shape(self, t3):
        tree = ah.build_truncated(t3, depth=3)

        with pytest.raises(exc.DomainError):
            VertexFunction(tree=tree, values=np.ones(5))


class TestQuadraticForm:
    def test__indicator_of_a_sphere(self, t3):
        assert ah.quadform_radial(t3, RadialVector(start=5, coefficients=[1.0])) == 144.0
        assert ah.quadform_radial(t3, RadialVector(start=0, coefficients=[1.0])) == 3.0

    def test__full_form_counts_boundary_edges(self, t3):
        tree = ah.build_truncated(t3, depth=3)
        phi = VertexFunction(tree=tree, values=np.ones(tree.vertex_count))

        assert ah.quadform_full(tree, phi) == 12.0

        with pytest.raises(exc.SupportTouchesBoundary):
            ah.quadform_full(tree, phi, strict_interior=True)

    @given(seed=st.integers(min_value=0, max_value=2 ** 32), q=st.sampled_from([2, 3]))
    @settings(max_examples=40, deadline=None)
    def test__radial_and_full_forms_agree(self, seed, q):
        spec = ah.RadialTreeSpec.homogeneous(q=q)
        tree = ah.build_truncated(spec, depth=7)

        start = seed % 4
        phi = ah.random_test_function(spec, seed=seed, annulus=(start, 7))
        vertex = ah.radial_to_vertex(tree, phi)

        weight = ah.WOpt(q=q)

        assert ah.quadform_full(tree, vertex) == pytest.approx(ah.quadform_radial(spec, phi), rel=1e-12)
        assert ah.weighted_norm(spec, weight, vertex) == pytest.approx(
            ah.weighted_norm(spec, weight, phi), rel=1e-12
        )

    def test__deep_windows_in_log_space(self, t3):
        phi = RadialVector(start=400, coefficients=[1.0])

        value = ah.quadform_radial(t3, phi)
        log_expected = math.log(3.0) + 399 * math.log(2.0) + math.log(3.0)

        assert ah.util.log_space.as_log(value) == pytest.approx(log_expected, rel=1e-12)

    def test__radial_to_vertex_needs_fitting_window(self, t3):
        tree = ah.build_truncated(t3, depth=4)

        with pytest.raises(exc.DomainError):
            ah.radial_to_vertex(tree, RadialVector(start=2, coefficients=[1.0, 1.0, 1.0]))


BALL_DEPTHS = {2: 10, 3: 10, 4: 10, 9: 6}


@functools.lru_cache(maxsize=None)
def ball(q: int):
    spec = ah.RadialTreeSpec.homogeneous(q=q)
    return spec, ah.build_truncated(spec, depth=BALL_DEPTHS[q])


def within(interval, fraction: float) -> float:
    return interval.lower + fraction * (interval.upper - interval.lower)


class TestHardyGap:
    @pytest.mark.parametrize("q", [2, 3, 4, 9])
    def test__random_functions_on_balls(self, q):
        spec, tree = ball(q)

        for seed in range(10):
            phi = ah.random_test_function(tree, seed=seed)
            for weight in hardy_weights(q):
                assert ah.hardy_gap(spec, weight, phi) >= -1e-9

    @pytest.mark.parametrize("q", [2, 3, 4, 9])
    @given(
        beta_fraction=st.floats(min_value=0.0, max_value=1.0),
        gamma_fraction=st.floats(min_value=0.0, max_value=1.0),
        seed=st.integers(min_value=0, max_value=2 ** 32),
    )
    @settings(max_examples=200, deadline=None)
    def test__random_parameters_on_balls(self, q, beta_fraction, gamma_fraction, seed):
        spec, tree = ball(q)

        first = ah.WBetaGamma(q=q, beta=0.0, gamma=1.0)
        beta = within(first.intervals()["beta"], beta_fraction)
        lower = ah.WBetaGamma(q=q, beta=beta, gamma=1.0)
        weight = ah.WBetaGamma(q=q, beta=beta, gamma=within(lower.intervals()["gamma"], gamma_fraction))

        half_lower = ah.WHalfGamma(q=q, gamma=1.0)
        half = ah.WHalfGamma(q=q, gamma=within(half_lower.intervals()["gamma"], gamma_fraction))

        phi = ah.random_test_function(tree, seed=seed)

        for candidate in (weight, half):
            assert ah.validate_params(candidate).ok
            assert ah.hardy_gap(spec, candidate, phi) >= -1e-9

    @given(seed=st.integers(min_value=0, max_value=2 ** 32), q=st.sampled_from([2, 3, 4]))
    @settings(max_examples=40, deadline=None)
    def test__random_radial_functions(self, seed, q):
        spec = ah.RadialTreeSpec.homogeneous(q=q)
        start = seed % 5
        phi = ah.random_test_function(spec, seed=seed, annulus=(start, start + 30), distribution="gaussian")

        for weight in hardy_weights(q):
            gap = ah.hardy_gap(spec, weight, phi)
            assert gap >= -1e-9 * max(1.0, abs(ah.quadform_radial(spec, phi)))

    def test__rescaled_weight_is_violated(self, t3):
        tree = ah.build_truncated(t3, depth=10)
        phi = ah.radial_to_vertex(tree, RadialVector(start=2, coefficients=np.full(7, 1.0)))

        assert ah.hardy_gap(t3, 10.0 * ah.WOpt(q=2), phi) < 0.0

    def test__weights_outside_ball(self, t3):
        phi = RadialVector(start=2, coefficients=np.linspace(1.0, 0.1, 25))

        assert ah.poincare_gap(t3, ah.RemainderBar(q=2), phi) >= 0.0

        with pytest.raises(exc.DomainError):
            ah.poincare_gap(t3, ah.RemainderBar(q=2), RadialVector(start=1, coefficients=[1.0, 1.0]))

    @given(seed=st.integers(min_value=0, max_value=2 ** 32))
    @settings(max_examples=30, deadline=None)
    def test__improved_poincare_on_random_functions(self, seed):
        t3 = ah.RadialTreeSpec.homogeneous(q=2)
        phi = ah.random_test_function(t3, seed=seed, annulus=(2, 30))

        form = ah.quadform_radial(t3, phi)
        assert ah.poincare_gap(t3, ah.RemainderBar(q=2), phi) >= -1e-9 * form


class TestRandomFunctions:
    def test__reproducible(self, t3):
        tree = ah.build_truncated(t3, depth=6)

        first = ah.random_test_function(tree, seed=7)
        second = ah.random_test_function(tree, seed=7)
        other = ah.random_test_function(tree, seed=8)

        assert np.array_equal(first.values, second.values)
        assert not np.array_equal(first.values, other.values)

    def test__support(self, t3):
        tree = ah.build_truncated(t3, depth=6)

        phi = ah.random_test_function(tree, seed=1)
        assert phi.support_radii.tolist() == [0, 1, 2, 3, 4]

        phi = ah.random_test_function(tree, seed=1, annulus=(2, 4))
        assert phi.support_radii.tolist() == [2, 3]

        with pytest.raises(exc.BudgetExceeded):
            ah.random_test_function(tree, seed=1, annulus=(2, 9))

    def test__radial_needs_annulus(self, t3):
        with pytest.raises(exc.DomainError):
            ah.random_test_function(t3, seed=1)

        with pytest.raises(exc.DomainError):
            ah.random_test_function(t3, seed=1, annulus=(3, 2))

        with pytest.raises(exc.DomainError):
            ah.random_test_function(t3, seed=1, annulus=(0, 3), distribution="cauchy")


class TestGapTable:
    def test__radial(self, t3):
        phi = RadialVector(start=0, coefficients=[1.0, 0.5, 0.25])

        table = ah.gap_table(t3, whg_2, phi)

        assert [row.index for row in table.rows] == [0, 1, 2]
        assert table.rows[2].contribution == pytest.approx(6.0 * whg_2(2) * 0.0625)
        assert table.total_form - table.total_norm == pytest.approx(table.gap)
        assert sum(row.contribution for row in table.rows) == pytest.approx(table.total_norm)

    def test__vertex_csv(self, t3):
        tree = ah.build_truncated(t3, depth=4)
        phi = ah.random_test_function(tree, seed=3)

        text = ah.gap_table(t3, whg_2, phi).to_csv()
        lines = text.splitlines()

        assert lines[0] == ",".join(GAP_TABLE_HEADER)
        assert lines[-2] == "total_form,total_norm,gap"
        assert len(lines) == 1 + np.count_nonzero(phi.values) + 2
