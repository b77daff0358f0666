import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

import autohardy as ah
from autohardy import exc
from autohardy import spectral
from autohardy.forms import RadialVector
from autohardy.util import config_util

from test_autohardy.conftest import dense_lambda_min

whg_2 = ah.WHalfGamma(q=2, gamma=1.0 / math.sqrt(2.0))
lambda_2 = ah.lambda_q(2)


class TestJacobiSystem:
    def test__ball_of_radius_three(self, t3):
        system = ah.build_jacobi(t3, None, (0, 3))

        assert system.diagonal.tolist() == [3.0, 3.0, 3.0]
        assert system.off_diagonal == pytest.approx([-math.sqrt(3.0), -math.sqrt(2.0)], abs=1e-15)

    def test__annulus_away_from_root(self, t3):
        system = ah.build_jacobi(t3, None, (5, 8))

        assert system.window == (5, 8)
        assert system.off_diagonal == pytest.approx([-math.sqrt(2.0)] * 2, abs=1e-15)

    def test__potential_on_the_diagonal(self, t3):
        system = ah.build_jacobi(t3, whg_2, (0, 3))

        assert system.diagonal == pytest.approx([3.0, 3.0, 1.0 + math.sqrt(3.0)], abs=1e-14)

    def test__poincare_shift_is_exact(self, t3):
        system = ah.build_jacobi(t3, None, (4, 10), poincare_shift=True)

        assert np.all(system.diagonal == 2.0 * math.sqrt(2.0))

    def test__window_validation(self, t3):
        with pytest.raises(exc.DomainError):
            ah.build_jacobi(t3, None, (3, 3))

    @given(seed=st.integers(min_value=0, max_value=2 ** 32), q=st.sampled_from([2, 3]))
    @settings(max_examples=40, deadline=None)
    def test__congruence_with_the_radial_form(self, seed, q):
        spec = ah.RadialTreeSpec.homogeneous(q=q)
        start = seed % 3
        window = (start, start + 6)

        phi = ah.random_test_function(spec, seed=seed, annulus=window)
        weight = ah.WHalfGamma(q=q, gamma=1.0 / math.sqrt(q))

        sizes = np.array(ah.tree.sphere_sizes(spec, window[1])[start: window[1]], dtype=float)
        psi = np.sqrt(sizes) * phi.coefficients

        system = ah.build_jacobi(spec, weight, window)
        expected = ah.hardy_gap(spec, weight, phi)

        assert system.quadratic_form(psi) == pytest.approx(expected, rel=1e-10, abs=1e-9)


class TestLambdaMin:
    def test__ball_of_radius_three(self, t3):
        system = ah.build_jacobi(t3, None, (0, 3))

        assert ah.lambda_min(system) == pytest.approx(3.0 - math.sqrt(5.0), abs=1e-12)
        assert spectral.sturm_bisection(system.diagonal, system.off_diagonal) == pytest.approx(
            3.0 - math.sqrt(5.0), abs=1e-11
        )

    def test__single_radius(self, t3):
        assert ah.lambda_min(ah.build_jacobi(t3, None, (0, 1))) == 3.0

        value, vector = spectral.lambda_min_vector(ah.build_jacobi(t3, None, (0, 1)))
        assert value == 3.0
        assert vector.tolist() == [1.0]

    @pytest.mark.parametrize("window", [(0, 5), (0, 40), (2, 30), (7, 19)])
    def test__agrees_with_dense_solver(self, t3, t4, window):
        for spec, weight in ((t3, whg_2), (t4, ah.WOpt(q=3)), (t3, None)):
            system = ah.build_jacobi(spec, weight, window)
            assert ah.lambda_min(system) == pytest.approx(dense_lambda_min(system), abs=1e-10)

    def test__eigenvector(self, t3):
        system = ah.build_jacobi(t3, None, (0, 20))
        value, vector = spectral.lambda_min_vector(system)

        assert np.linalg.norm(vector) == pytest.approx(1.0)
        assert np.all(vector > 0.0)
        assert system.quadratic_form(vector) == pytest.approx(value, abs=1e-12)

    def test__bottom_approaches_lambda_q(self, t3):
        value = ah.lambda_min(ah.build_jacobi(t3, None, (0, 200)))

        assert 0.0 < value - lambda_2 < 5e-3


class TestSturm:
    def test__counts(self, t3):
        system = ah.build_jacobi(t3, None, (0, 3))
        d, e = system.diagonal, system.off_diagonal

        assert ah.sturm_count(d, e, 0.5) == 0
        assert ah.sturm_count(d, e, 1.0) == 1
        assert ah.sturm_count(d, e, 4.0) == 2
        assert ah.sturm_count(d, e, 6.0) == 3

    @given(seed=st.integers(min_value=0, max_value=2 ** 32), x=st.floats(min_value=-1.0, max_value=7.0))
    @settings(max_examples=50, deadline=None)
    def test__counts_match_dense_eigenvalues(self, seed, x):
        generator = ah.forms.counter_generator(seed)
        diagonal = generator.uniform(0.0, 6.0, size=12)
        off_diagonal = -generator.uniform(0.1, 2.0, size=11)

        dense = np.diag(diagonal) + np.diag(off_diagonal, 1) + np.diag(off_diagonal, -1)
        eigenvalues = np.linalg.eigvalsh(dense)

        if np.min(np.abs(eigenvalues - x)) > 1e-9:
            assert ah.sturm_count(diagonal, off_diagonal, x) == int(np.sum(eigenvalues < x))

    def test__gershgorin_brackets_spectrum(self, t3):
        system = ah.build_jacobi(t3, whg_2, (0, 30))
        lower, upper = spectral.gershgorin_bounds(system.diagonal, system.off_diagonal)
        eigenvalues = np.linalg.eigvalsh(system.dense())

        assert lower <= eigenvalues[0]
        assert eigenvalues[-1] <= upper


class TestPencil:
    def test__ratio_matches_dense_generalised_problem(self, t3):
        window = (2, 25)
        pencil = spectral.build_pencil(t3, whg_2, window)

        system = ah.build_jacobi(t3, None, window)
        weights = whg_2.values(np.arange(*window))
        scale = 1.0 / np.sqrt(weights)
        expected = np.linalg.eigvalsh(scale[:, None] * system.dense() * scale[None, :])[0]

        assert 1.0 + pencil.bottom() == pytest.approx(expected, rel=1e-10)

    def test__zero_weights_are_deflated(self, t3):
        window = (0, 12)
        table = [0.0, 0.0, 0.2, 0.3, 0.0, 0.25, 0.2, 0.1, 0.0, 0.15, 0.2, 0.3]
        weight = ah.TabulatedPotential(table=table)
        pencil = spectral.build_pencil(t3, weight, window)

        assert len(pencil.eliminations) == 4
        assert pencil.kept.tolist() == [2, 3, 5, 6, 7, 9, 10, 11]

        value, psi = pencil.bottom_vector()
        form = ah.build_jacobi(t3, None, window).quadratic_form(psi)
        norm = math.fsum(pencil.weights * psi ** 2)
        assert form / norm == pytest.approx(1.0 + value, rel=1e-9)

    def test__negative_weight_rejected(self, t3):
        with pytest.raises(exc.NonpositiveWeight):
            spectral.build_pencil(t3, -1.0 * ah.WOpt(q=2), (2, 10))

        with pytest.raises(exc.NonpositiveWeight):
            spectral.build_pencil(t3, ah.ConstantPotential(0.0), (2, 10))

    def test__ratio_decreases_towards_one(self, t3):
        ratios = [ah.hardy_ratio_inf(t3, whg_2, (2, n)) for n in (100, 1000, 10000)]

        assert all(ratio > 1.0 for ratio in ratios)
        assert ratios[0] > ratios[1] > ratios[2]
        assert ratios[2] - 1.0 < 1e-4

    def test__wopt_ratio_above_one(self, t3):
        ratios = [ah.hardy_ratio_inf(t3, ah.WOpt(q=2), (2, n)) for n in (100, 1000, 10000)]

        assert all(ratio > 1.0 for ratio in ratios)
        assert ratios[0] > ratios[1] > ratios[2]

    def test__ratio_matches_radial_form_of_eigenvector(self, t3):
        pencil = spectral.build_pencil(t3, whg_2, (2, 40))
        phi, _ = spectral.witness_vector(t3, pencil)

        form = ah.quadform_radial(t3, phi)
        norm = ah.weighted_norm(t3, whg_2, phi)
        assert form / norm == pytest.approx(1.0 + pencil.bottom(), rel=1e-9)


class TestSweeps:
    def test__richardson(self):
        limit, uncertainty = spectral.richardson([10, 20], [1.0 + 1.0 / 100, 1.0 + 1.0 / 400])

        assert limit == pytest.approx(1.0, abs=1e-14)
        assert uncertainty == pytest.approx(1.0 / 400, rel=1e-10)

        assert spectral.richardson([10], [2.0]) == (2.0, math.inf)

    def test__poincare_bottom(self, t3):
        result = ah.poincare_bottom_sweep(t3, [3, 10, 50, 200])

        assert result.values[0] == pytest.approx(3.0 - math.sqrt(5.0), abs=1e-12)
        assert result.is_monotone
        assert all(value > lambda_2 for value in result.values)
        assert result.last - lambda_2 < 5e-3

        for window, value in zip(result.windows, result.values):
            if window >= 50:
                assert value - lambda_2 <= 15.0 / window ** 2

        assert abs(result.limit - lambda_2) < 1e-4

    def test__poincare_bottom_other_q(self):
        result = ah.poincare_bottom_sweep(ah.RadialTreeSpec.homogeneous(q=4), [200])
        assert 0.0 < result.last - 1.0 < 5e-3

    def test__poincare_needs_homogeneous_tree(self, repeat_tree, t3):
        with pytest.raises(exc.DomainError):
            ah.poincare_bottom_sweep(repeat_tree, [10])

        with pytest.raises(exc.DomainError):
            ah.poincare_bottom_sweep(t3, [10, 10])

        with pytest.raises(exc.DomainError):
            ah.poincare_bottom_sweep(t3, [])

    def test__csv(self, t3):
        lines = ah.poincare_bottom_sweep(t3, [3, 10]).to_csv().splitlines()

        assert lines[0] == "window_end,lambda_min,monotone_ok"
        assert lines[1].startswith("3,0.76393202")
        assert lines[1].endswith(",true")
        assert lines[3] == "limit,uncertainty"

    def test__criticality_probe(self, t3):
        full = ah.criticality_probe(t3, whg_2, [3, 10, 100, 1000, 10000])

        assert all(value > 0.0 for value in full.values)
        assert full.values[0] < 3.0 - math.sqrt(5.0)
        assert full.is_monotone
        assert full.last < full.values[0] / 10.0

        half = ah.criticality_probe(t3, 0.5 * whg_2, [3, 10, 100, 1000, 10000])

        assert half.limit > 0.08
        assert half.limit >= 10.0 * abs(full.limit)

    def test__criticality_probe_rejects_non_hardy_weights(self, t3):
        with pytest.raises(exc.NonnegativityViolated) as e:
            ah.criticality_probe(t3, 2.0 * ah.WOpt(q=2), [50])

        assert e.value.window == 50
        assert e.value.value < 0.0

    def test__hardy_ratio_sweep(self, t3):
        result = ah.hardy_ratio_sweep(t3, whg_2, [100, 1000, 10000])

        assert result.value_label == "ratio"
        assert result.is_monotone
        assert all(value > 1.0 for value in result.values)
        assert result.to_csv().splitlines()[0] == "window_end,ratio,monotone_ok"


class TestNullCriticality:
    def test__green_sqrt_diverges_linearly(self, t3):
        sums = ah.null_criticality_sums(t3, ah.WOpt(q=2), ah.green_sqrt(2), 1000)

        assert sums.final_ratio == pytest.approx(2.0, abs=0.05)
        assert sums.partial_sum(0) == pytest.approx(2.0 * ah.WOpt(q=2)(0))

    def test__ground_state_diverges_quadratically(self, t3):
        gamma = 1.0 / math.sqrt(2.0)
        sums = ah.null_criticality_sums(t3, whg_2, ah.ground_z(2, gamma), 1000)

        assert sums.final_ratio == pytest.approx(4.0, abs=0.1)

    def test__summable_control(self, t3):
        z = ah.TabulatedFunction(table=2.0 ** -np.arange(2001.0))
        sums = ah.null_criticality_sums(t3, ah.ConstantPotential(lambda_2), z, 1000)

        assert sums.final_ratio <= 1.05

    def test__deep_sums_stay_finite(self, t3):
        sums = ah.null_criticality_sums(t3, ah.WOpt(q=2), ah.green_sqrt(2), 5000)

        assert np.all(np.isfinite(sums.log_partial_sums))
        assert sums.to_csv().splitlines()[0] == "n,partial_sum,ratio"

    def test__negative_weight_rejected(self, t3):
        with pytest.raises(exc.NonpositiveWeight):
            ah.null_criticality_sums(t3, -1.0 * ah.WOpt(q=2), ah.green_sqrt(2), 10)


class TestViolator:
    def test__search_windows(self):
        assert spectral.search_windows(start=2, first_stop=16, max_stop=100) == [16, 32, 64, 100]
        assert spectral.search_windows(start=2, first_stop=16, max_stop=10) == [10]

    def test__empty_search_range_is_rejected(self, t3):
        with pytest.raises(exc.InvalidParams):
            spectral.search_windows(start=5, first_stop=16, max_stop=5)

        with pytest.raises(exc.InvalidParams):
            ah.find_violator(t3, whg_2, 1.5, max_window=2)

    @pytest.mark.parametrize("constant", [1.5, 1.2, 1.05])
    def test__whg_is_optimal_near_infinity(self, t3, constant):
        result = ah.find_violator(t3, whg_2, constant, max_window=100000)

        assert result.found
        assert result.ratio < constant
        assert result.gap < 0.0
        assert result.window[0] == 2
        if constant >= 1.2:
            assert result.verified_by == spectral.VERIFIED_BY_FORMS

        gap = ah.hardy_gap(t3, constant * whg_2, result.vector)
        assert gap < 0.0

    def test__no_violator_below_one(self, t3):
        result = ah.find_violator(t3, ah.WOpt(q=2), 0.99, max_window=1024)

        assert not result.found
        assert all(ratio >= 1.0 for ratio in result.ratios)
        assert result.last_window == (2, 1024)

    def test__csv(self, t3):
        result = ah.find_violator(t3, whg_2, 1.5, max_window=1000)
        lines = result.to_csv().splitlines()

        assert lines[0] == "radius,value"
        assert lines[-2] == "ratio,window_start,window_end,gap,verified_by"
        assert lines[-1].endswith(",forms")

    def test__r_bar_is_optimal_near_infinity(self, t3):
        max_window = config_util.config_int("spectral", "remainder_max_window")

        result = ah.find_violator(t3, ah.RemainderBar(q=2), 1.2, max_window=max_window, poincare_baseline=True)

        assert result.found
        assert result.ratio < 1.2
        assert result.gap < 0.0
        assert result.verified_by == spectral.VERIFIED_BY_JACOBI

    def test__r_bar_needs_wide_annuli(self, t3):
        result = ah.find_violator(t3, ah.RemainderBar(q=2), 1.2, max_window=64, poincare_baseline=True)

        assert not result.found
        assert result.last_window == (2, 64)
        assert result.last_ratio > 1.2
        assert list(result.ratios) == sorted(result.ratios, reverse=True)
