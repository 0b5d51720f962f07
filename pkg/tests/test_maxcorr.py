import numpy as np
import pytest

from sensorjam.errors import ConfigError, DegenerateCorrelation
from sensorjam.maxcorr import (
    DiscretizedJoint,
    discretize_bivariate_gaussian,
    linearity_score,
    maximal_correlation,
    product_joint,
)


class TestDiscretize:
    def test_mass_is_one(self):
        joint = discretize_bivariate_gaussian(0.8, 64, 4.0)
        assert abs(joint.pmf.sum() - 1.0) <= 1e-12

    def test_independence_factorizes(self):
        joint = discretize_bivariate_gaussian(0.0, 64, 4.0)
        px = joint.pmf.sum(axis=1)
        py = joint.pmf.sum(axis=0)
        np.testing.assert_allclose(joint.pmf, np.outer(px, py), atol=1e-10)

    def test_exchangeable_symmetry(self):
        joint = discretize_bivariate_gaussian(0.8, 64, 4.0)
        np.testing.assert_allclose(joint.pmf, joint.pmf.T, atol=1e-15)

    def test_rejects_degenerate_correlation(self):
        for rho in (1.0, -1.0, 1.3):
            with pytest.raises(DegenerateCorrelation):
                discretize_bivariate_gaussian(rho)

    def test_rejects_small_grids(self):
        with pytest.raises(ConfigError):
            discretize_bivariate_gaussian(0.5, n=4)
        with pytest.raises(ConfigError):
            discretize_bivariate_gaussian(0.5, half_width=0.0)

    def test_joint_validation(self):
        with pytest.raises(ConfigError):
            DiscretizedJoint(np.arange(3.0), np.arange(3.0), np.full((3, 3), 0.2))


class TestMaximalCorrelation:
    @pytest.mark.parametrize("rho", [0.2, -0.2, 0.5, -0.5, 0.8, -0.8])
    def test_gaussian_recovers_absolute_rho(self, rho):
        result = maximal_correlation(discretize_bivariate_gaussian(rho, 64, 4.0))
        assert abs(result.rho_star - abs(rho)) <= 0.02

    def test_independence_gives_zero(self):
        result = maximal_correlation(discretize_bivariate_gaussian(0.0, 64, 4.0))
        assert result.rho_star <= 1e-8

    def test_first_singular_value_is_one(self):
        result = maximal_correlation(discretize_bivariate_gaussian(0.8, 64, 4.0))
        assert abs(result.first_singular_value - 1.0) <= 1e-10

    def test_rho_star_bounded_by_one(self):
        for rho in (0.3, 0.9):
            result = maximal_correlation(discretize_bivariate_gaussian(rho, 48, 4.0))
            assert result.rho_star <= 1.0 + 1e-10

    def test_transforms_standardized_and_aligned(self):
        result = maximal_correlation(discretize_bivariate_gaussian(0.6, 64, 4.0))
        for vec, w in ((result.f_vec, result.marginal_x), (result.g_vec, result.marginal_y)):
            assert abs(w @ vec) <= 1e-10
            assert w @ vec**2 == pytest.approx(1.0, abs=1e-10)
        joint = discretize_bivariate_gaussian(0.6, 64, 4.0)
        attained = result.f_vec @ joint.pmf @ result.g_vec
        assert attained == pytest.approx(result.rho_star, abs=1e-10)

    def test_permutation_invariance(self):
        joint = discretize_bivariate_gaussian(0.7, 32, 4.0)
        rng = np.random.default_rng(3)
        pi = rng.permutation(32)
        pj = rng.permutation(32)
        permuted = DiscretizedJoint(
            grid_x=np.asarray(joint.grid_x)[pi],
            grid_y=np.asarray(joint.grid_y)[pj],
            pmf=joint.pmf[np.ix_(pi, pj)],
        )
        a = maximal_correlation(joint)
        b = maximal_correlation(permuted)
        assert a.rho_star == pytest.approx(b.rho_star, abs=1e-10)

    def test_tensorization(self):
        joint = discretize_bivariate_gaussian(0.8, 24, 4.0)
        single = maximal_correlation(joint).rho_star
        doubled = maximal_correlation(product_joint(joint)).rho_star
        assert abs(single - doubled) <= 1e-8


class TestLinearityScore:
    def test_gaussian_maximizers_are_linear(self):
        result = maximal_correlation(discretize_bivariate_gaussian(0.8, 64, 4.0))
        assert linearity_score(result.f_vec, result.grid_x, result.marginal_x) >= 0.999
        assert linearity_score(result.g_vec, result.grid_y, result.marginal_y) >= 0.999

    def test_identity_map_scores_one(self):
        grid = np.linspace(-3, 3, 33)
        w = np.full(33, 1 / 33)
        assert linearity_score(grid.copy(), grid, w) == pytest.approx(1.0, abs=1e-12)

    def test_even_function_scores_zero(self):
        grid = np.linspace(-3, 3, 33)
        w = np.full(33, 1 / 33)
        quad = grid**2 - np.mean(grid**2)
        assert linearity_score(quad, grid, w) <= 1e-12

    def test_negative_rho_keeps_linear_maximizers(self):
        result = maximal_correlation(discretize_bivariate_gaussian(-0.5, 64, 4.0))
        assert linearity_score(result.f_vec, result.grid_x, result.marginal_x) >= 0.999
        assert linearity_score(result.g_vec, result.grid_y, result.marginal_y) >= 0.999
