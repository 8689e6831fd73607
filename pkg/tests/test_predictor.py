import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from cokrig.covariance import BivariateModel, build_joint_cov, cov_vector
from cokrig.design import Design, collocated_design, interleaved_design
from cokrig.exceptions import DesignError, PreconditionError, SingularModelError
from cokrig.predictor import cokrige, krige, markov_krige, sample_paths, solve_spd

grid_sites = st.lists(st.integers(-48, 48), min_size=1, max_size=10, unique=True).map(
    lambda xs: [x / 16 for x in xs])
models = st.builds(BivariateModel, sigma11=st.floats(0.2, 5), sigma22=st.floats(0.2, 5),
                   r=st.floats(-0.95, 0.95), alpha=st.floats(0.3, 6))


class TestKrige:
    def test_single_observation(self):
        m = BivariateModel(2.5, 1.0, 0.3, 1.7)
        d = 0.4
        p = krige(Design([d], [0.1]), m)
        assert p.weights[0] == pytest.approx(math.exp(-1.7 * d), abs=1e-15)
        assert p.variance == pytest.approx(2.5 * (1 - math.exp(-2 * 1.7 * d)), rel=1e-13)

    def test_two_symmetric_neighbours(self):
        m = BivariateModel(1.8, 1.0, 0.0, 3.0)
        d = 0.2
        u = math.exp(-3.0 * d)
        p = krige(Design([-d, d], []), m)
        np.testing.assert_allclose(p.weights, [u / (1 + u * u)] * 2, rtol=1e-14)
        assert p.variance == pytest.approx(1.8 * (1 - u * u) / (1 + u * u), rel=1e-13)

    def test_interpolation(self):
        m = BivariateModel(1.0, 1.0, 0.5, 2.0)
        p = krige(Design([-0.5, 0.0, 0.7], [], 0.0), m)
        np.testing.assert_allclose(p.weights, [0, 1, 0], atol=1e-14)
        assert p.variance == pytest.approx(0.0, abs=1e-15)

    def test_uses_only_y1(self):
        p = krige(interleaved_design(4), BivariateModel(1, 1, 0.9, 1))
        assert set(p.variables.tolist()) == {1}
        assert len(p.weights) == 4

    def test_empty_sites1(self):
        with pytest.raises(DesignError):
            krige(Design([], [0.5]), BivariateModel(1, 1, 0.5, 1))

    def test_weight_map(self):
        p = krige(Design([-0.25, 0.5], []), BivariateModel(1, 1, 0, 1))
        assert set(p.weight_map) == {(1, -0.25), (1, 0.5)}
        assert p.weight(1, 0.5) == p.weight_map[(1, 0.5)]
        with pytest.raises(KeyError):
            p.weight(2, 0.5)


class TestCokrige:
    @pytest.mark.parametrize("r", [-0.9, -0.3, 0.0, 0.4, 0.95])
    def test_collocated_equals_kriging(self, r):
        m = BivariateModel(1.3, 0.6, r, 2.2)
        d = collocated_design([-0.8, -0.3, 0.2, 0.45, 1.1], target=0.1)
        k = krige(d, m)
        c = cokrige(d, m, method="dense")
        assert np.max(np.abs(c.weights[c.variables == 2])) < 1e-10
        np.testing.assert_allclose(c.weights[c.variables == 1], k.weights, atol=1e-10)
        assert c.variance == pytest.approx(k.variance, abs=1e-12)

    def test_kronecker_path_matches_dense(self):
        m = BivariateModel(1.3, 0.6, 0.7, 2.2)
        d = collocated_design(np.linspace(-1, 1, 9) + 0.01)
        kron = cokrige(d, m)
        dense = cokrige(d, m, method="dense")
        assert kron.diagnostics["method"] == "kronecker"
        assert dense.diagnostics["method"] == "dense"
        np.testing.assert_allclose(kron.weights, dense.weights, atol=1e-12)
        assert kron.variance == pytest.approx(dense.variance, abs=1e-13)

    def test_kronecker_needs_collocated(self):
        with pytest.raises(PreconditionError):
            cokrige(interleaved_design(2), BivariateModel(1, 1, 0.5, 1), method="kronecker")

    def test_y2_on_subset_of_y1_sites_equals_kriging(self):
        m = BivariateModel(1.0, 2.0, 0.8, 1.5)
        d = Design([-0.5, -0.1, 0.25, 0.6, 0.75], [-0.5, 0.25, 0.75], target=0.4)
        k, c = krige(d, m), cokrige(d, m)
        assert np.max(np.abs(c.weights[c.variables == 2])) < 1e-10
        assert c.variance == pytest.approx(k.variance, abs=1e-12)

    def test_interleaved_support(self):
        n = 10
        p = cokrige(interleaved_design(n), BivariateModel(1, 1, 0.5, 2))
        expected = {(1, -2 / n), (1, 2 / n), (2, -2 / n), (2, -1 / n), (2, 1 / n), (2, 2 / n)}
        assert set(p.support()) == expected

    def test_independent_components(self):
        d = interleaved_design(8)
        m = BivariateModel(1.4, 0.9, 0.0, 3.0)
        c, k = cokrige(d, m), krige(d, m)
        assert np.max(np.abs(c.weights[c.variables == 2])) < 1e-12
        assert c.variance == pytest.approx(k.variance, abs=1e-14)

    def test_y2_only(self):
        m = BivariateModel(1.0, 1.0, 0.6, 1.0)
        p = cokrige(Design([], [0.3]), m)
        # single Y2 obs: weight = r exp(-alpha d) sqrt(s11/s22), var = s11 (1 - r^2 e^{-2 alpha d})
        assert p.weights[0] == pytest.approx(0.6 * math.exp(-0.3), rel=1e-14)
        assert p.variance == pytest.approx(1 - 0.36 * math.exp(-0.6), rel=1e-13)

    def test_numerically_singular(self):
        m = BivariateModel(1.0, 1.0, 0.5, 1.0)
        with pytest.raises(SingularModelError) as info:
            cokrige(Design([0.0, 1e-17, 0.5], [], target=0.2), m)
        assert info.value.minor == 2

    def test_empty_design(self):
        with pytest.raises(DesignError):
            cokrige(Design([], []), BivariateModel(1, 1, 0, 1))

    @settings(max_examples=60, deadline=None)
    @given(s1=grid_sites, s2=grid_sites, m=models, target=st.floats(-3, 3))
    def test_orthogonality(self, s1, s2, m, target):
        d = Design(s1, s2, target)
        p = cokrige(d, m)
        cov = build_joint_cov(d, m)
        c = cov_vector(1, target, cov.variables, cov.sites, m)
        # Cov(Y1(t) - prediction, obs_k) = c_k - (Sigma w)_k
        assert np.max(np.abs(c - cov.matrix @ p.weights)) < 1e-10
        assert abs(p.variance - (m.sigma11 - c @ p.weights)) < 1e-10

    @settings(max_examples=60, deadline=None)
    @given(s1=grid_sites, s2=grid_sites, m=models, target=st.floats(-3, 3))
    def test_dominance(self, s1, s2, m, target):
        d = Design(s1, s2, target)
        assert cokrige(d, m).variance <= krige(d, m).variance + 1e-12

    @settings(max_examples=40, deadline=None)
    @given(s1=grid_sites, s2=grid_sites, m=models, seed=st.integers(0, 2**32 - 1))
    def test_permutation_invariance(self, s1, s2, m, seed):
        rng = np.random.default_rng(seed)
        d = Design(s1, s2, 0.03)
        shuffled = Design(rng.permutation(s1), rng.permutation(s2), 0.03)
        a, b = cokrige(d, m), cokrige(shuffled, m)
        assert a.variance == pytest.approx(b.variance, abs=1e-12)
        assert a.weight_map == pytest.approx(b.weight_map, abs=1e-10)

    def test_y1_on_subset_of_y2_sites_can_differ(self):
        # the reverse inclusion is the interleaved design, where Y2 helps
        d = interleaved_design(4)
        assert set(d.sites1) < set(d.sites2)
        m = BivariateModel(1, 1, 0.5, 2)
        assert cokrige(d, m).variance < krige(d, m).variance - 1e-3

    @settings(max_examples=30, deadline=None)
    @given(s1=grid_sites, m=models, data=st.data())
    def test_subset_identity_property(self, s1, m, data):
        s2 = data.draw(st.lists(st.sampled_from(s1), unique=True))
        d = Design(s1, s2, data.draw(st.floats(-3, 3)))
        c, k = cokrige(d, m), krige(d, m)
        assert np.max(np.abs(c.weights[c.variables == 2]), initial=0.0) < 1e-10
        np.testing.assert_allclose(c.weights[c.variables == 1], k.weights, atol=1e-10)
        assert c.variance == pytest.approx(k.variance, abs=1e-12)


class TestMarkov:
    def test_two_neighbour_closed_form(self):
        d = interleaved_design(10)
        m = BivariateModel(1, 1, 0.5, 2.0)
        p = markov_krige(d, m)
        u = math.exp(-0.4)
        assert p.weight(1, -0.2) == pytest.approx(u / (1 + u * u), rel=1e-14)
        assert p.weight(1, 0.2) == pytest.approx(u / (1 + u * u), rel=1e-14)
        assert set(p.support()) == {(1, -0.2), (1, 0.2)}

    @pytest.mark.parametrize("n", [2, 10, 64])
    @pytest.mark.parametrize("alpha", [0.5, 2.0, 8.0])
    def test_matches_dense(self, n, alpha):
        d = interleaved_design(n)
        m = BivariateModel(1.7, 1, 0.3, alpha)
        full, mk = krige(d, m), markov_krige(d, m)
        np.testing.assert_allclose(full.weights, mk.weights, rtol=0, atol=1e-10)
        assert full.variance == pytest.approx(mk.variance, abs=1e-10)
        off = np.abs(full.sites) != 2 / n
        assert np.max(np.abs(full.weights[off]), initial=0) < 1e-10

    def test_asymmetric_neighbours(self):
        d = Design([-1.0, -0.3, 0.05, 0.6, 2.0], [], target=-0.1)
        m = BivariateModel(2.0, 1, 0.0, 1.3)
        full, mk = krige(d, m), markov_krige(d, m)
        np.testing.assert_allclose(full.weights, mk.weights, atol=1e-12)
        assert full.variance == pytest.approx(mk.variance, abs=1e-12)

    def test_target_on_site(self):
        d = Design([-1.0, 0.0, 1.0], [], 0.0)
        p = markov_krige(d, BivariateModel(1, 1, 0, 1))
        np.testing.assert_array_equal(p.weights, [0, 1, 0])
        assert p.variance == 0.0

    def test_outside_hull(self):
        with pytest.raises(PreconditionError):
            markov_krige(Design([0.5, 1.0], [], 0.0), BivariateModel(1, 1, 0, 1))
        with pytest.raises(PreconditionError):
            markov_krige(Design([0.0, 1.0], [], 0.0), BivariateModel(1, 1, 0, 1))

    def test_requires_exponential(self):
        with pytest.raises(PreconditionError):
            markov_krige(interleaved_design(4), BivariateModel(1, 1, 0, 1, nu=1.5))

    def test_smoother_model_is_not_markov(self):
        d = interleaved_design(10)
        p = krige(d, BivariateModel(1, 1, 0, 2.0, nu=1.5))
        off = np.abs(p.sites) != 0.2
        assert np.max(np.abs(p.weights[off])) > 1e-6


class TestSamplePaths:
    def test_deterministic(self):
        d, m = interleaved_design(4), BivariateModel(1, 1, 0.5, 2)
        a = sample_paths(d, m, seed=7, count=50)
        b = sample_paths(d, m, seed=7, count=50)
        np.testing.assert_array_equal(a.observations(), b.observations())
        np.testing.assert_array_equal(a.target, b.target)
        c = sample_paths(d, m, seed=8, count=50)
        assert not np.array_equal(a.target, c.target)

    def test_shapes_and_target_on_site(self):
        d = Design([-0.5, 0.0, 0.5], [0.25], target=0.0)
        p = sample_paths(d, BivariateModel(1, 1, 0.5, 1), seed=1, count=10)
        assert p.y1.shape == (10, 3) and p.y2.shape == (10, 1)
        np.testing.assert_array_equal(p.y1[:, 1], p.target)

    def test_moments(self):
        count = 100_000
        d, m = interleaved_design(10), BivariateModel(1, 1, 0.5, 2)
        paths = sample_paths(d, m, seed=2024, count=count)
        assert abs(paths.target.mean()) < 4 * math.sqrt(1 / count)
        pred = cokrige(d, m)
        err2 = (paths.target - pred.predict(paths.observations())) ** 2
        se = err2.std(ddof=1) / math.sqrt(count)
        assert abs(err2.mean() - pred.variance) < 3 * se

    def test_count(self):
        with pytest.raises(ValueError):
            sample_paths(interleaved_design(2), BivariateModel(1, 1, 0, 1), 0, 0)


def test_refinement_recovers_accuracy():
    # cond ~ 1e8 here; one extended-precision step restores ~1e-12 accuracy
    n = 512
    d = interleaved_design(n)
    m = BivariateModel(1, 1, 0.99, 0.5)
    cov = build_joint_cov(d, m)
    c = cov_vector(1, 0.0, cov.variables, cov.sites, m)
    w0, _, _ = solve_spd(cov.matrix, c, 1.0, refine=0)
    w1, var, info = solve_spd(cov.matrix, c, 1.0)
    assert info["refinement_steps"] == 1
    e1, e2 = math.exp(-0.5 / n), math.exp(-1.0 / n)
    exact_b1 = e2 / (e2 * e2 + 1)
    k = n // 2 - 1  # Y1(-2/n)
    assert abs(w1[k] - exact_b1) < 1e-11
    assert abs(w1[k] - exact_b1) <= abs(w0[k] - exact_b1)
