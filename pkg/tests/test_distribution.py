import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from singular_mrl import (DomainError, EvalConfig, ParameterError,
                          PSingularParams, ResourceLimitError, cdf, cdf_many,
                          cdf_with_bound, gap_intervals, point_cloud, sample,
                          survival)

P1 = PSingularParams(1.0)
P2 = PSingularParams(2.0)


def cdf_oracle(p, x, depth=60):
    # independent brute-force iteration of the defining equations
    if depth == 0:
        return 0.5
    if x <= 0.0:
        return 0.0
    if x >= 1.0:
        return 1.0
    if 1.0 / 3.0 <= x <= 2.0 / 3.0:
        return 1.0 / (p + 1.0)
    if x < 1.0 / 3.0:
        return cdf_oracle(p, 3.0 * x, depth - 1) / (p + 1.0)
    return 1.0 - p * cdf_oracle(p, 3.0 * (1.0 - x), depth - 1) / (p + 1.0)


class TestParams:
    @pytest.mark.parametrize("bad", [0.0, -1.0, -1e-9, float("nan"), float("inf")])
    def test_rejects_nonpositive_p(self, bad):
        with pytest.raises(ParameterError):
            PSingularParams(bad)

    def test_masses(self):
        assert P2.left_mass == pytest.approx(1 / 3)
        assert P2.right_mass == pytest.approx(2 / 3)

    def test_config_validation(self):
        with pytest.raises(ParameterError):
            EvalConfig(tolerance=0.0)
        with pytest.raises(ParameterError):
            EvalConfig(max_depth=0)

    def test_effective_depth_contracts_to_tolerance(self):
        cfg = EvalConfig(tolerance=1e-12)
        for p in (0.01, 1.0, 100.0):
            params = PSingularParams(p)
            d = cfg.effective_depth(params)
            q = max(1.0, p) / (p + 1.0)
            assert q ** d <= 1e-12


class TestCdf:
    def test_plateau_value(self):
        assert cdf(P1, 1 / 3) == 0.5
        assert cdf(P1, 2 / 3) == 0.5
        assert cdf(P2, 0.5) == pytest.approx(1 / 3, abs=0)

    def test_endpoints_exact(self):
        for params in (P1, P2, PSingularParams(0.07)):
            assert cdf(params, 0.0) == 0.0
            assert cdf(params, 1.0) == 1.0

    def test_quarter_is_one_third(self):
        # 1/4 = 0.020202..._3; oracle value computed independently
        assert cdf_oracle(1.0, 0.25) == pytest.approx(1 / 3, abs=1e-15)
        assert cdf(P1, 0.25) == pytest.approx(1 / 3, abs=1e-10)

    def test_one_ninth_p2(self):
        # two left branches: 1/(p+1)^2
        assert cdf(P2, 1 / 9) == pytest.approx(1 / 9, abs=1e-12)

    @pytest.mark.parametrize("x", [-0.1, 1.1, 2.0])
    def test_domain_error(self, x):
        with pytest.raises(DomainError):
            cdf(P1, x)

    def test_reported_bound_honored(self):
        # hard point: irrational inside the Cantor set forces truncation
        x = 0.5 * (math.sqrt(5) - 1) % (1 / 3)
        value, bound = cdf_with_bound(P2, x, EvalConfig(tolerance=1e-8))
        tight, _ = cdf_with_bound(P2, x, EvalConfig(tolerance=1e-14))
        assert abs(value - tight) <= bound + 1e-13
        assert bound <= 1e-8

    def test_vectorized_matches_scalar(self):
        rng = np.random.default_rng(3)
        xs = rng.random(200)
        vec = cdf_many(P2, xs)
        assert vec == pytest.approx([cdf(P2, x) for x in xs], abs=1e-12)

    @given(x=st.floats(min_value=0.0, max_value=1.0),
           y=st.floats(min_value=0.0, max_value=1.0))
    @settings(max_examples=200, deadline=None)
    def test_monotone(self, x, y):
        lo, hi = min(x, y), max(x, y)
        assert cdf(P2, lo) <= cdf(P2, hi) + 2e-10

    @given(x=st.floats(min_value=0.0, max_value=1.0))
    @settings(max_examples=200, deadline=None)
    def test_functional_equation_scaling(self, x):
        assert cdf(P2, x / 3.0) == pytest.approx(cdf(P2, x) / 3.0, abs=2e-10)

    @given(x=st.floats(min_value=0.0, max_value=2 / 3))
    @settings(max_examples=200, deadline=None)
    def test_functional_equation_reflection(self, x):
        cfg = EvalConfig(tolerance=1e-10 / 3.0)
        assert cdf(P2, 1.0 - x, cfg) == pytest.approx(1.0 - 2.0 * cdf(P2, x, cfg), abs=2e-10)


class TestSurvival:
    def test_plateau(self):
        assert survival(P1, 0.5) == pytest.approx(0.5, abs=1e-12)
        assert survival(P2, 1 / 3) == pytest.approx(2 / 3, abs=1e-12)

    def test_right_endpoint(self):
        assert survival(P1, 1.0) == 0.0
        assert survival(P2, 1.0) == 0.0

    def test_complement(self):
        for x in (0.1, 0.3, 0.7, 0.9):
            assert survival(P2, x) == pytest.approx(1.0 - cdf(P2, x), abs=1e-9)


class TestSample:
    def test_deterministic_given_seed(self):
        a = sample(P2, 42, 1000)
        b = sample(P2, 42, 1000)
        assert np.array_equal(a, b)
        assert not np.array_equal(a, sample(P2, 43, 1000))

    def test_support(self):
        draws = sample(P2, 1, 5000)
        assert draws.min() >= 0.0 and draws.max() <= 1.0

    def test_draws_avoid_construction_gaps(self):
        # draws concentrate on the Cantor set, so none may land strictly
        # inside a removed middle-third gap (digit-by-digit extraction is
        # too float-fragile for this; interval membership is robust)
        draws = sample(PSingularParams(0.3), 5, 2000)
        for a, b in gap_intervals(8):
            inside = (draws > a + 1e-12) & (draws < b - 1e-12)
            assert not np.any(inside)

    @pytest.mark.parametrize("p,expected", [(1.0, 0.5), (2.0, 0.6)])
    def test_mean(self, p, expected):
        n = 10 ** 6
        draws = sample(PSingularParams(p), 2024, n)
        se = draws.std(ddof=1) / math.sqrt(n)
        assert abs(draws.mean() - expected) <= 3.0 * se

    def test_dkw_band_against_cdf(self):
        n = 10 ** 6
        draws = np.sort(sample(P1, 99, n))
        f = cdf_many(P1, draws)
        i = np.arange(1, n + 1)
        sup = max(np.max(i / n - f), np.max(f - (i - 1) / n))
        band = math.sqrt(math.log(2.0 / 0.001) / (2.0 * n))
        assert sup <= band

    def test_rejects_bad_n(self):
        with pytest.raises(ParameterError):
            sample(P1, 0, 0)


class TestPointCloud:
    def test_initialization_only(self):
        cloud = point_cloud(P1, n_initial=2, iterations=0)
        assert cloud.points == [(0.0, 0.0), (1 / 3, 0.5), (2 / 3, 0.5), (1.0, 1.0)]

    def test_endpoints_and_monotone(self):
        cloud = point_cloud(P2, n_initial=50, iterations=6)
        assert (cloud.x[0], cloud.F[0]) == (0.0, 0.0)
        assert (cloud.x[-1], cloud.F[-1]) == (1.0, 1.0)
        assert np.all(np.diff(cloud.x) > 0)
        assert np.all(np.diff(cloud.F) >= 0)

    def test_matches_recursive_evaluator(self):
        cloud = point_cloud(P1, n_initial=40, iterations=7)
        dev = np.abs(cdf_many(P1, cloud.x) - cloud.F)
        assert dev.max() <= 1e-10

    def test_matches_recursive_evaluator_low_p(self):
        # for p < 1 the left-branch Hoelder exponent is small, so a
        # one-ulp drift of a cloud x genuinely moves F by ~|ulp|^alpha;
        # the agreement bound must respect that float resolution limit
        params = PSingularParams(0.4)
        cloud = point_cloud(params, n_initial=40, iterations=7)
        dev = np.abs(cdf_many(params, cloud.x) - cloud.F)
        assert dev.max() <= 1e-4

    def test_resource_cap(self):
        with pytest.raises(ResourceLimitError):
            point_cloud(P1, n_initial=1000, iterations=17, max_points=100_000)

    def test_rejects_bad_args(self):
        with pytest.raises(ParameterError):
            point_cloud(P1, n_initial=1, iterations=1)
        with pytest.raises(ParameterError):
            point_cloud(P1, n_initial=10, iterations=-1)


class TestGapIntervals:
    def test_levels_one_two(self):
        gaps = gap_intervals(2)
        assert gaps == pytest.approx([(1 / 9, 2 / 9), (1 / 3, 2 / 3), (7 / 9, 8 / 9)])

    def test_count(self):
        assert len(gap_intervals(8)) == 2 ** 8 - 1

    def test_cdf_constant_on_gaps(self):
        for a, b in gap_intervals(4):
            lo, hi = np.nextafter(a, 1.0), np.nextafter(b, 0.0)
            assert cdf(P2, lo) == pytest.approx(cdf(P2, hi), abs=1e-12)
