import math

import numpy as np
import pytest

from singular_mrl import (DomainError, ParameterError, PSingularParams,
                          comparative_statics, expected_payoff,
                          fixed_point_closed_form, gap_intervals,
                          optimal_price, payoff_curve, sample)

P1 = PSingularParams(1.0)


class TestExpectedPayoff:
    def test_endpoints_zero(self):
        assert expected_payoff(P1, 0.0) == 0.0
        assert expected_payoff(P1, 1.0) == pytest.approx(0.0, abs=1e-12)

    def test_closed_value_at_candidate_price(self):
        # Pi(5/12) = (5/12) * (5/24) = 25/288 for p = 1
        assert expected_payoff(P1, 5 / 12) == pytest.approx(25 / 288, abs=1e-10)

    def test_domain_error(self):
        with pytest.raises(DomainError):
            expected_payoff(P1, -0.2)

    @pytest.mark.parametrize("price", [0.15, 0.41, 0.7, 0.93])
    def test_against_monte_carlo(self, price):
        n = 10 ** 6
        draws = sample(P1, 555, n)
        payoff = price * np.maximum(draws - price, 0.0)
        se = float(payoff.std(ddof=1)) / math.sqrt(n)
        assert abs(expected_payoff(P1, price) - float(payoff.mean())) <= 4.0 * se

    def test_curve_matches_scalar(self):
        prices = np.linspace(0.0, 1.0, 101)
        curve = payoff_curve(P1, prices)
        assert curve == pytest.approx([expected_payoff(P1, x) for x in prices], abs=1e-11)


class TestOptimalPrice:
    def test_equals_fixed_point(self):
        result = optimal_price(P1)
        assert result.optimal_price == pytest.approx(5 / 12, abs=1e-9)
        assert result.expected_payoff == pytest.approx(25 / 288, abs=1e-9)
        assert result.fixed_point is not None

    def test_grid_dominance(self):
        for p in (0.5, 1.0, 2.0):
            params = PSingularParams(p)
            result = optimal_price(params)
            grid = np.unique(np.concatenate((np.linspace(0.0, 1.0, 1000),
                                             np.ravel(gap_intervals(8)))))
            assert float(payoff_curve(params, grid).max()) <= result.expected_payoff + 2e-10

    def test_curve_attachment(self):
        result = optimal_price(P1, curve_points=11)
        assert len(result.payoff_curve) == 11
        assert result.payoff_curve[0] == (0.0, 0.0)


class TestComparativeStatics:
    def test_prices_decrease_in_p(self):
        results = comparative_statics([0.2, 0.5, 1.0, 2.0, 5.0])
        prices = [r.optimal_price for r in results]
        assert all(a > b for a, b in zip(prices, prices[1:]))
        for r in results:
            assert r.optimal_price == pytest.approx(
                fixed_point_closed_form(PSingularParams(r.p)), abs=1e-8)

    def test_rejects_empty(self):
        with pytest.raises(ParameterError):
            comparative_statics([])
