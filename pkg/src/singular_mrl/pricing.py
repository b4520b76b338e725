"""Monopoly pricing under p-singular demand uncertainty.

A seller facing linear stochastic demand X - x at price x maximizes the
expected payoff x * E(X - x)_+ = x * int_x^1 (1 - F(u)) du.  The optimal
price is the unique fixed point of the MRL function, so it is decreasing
in p: earlier-anticipated bandwagon effects (small p) command a higher
price.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .distribution import (DEFAULT_CONFIG, ONE_THIRD, EvalConfig,
                           PSingularParams, _check_unit_interval)
from .errors import ParameterError
from .fixedpoint import FixedPointResult, fixed_point_solve
from .integration import _integral_array, cdf_integral, mean
from .mrl import _reflect


@dataclass(frozen=True)
class PricingResult:
    p: float
    optimal_price: float
    expected_payoff: float
    payoff_curve: list[tuple[float, float]] | None = None
    fixed_point: FixedPointResult | None = None


def _residual_demand_integral(params: PSingularParams, price: float, config: EvalConfig) -> float:
    # int_price^1 (1 - F); for price >= 1/3 use the reflection identity
    # 1 - F(u) = p F(1-u), which avoids cancellation entirely
    if price >= ONE_THIRD:
        return params.p * cdf_integral(params, _reflect(price), config).value
    j1 = 1.0 - mean(params)
    return (1.0 - price) - (j1 - cdf_integral(params, price, config).value)


def expected_payoff(params: PSingularParams, price: float, config: EvalConfig = DEFAULT_CONFIG) -> float:
    """Pi(price) = price * E(X - price)_+ for price in [0, 1]."""
    price = _check_unit_interval(price)
    return price * _residual_demand_integral(params, price, config)


def payoff_curve(params: PSingularParams, prices, config: EvalConfig = DEFAULT_CONFIG) -> np.ndarray:
    """Vectorized Pi over an array of prices in [0, 1]."""
    prices = np.asarray(prices, dtype=float)
    out = np.empty(prices.shape, dtype=float)
    upper = prices >= ONE_THIRD
    if upper.any():
        j, _ = _integral_array(params, 1.0 - prices[upper], config)
        out[upper] = prices[upper] * params.p * j
    lower = ~upper
    if lower.any():
        j, _ = _integral_array(params, prices[lower], config)
        j1 = 1.0 - mean(params)
        out[lower] = prices[lower] * ((1.0 - prices[lower]) - (j1 - j))
    return out


def optimal_price(params: PSingularParams, config: EvalConfig = DEFAULT_CONFIG,
                  curve_points: int | None = None) -> PricingResult:
    """Optimal price = the MRL fixed point, with its payoff.

    If curve_points is given, attaches Pi over that many evenly spaced
    prices for plotting / dominance checks.
    """
    fp = fixed_point_solve(params, config)
    price = fp.x_star
    payoff = expected_payoff(params, price, config)
    curve = None
    if curve_points is not None:
        grid = np.linspace(0.0, 1.0, curve_points)
        curve = list(zip(grid.tolist(), payoff_curve(params, grid, config).tolist()))
    return PricingResult(p=params.p, optimal_price=price, expected_payoff=payoff,
                         payoff_curve=curve, fixed_point=fp)


def comparative_statics(p_values, config: EvalConfig = DEFAULT_CONFIG) -> list[PricingResult]:
    """Optimal prices across a list of p values (order preserved).

    Prices are strictly decreasing along strictly increasing p.
    """
    if not p_values:
        raise ParameterError("p_values must be nonempty")
    return [optimal_price(PSingularParams(p), config) for p in p_values]
