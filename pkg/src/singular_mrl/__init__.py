"""Numerics for p-singular Cantor-type distributions: CDF and survival
evaluation, mean residual life, its unique fixed point, and monopoly
pricing under demand uncertainty with bandwagon effects."""

__version__ = "0.1.0"

from .distribution import (EvalConfig, PointCloud, PSingularParams, cdf,
                           cdf_many, cdf_with_bound, gap_intervals,
                           point_cloud, sample, survival)
from .errors import (ConvergenceError, DomainError, ParameterError,
                     ResourceLimitError, SingularMrlError)
from .fixedpoint import (FixedPointResult, fixed_point_closed_form,
                         fixed_point_solve, verify_uniqueness)
from .integration import (IntegralValue, cdf_integral, cdf_integral_many,
                          i1_closed_form, mean)
from .mrl import MrlValue, gmrl, mrl, mrl_at_one_third, mrl_many
from .pricing import (PricingResult, comparative_statics, expected_payoff,
                      optimal_price, payoff_curve)

__all__ = [
    "PSingularParams", "EvalConfig", "PointCloud", "cdf", "cdf_with_bound",
    "cdf_many", "survival", "sample", "point_cloud", "gap_intervals",
    "IntegralValue", "cdf_integral", "cdf_integral_many", "i1_closed_form",
    "mean", "MrlValue", "mrl", "mrl_many", "gmrl", "mrl_at_one_third",
    "FixedPointResult", "fixed_point_closed_form", "fixed_point_solve",
    "verify_uniqueness", "PricingResult", "expected_payoff", "payoff_curve",
    "optimal_price", "comparative_statics", "SingularMrlError", "DomainError",
    "ParameterError", "ResourceLimitError", "ConvergenceError",
]
