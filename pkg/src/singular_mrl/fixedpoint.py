"""Fixed point of the mean residual life function: m(x) = x.

On [1/3, 2/3] the CDF is flat, so m is exactly linear with slope -1 and
g(x) = m(x) - x is strictly decreasing with slope -2; bisection there is
guaranteed to converge.  The closed form

    x* = 1/6 + (5p+4) / (12 (2p+1))

serves as a cross-check, and a grid scan over all of [0, 1] (augmented
with Cantor-gap endpoints) supplies numerical evidence of uniqueness.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .distribution import (DEFAULT_CONFIG, ONE_THIRD, TWO_THIRDS, EvalConfig,
                           PSingularParams, gap_intervals)
from .errors import ConvergenceError, ParameterError
from .mrl import mrl, mrl_many

# grid points closer to the root than this may legitimately have
# sign indistinguishable from zero
ROOT_EXCLUSION_RADIUS = 1e-3


@dataclass(frozen=True)
class FixedPointResult:
    x_star: float
    residual: float
    bracket: tuple[float, float]
    closed_form: float
    sign_changes: int


def fixed_point_closed_form(params: PSingularParams) -> float:
    """x* = 1/6 + (5p+4)/(12(2p+1)); decreasing in p, in (3/8, 1/2)."""
    p = params.p
    return 1.0 / 6.0 + (5.0 * p + 4.0) / (12.0 * (2.0 * p + 1.0))


def fixed_point_solve(params: PSingularParams, config: EvalConfig = DEFAULT_CONFIG,
                      scan_grid_n: int = 1000) -> FixedPointResult:
    """Bisect g(x) = m(x) - x on [1/3, 2/3] to |g| <= config.tolerance.

    Fills `closed_form` for comparison and `sign_changes` from a
    uniqueness scan over [0, 1] with `scan_grid_n` grid points
    (set scan_grid_n=0 to skip the scan; sign_changes is then -1).
    """
    lo, hi = ONE_THIRD, TWO_THIRDS
    g = lambda x: mrl(params, x, config).value - x
    g_lo, g_hi = g(lo), g(hi)
    if not (g_lo > 0.0 > g_hi):
        raise ConvergenceError(
            f"no sign change of m(x) - x on [1/3, 2/3]: g(1/3)={g_lo}, g(2/3)={g_hi}; "
            "the MRL evaluator is inconsistent")
    mid, g_mid = 0.5 * (lo + hi), None
    for _ in range(200):
        mid = 0.5 * (lo + hi)
        g_mid = g(mid)
        if abs(g_mid) <= config.tolerance:
            break
        if g_mid > 0.0:
            lo = mid
        else:
            hi = mid
    else:
        raise ConvergenceError(f"bisection failed to reach |m(x)-x| <= {config.tolerance}")

    if scan_grid_n > 0:
        changes = _sign_change_scan(params, max(scan_grid_n, 100), config, mid)
    else:
        changes = -1
    return FixedPointResult(x_star=mid, residual=g_mid, bracket=(lo, hi),
                            closed_form=fixed_point_closed_form(params),
                            sign_changes=changes)


def verify_uniqueness(params: PSingularParams, grid_n: int,
                      config: EvalConfig = DEFAULT_CONFIG, gap_level: int = 8) -> int:
    """Count sign changes of m(x) - x on a grid over [0, 1].

    The uniform grid is augmented with Cantor-gap endpoints up to
    `gap_level`, where the non-monotone jumps of m occur.  Contract:
    exactly one sign change, with m(x) - x > 0 on [0, 1/3] and < 0 on
    (2/3, 1).  Raises ConvergenceError if either side check fails or if
    an indeterminate sign (|g| below tolerance) appears away from the
    solved root.
    """
    if grid_n < 100:
        raise ParameterError(f"grid_n must be >= 100, got {grid_n}")
    root = fixed_point_solve(params, config, scan_grid_n=0).x_star
    return _sign_change_scan(params, grid_n, config, root, gap_level, strict=True)


def _sign_change_scan(params: PSingularParams, grid_n: int, config: EvalConfig,
                      root: float, gap_level: int = 8, strict: bool = False) -> int:
    grid = np.linspace(0.0, 1.0, grid_n)
    ends = np.array([e for gap in gap_intervals(gap_level) for e in gap])
    xs = np.unique(np.concatenate((grid, ends, [ONE_THIRD, TWO_THIRDS])))
    xs = xs[xs < 1.0]  # m(1) = 0 by definition, not informative for the scan
    g = mrl_many(params, xs, config) - xs

    indeterminate = np.abs(g) < 2.0 * config.tolerance
    stray = indeterminate & (np.abs(xs - root) > ROOT_EXCLUSION_RADIUS)
    if stray.any():
        raise ConvergenceError(
            f"indeterminate sign of m(x) - x away from the root at x = {xs[stray][:5]}")

    if strict:
        left = xs <= ONE_THIRD
        if not (g[left] > 0.0).all():
            raise ConvergenceError("m(x) - x <= 0 somewhere on [0, 1/3]")
        right = (xs > TWO_THIRDS) & ~indeterminate
        if not (g[right] < 0.0).all():
            raise ConvergenceError("m(x) - x >= 0 somewhere on (2/3, 1)")

    signs = np.sign(g[~indeterminate])
    return int(np.count_nonzero(np.diff(signs) != 0))
