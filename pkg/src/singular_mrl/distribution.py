"""CDF, survival function, sampling and point-cloud construction for the
p-singular Cantor-type family.

The family parameter p > 0 splits the mass of each ternary level into a
left share 1/(p+1) (digit 0) and a right share p/(p+1) (digit 2); p = 1
recovers the classical Cantor distribution.  The CDF is pinned down by

    F(x/3)  = F(x) / (p+1)          for x in [0, 1],
    F(1-x)  = 1 - p F(x)            for x in [0, 1/3],

which force F = 1/(p+1) on the whole plateau [1/3, 2/3].  Evaluation
descends this ternary structure, contracting the value uncertainty by
max(1, p)/(p+1) per level until the requested tolerance is met.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction

import numpy as np

from .errors import DomainError, ParameterError, ResourceLimitError

ONE_THIRD = 1.0 / 3.0
TWO_THIRDS = 2.0 / 3.0


@dataclass(frozen=True)
class PSingularParams:
    """Family parameter p > 0 (p = 1 is the classical Cantor distribution)."""

    p: float

    def __post_init__(self):
        if not (isinstance(self.p, (int, float)) and math.isfinite(self.p) and self.p > 0):
            raise ParameterError(f"family parameter p must be a finite positive real, got {self.p!r}")
        object.__setattr__(self, "p", float(self.p))

    @property
    def left_mass(self) -> float:
        return 1.0 / (self.p + 1.0)

    @property
    def right_mass(self) -> float:
        return self.p / (self.p + 1.0)


@dataclass(frozen=True)
class EvalConfig:
    """Tolerance and recursion-depth budget shared by all evaluators."""

    tolerance: float = 1e-10
    max_depth: int = 100_000

    def __post_init__(self):
        if not (math.isfinite(self.tolerance) and self.tolerance > 0):
            raise ParameterError(f"tolerance must be positive, got {self.tolerance!r}")
        if self.max_depth < 1:
            raise ParameterError(f"max_depth must be >= 1, got {self.max_depth!r}")

    def effective_depth(self, params: PSingularParams) -> int:
        """Depth d with (max(1,p)/(p+1))**d <= tolerance, capped at max_depth."""
        q = max(1.0, params.p) / (params.p + 1.0)
        needed = math.ceil(math.log(self.tolerance) / math.log(q))
        return min(self.max_depth, max(needed, 1))


DEFAULT_CONFIG = EvalConfig()


def _check_unit_interval(x: float) -> float:
    if not (0.0 <= x <= 1.0):
        raise DomainError(f"x must lie in [0, 1], got {x!r}")
    return float(x)


def cdf_with_bound(params: PSingularParams, x: float, config: EvalConfig = DEFAULT_CONFIG) -> tuple[float, float]:
    """Evaluate F_p(x) and return (value, achieved error bound).

    Descends the ternary structure via an affine accumulator
    F(x) = a + b * F(y): each left step scales b by 1/(p+1), each right
    step by -p/(p+1), so |b| bounds the remaining value uncertainty.
    Terminates exactly on the plateau or at an endpoint; otherwise stops
    once |b|/2 <= tolerance (or at the depth cap) and returns the
    midpoint of the bracket [min(a, a+b), max(a, a+b)].
    """
    x = _check_unit_interval(x)
    p = params.p
    q = params.left_mass
    r = params.right_mass
    a, b, y = 0.0, 1.0, x
    for _ in range(config.effective_depth(params)):
        if abs(b) <= 2.0 * config.tolerance:
            break
        if y <= 0.0:
            return a, 0.0
        if y >= 1.0:
            return a + b, 0.0
        if ONE_THIRD <= y <= TWO_THIRDS:
            return a + b * q, 0.0
        if y < ONE_THIRD:
            b *= q
            y *= 3.0
        else:
            a += b
            b *= -r
            y = 3.0 * (1.0 - y)
    return a + 0.5 * b, 0.5 * abs(b)


def cdf(params: PSingularParams, x: float, config: EvalConfig = DEFAULT_CONFIG) -> float:
    """F_p(x) with absolute error <= config.tolerance."""
    return cdf_with_bound(params, x, config)[0]


def cdf_many(params: PSingularParams, xs, config: EvalConfig = DEFAULT_CONFIG) -> np.ndarray:
    """Vectorized F_p over an array of points in [0, 1]."""
    return _cdf_array(params, np.asarray(xs, dtype=float), config)[0]


def _cdf_array(params: PSingularParams, xs: np.ndarray, config: EvalConfig) -> tuple[np.ndarray, np.ndarray]:
    if xs.size and (xs.min() < 0.0 or xs.max() > 1.0):
        raise DomainError("all evaluation points must lie in [0, 1]")
    p = params.p
    q = params.left_mass
    r = params.right_mass
    tol2 = 2.0 * config.tolerance

    flat = xs.ravel()
    vals = np.empty(flat.shape, dtype=float)
    bounds = np.zeros(flat.shape, dtype=float)

    idx = np.arange(flat.size)
    a = np.zeros(flat.size)
    b = np.ones(flat.size)
    y = flat.copy()

    for _ in range(config.effective_depth(params)):
        if idx.size == 0:
            break
        small = np.abs(b) <= tol2
        at_zero = ~small & (y <= 0.0)
        at_one = ~small & (y >= 1.0)
        plateau = ~small & ~at_zero & ~at_one & (y >= ONE_THIRD) & (y <= TWO_THIRDS)
        if small.any():
            vals[idx[small]] = a[small] + 0.5 * b[small]
            bounds[idx[small]] = 0.5 * np.abs(b[small])
        if at_zero.any():
            vals[idx[at_zero]] = a[at_zero]
        if at_one.any():
            vals[idx[at_one]] = a[at_one] + b[at_one]
        if plateau.any():
            vals[idx[plateau]] = a[plateau] + b[plateau] * q

        keep = ~(small | at_zero | at_one | plateau)
        if not keep.all():
            idx, a, b, y = idx[keep], a[keep], b[keep], y[keep]
        left = y < ONE_THIRD
        right = ~left
        b[left] *= q
        y[left] *= 3.0
        a[right] += b[right]
        b[right] *= -r
        y[right] = 3.0 * (1.0 - y[right])

    if idx.size:
        vals[idx] = a + 0.5 * b
        bounds[idx] = 0.5 * np.abs(b)
    return vals.reshape(xs.shape), bounds.reshape(xs.shape)


def survival(params: PSingularParams, x: float, config: EvalConfig = DEFAULT_CONFIG) -> float:
    """1 - F_p(x), same absolute-tolerance contract as `cdf`.

    For x >= 1/3 the reflection identity 1 - F(x) = p * F(1-x) is used
    (condition (ii) extended to [1/3, 1]); evaluated multiplicatively it
    keeps full relative accuracy near the right endpoint, where the naive
    difference would cancel catastrophically.
    """
    x = _check_unit_interval(x)
    if x >= ONE_THIRD:
        p = params.p
        z = 1.0 - x
        if x <= TWO_THIRDS:
            # the bare difference can leave the plateau by one ulp, and
            # F is genuinely steep just outside it; snap back
            z = min(max(z, ONE_THIRD), TWO_THIRDS)
        inner = EvalConfig(tolerance=min(config.tolerance, config.tolerance / p),
                           max_depth=config.max_depth)
        return p * cdf(params, z, inner)
    return 1.0 - cdf(params, x, config)


def sample(params: PSingularParams, rng_seed: int, n: int, levels: int = 50) -> np.ndarray:
    """Draw n i.i.d. variates by descending the ternary branching.

    Each level picks the left branch x -> x/3 with probability 1/(p+1)
    (ternary digit 0) or the right branch x -> 1 - x/3 with probability
    p/(p+1) (digit 2); the measure is invariant under this inverted-V
    pair, so the right branch is a *reflected* copy -- the digit
    processes are not independent for p != 1.  After `levels` steps the
    draw is pinned to an interval of width 3^-levels (~1.4e-24 for 50)
    and its midpoint is returned.  Deterministic given the seed.
    """
    if n < 1:
        raise ParameterError(f"n must be >= 1, got {n}")
    rng = np.random.default_rng(rng_seed)
    left = params.left_mass
    a = np.zeros(n)
    s = np.ones(n)
    for _ in range(levels):
        right = rng.random(n) >= left
        a[right] += s[right]
        s = np.where(right, -s, s) / 3.0
    return a + 0.5 * s


@dataclass(frozen=True)
class PointCloud:
    """Sorted (x, F(x)) pairs from the shrink-flip plotting iteration."""

    x: np.ndarray
    F: np.ndarray
    p: float
    iterations: int
    n_initial: int

    def __len__(self) -> int:
        return self.x.size

    @property
    def points(self):
        return list(zip(self.x.tolist(), self.F.tolist()))


def point_cloud(params: PSingularParams, n_initial: int, iterations: int,
                max_points: int = 5_000_000) -> PointCloud:
    """Generate the CDF point cloud by the shrink-flip iteration.

    Initialization: n_initial evenly spaced points on the plateau
    [1/3, 2/3] at height 1/(p+1), plus the endpoints (0,0) and (1,1).
    Each iteration replaces the set S by {x/3} + S + {1 - x/3} with
    heights {F/(p+1)} + {F} + {1 - p F/(p+1)}, then deduplicates
    identical x values.  Raises ResourceLimitError once the cloud
    exceeds `max_points` (the count roughly doubles per iteration).
    """
    if n_initial < 2:
        raise ParameterError(f"n_initial must be >= 2, got {n_initial}")
    if iterations < 0:
        raise ParameterError(f"iterations must be >= 0, got {iterations}")
    p = params.p
    v = params.left_mass
    x = np.concatenate(([0.0], np.linspace(ONE_THIRD, TWO_THIRDS, n_initial), [1.0]))
    F = np.concatenate(([0.0], np.full(n_initial, v), [1.0]))
    for k in range(iterations):
        cx = np.concatenate((x / 3.0, x, 1.0 - x / 3.0))
        cF = np.concatenate((F * v, F, 1.0 - F * (p * v)))
        x, first = np.unique(cx, return_index=True)
        F = cF[first]
        if x.size > max_points:
            raise ResourceLimitError(
                f"point cloud exceeded cap of {max_points} points "
                f"({x.size} after iteration {k + 1} of {iterations})")
    return PointCloud(x=x, F=F, p=p, iterations=iterations, n_initial=n_initial)


def gap_intervals(max_level: int) -> list[tuple[float, float]]:
    """Open middle-third gaps of the Cantor construction up to a level.

    Level 1 is (1/3, 2/3); level k+1 maps each level-k gap (a, b) to
    (a/3, b/3) and ((2+a)/3, (2+b)/3).  Returns all gaps of level
    <= max_level, sorted, as machine floats.
    """
    if max_level < 1:
        raise ParameterError(f"max_level must be >= 1, got {max_level}")
    level = [(Fraction(1, 3), Fraction(2, 3))]
    gaps = list(level)
    for _ in range(max_level - 1):
        level = [g for a, b in level for g in ((a / 3, b / 3), ((2 + a) / 3, (2 + b) / 3))]
        gaps.extend(level)
    gaps.sort()
    return [(float(a), float(b)) for a, b in gaps]
