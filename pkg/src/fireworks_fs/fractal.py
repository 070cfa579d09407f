"""Box-counting fractal dimension of a point cloud, squared-count variant.

The estimate is the OLS slope of ln(sum of squared cell counts) against
ln(r) over a dyadic grid of lattice radii, fitted on the contiguous scale
window with the best R². The ceiling of the estimate serves as a feature
cardinality budget; `reduction_rate` expresses it as a percentage of
dimensions removed.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from fireworks_fs import _kernels
from fireworks_fs.data import apply_min_max, fit_min_max

__all__ = [
    "DEFAULT_MIN_WINDOW",
    "FDEstimate",
    "ScaleGrid",
    "box_log_sum",
    "estimate_fd",
    "reduction_rate",
]

DEFAULT_MIN_WINDOW = 4


@dataclass(frozen=True)
class ScaleGrid:
    """Descending lattice radii applied to unit-hypercube data."""

    scales: tuple[float, ...]

    def __post_init__(self):
        scales = tuple(float(r) for r in self.scales)
        object.__setattr__(self, "scales", scales)
        if len(scales) < 6:
            raise ValueError("need at least 6 scales")
        for r in scales:
            if not 0.0 < r <= 1.0:
                raise ValueError(f"scale {r} outside (0, 1]")
        if any(a <= b for a, b in zip(scales, scales[1:])):
            raise ValueError("scales must be strictly descending")

    def __len__(self) -> int:
        return len(self.scales)

    @classmethod
    def dyadic(cls, k_min: int = 1, k_max: int = 10) -> "ScaleGrid":
        """Radii 2^-k for k = k_min..k_max."""
        return cls(tuple(2.0**-k for k in range(k_min, k_max + 1)))


@dataclass(frozen=True)
class FDEstimate:
    fd: float
    window: tuple[float, float]
    r_squared: float
    cardinality: int
    degenerate: bool = False


def _as_point_matrix(points) -> np.ndarray:
    points = np.asarray(points, dtype=np.float64)
    if points.ndim != 2 or points.shape[0] < 1 or points.shape[1] < 1:
        raise ValueError("need a non-empty N x d point matrix")
    if not np.all(np.isfinite(points)):
        raise ValueError("points contain non-finite values")
    return points


def box_log_sum(points, r: float) -> float:
    """ln of the sum of squared occupancy counts on a lattice of side r.

    Points must already lie in the unit hypercube; a coordinate of exactly
    1.0 is clamped into the last cell.
    """
    points = _as_point_matrix(points)
    if not 0.0 < r <= 1.0:
        raise ValueError(f"scale {r} outside (0, 1]")
    return math.log(_kernels.box_sum_sq(np.ascontiguousarray(points), float(r)))


def _ols(x: np.ndarray, y: np.ndarray) -> tuple[float, float]:
    """Slope and R²; a constant y is a perfect zero-slope fit."""
    # an exact min==max test, since mean-centering identical values can
    # leave ulp-sized residuals that make var_y spuriously positive
    if float(y.min()) == float(y.max()):
        return 0.0, 1.0
    xm = x - x.mean()
    ym = y - y.mean()
    var_x = float(xm @ xm)
    var_y = float(ym @ ym)
    cov = float(xm @ ym)
    if var_y == 0.0:
        return 0.0, 1.0
    slope = cov / var_x
    return slope, cov * cov / (var_x * var_y)


def estimate_fd(points, grid: ScaleGrid | None = None,
                min_window: int = DEFAULT_MIN_WINDOW) -> FDEstimate:
    """Fractal dimension of raw points, normalized to [0,1]^d internally.

    Fits every contiguous window of at least min_window scales and keeps
    the one with the highest R²; ties prefer the widest window, then the
    smallest low radius.
    """
    points = _as_point_matrix(points)
    if grid is None:
        grid = ScaleGrid.dyadic()
    if min_window < 4:
        raise ValueError("min_window must be at least 4")
    if min_window > len(grid):
        raise ValueError("min_window exceeds the number of scales")

    unit = apply_min_max(points, fit_min_max(points))
    unit = np.ascontiguousarray(unit)
    n = points.shape[0]
    sums = [_kernels.box_sum_sq(unit, r) for r in grid.scales]
    log_r = np.log(np.asarray(grid.scales))
    log_s = np.log(np.asarray(sums, dtype=np.float64))
    degenerate = all(s == n * n for s in sums)

    best = None
    m = len(grid)
    for width in range(min_window, m + 1):
        for start in range(0, m - width + 1):
            stop = start + width
            slope, r_sq = _ols(log_r[start:stop], log_s[start:stop])
            r_low = grid.scales[stop - 1]
            key = (r_sq, width, -r_low)
            if best is None or key > best[0]:
                best = (key, slope, r_sq, (r_low, grid.scales[start]))

    _, slope, r_sq, window = best
    fd = max(slope, 0.0)
    return FDEstimate(
        fd=fd,
        window=window,
        r_squared=r_sq,
        cardinality=math.ceil(fd),
        degenerate=degenerate,
    )


def reduction_rate(d: int, cardinality: int) -> float:
    """Percentage of dimensions removed when keeping `cardinality` of d."""
    if not 1 <= cardinality <= d:
        raise ValueError(f"cardinality {cardinality} outside [1, {d}]")
    return (d - cardinality) / d * 100.0
