"""Half-tangents and curvature by circumcircle on closed contours."""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Callable, Optional, Sequence

import numpy as np

from .dss import MaximalSegment, back, front, fronts_and_backs, maximal_segments
from .errors import InvalidArgument
from .lattice import Contour


def half_tangents(contour: Contour, i: int) -> tuple[int, int]:
    """(back(i), front(i)); on closed contours both are unwrapped indices."""
    return back(contour, i), front(contour, i)


def circumcircle_radius(p, q, r) -> float:
    """Radius of the circle through three integer points; ``inf`` if collinear."""
    p, q, r = [(int(v[0]), int(v[1])) for v in (p, q, r)]
    if p == q or q == r or r == p:
        raise InvalidArgument("circumcircle needs three distinct points")
    cross = (q[0] - p[0]) * (r[1] - p[1]) - (q[1] - p[1]) * (r[0] - p[0])
    if cross == 0:
        return math.inf
    d_pq = (q[0] - p[0]) ** 2 + (q[1] - p[1]) ** 2
    d_qr = (r[0] - q[0]) ** 2 + (r[1] - q[1]) ** 2
    d_rp = (p[0] - r[0]) ** 2 + (p[1] - r[1]) ** 2
    # R = |pq| |qr| |rp| / (2 |cross|), one root of an exact integer product
    return math.sqrt(d_pq * d_qr * d_rp) / (2 * abs(cross))


@dataclass(frozen=True)
class CurvatureEstimate:
    index: int
    kappa_hat: float
    radius_grid: float


def _estimate(contour: Contour, i: int, q: int, r: int, m: int) -> CurvatureEstimate:
    radius = circumcircle_radius(contour.point(i), contour.point(q), contour.point(r))
    kappa = 0.0 if math.isinf(radius) else m / radius
    return CurvatureEstimate(i, kappa, radius)


def curvature_circumcircle(contour: Contour, i: int, m: int) -> CurvatureEstimate:
    if m < 1:
        raise InvalidArgument("resolution must be >= 1")
    q, r = half_tangents(contour, i)
    return _estimate(contour, i, q, r, m)


@dataclass(frozen=True)
class ErrorStats:
    mean_abs_err: float
    std_abs_err: float
    m: int


def curvature_profile(contour: Contour, m: int,
                      segments: Optional[Sequence[MaximalSegment]] = None):
    """Estimates at every index and the half-tangent L1-lengths front(i) - back(i).

    Fronts and backs are read off the maximal segments instead of being
    recognized point by point.
    """
    if segments is None:
        segments = maximal_segments(contour)
    fronts, backs = fronts_and_backs(contour, segments)
    estimates = [_estimate(contour, i, backs[i], fronts[i], m)
                 for i in range(len(contour.points))]
    lengths = [f - b for f, b in zip(fronts, backs)]
    return estimates, lengths


def grid_to_shape(p, m: int) -> tuple[float, float]:
    """Shape-space position of a pointel at resolution m."""
    return ((p[0] - 0.5) / m, (p[1] - 0.5) / m)


def error_stats(contour: Contour, m: int, true_curvature: Callable[[float, float], float],
                estimates: Optional[Sequence[CurvatureEstimate]] = None) -> ErrorStats:
    """Mean and population std of |kappa_hat - kappa| over all contour points.

    ``true_curvature`` takes shape-space coordinates.
    """
    if estimates is None:
        estimates, _ = curvature_profile(contour, m)
    pts = contour.points
    err = np.array([abs(e.kappa_hat - true_curvature(*grid_to_shape(pts[e.index], m)))
                    for e in estimates], dtype=float)
    return ErrorStats(float(err.mean()), float(err.std()), m)
