import math
from fractions import Fraction
from itertools import permutations

import pytest
from hypothesis import given, strategies as st

from maxseg.dss import maximal_segments
from maxseg.errors import InvalidArgument
from maxseg.estimators import (circumcircle_radius, curvature_circumcircle, curvature_profile,
                               error_stats, half_tangents)
from maxseg.lattice import Contour, ShapeSpec, contour_from_rows, digitize_rows
from maxseg.oracle import is_dss_oracle


def disk(m, center=(0, 0)):
    return contour_from_rows(digitize_rows(ShapeSpec.disk(1, center), m))


def test_radius_examples():
    assert circumcircle_radius((0, 1), (1, 0), (-1, 0)) == pytest.approx(1.0, abs=1e-15)
    assert circumcircle_radius((0, 0), (4, 0), (0, 3)) == pytest.approx(2.5, abs=1e-15)
    assert circumcircle_radius((0, 0), (1, 1), (2, 2)) == math.inf


def test_radius_rejects_coincident_points():
    with pytest.raises(InvalidArgument):
        circumcircle_radius((1, 1), (1, 1), (0, 3))


pt = st.tuples(st.integers(-50, 50), st.integers(-50, 50))


@given(pt, pt, pt)
def test_radius_symmetric_and_scaled(p, q, r):
    if len({p, q, r}) < 3:
        return
    base = circumcircle_radius(p, q, r)
    for perm in permutations((p, q, r)):
        other = circumcircle_radius(*perm)
        assert other == base or abs(other - base) <= 1e-12 * base
    scaled = circumcircle_radius(*[(3 * v[0], 3 * v[1]) for v in (p, q, r)])
    if math.isinf(base):
        assert math.isinf(scaled)
    else:
        assert scaled == pytest.approx(3 * base, rel=1e-12)


def test_half_tangents_on_open_run():
    c = Contour((0, 0), "0010010", closed=False)
    assert half_tangents(c, 3) == (0, 7)


def test_half_tangents_against_oracle():
    c = disk(10)
    pts = c.points
    n = len(pts)
    for i in range(n):
        q, r = half_tangents(c, i)
        assert q <= i <= r
        assert is_dss_oracle([pts[k % n] for k in range(q, i + 1)]) is not None
        assert is_dss_oracle([pts[k % n] for k in range(q - 1, i + 1)]) is None
        assert is_dss_oracle([pts[k % n] for k in range(i, r + 1)]) is not None
        assert is_dss_oracle([pts[k % n] for k in range(i, r + 2)]) is None


def test_straight_portion_gives_zero_curvature():
    # on a straight open run the point and both half-tangent ends are collinear
    c = Contour((0, 0), "0001" * 5, closed=False)
    est = curvature_circumcircle(c, 8, 10)  # an upper leaning point
    assert est.kappa_hat == 0.0 and math.isinf(est.radius_grid)


def test_curvature_estimate_scales_with_m():
    c = disk(50)
    est = curvature_circumcircle(c, 7, 50)
    assert est.kappa_hat == pytest.approx(50 / est.radius_grid)
    with pytest.raises(InvalidArgument):
        curvature_circumcircle(c, 7, 0)


def test_profile_matches_direct_estimates():
    c = disk(30, (Fraction(1, 3), Fraction(1, 7)))
    est, lengths = curvature_profile(c, 30)
    for i in range(0, len(c.points), 5):
        assert est[i] == curvature_circumcircle(c, i, 30)
        q, r = half_tangents(c, i)
        assert lengths[i] == r - q


def test_half_tangents_fit_inside_maximal_segments():
    for m in (40, 100, 300):
        c = disk(m)
        n = len(c.points)
        segs = maximal_segments(c)
        spans = [(s.first + t, s.last + t) for s in segs for t in (-n, 0, n)]
        _, lengths = curvature_profile(c, m, segs)
        for i in range(n):
            q, r = half_tangents(c, i)
            assert any(a <= q and i <= b for a, b in spans)
            assert any(a <= i and r <= b for a, b in spans)
            assert lengths[i] == r - q <= 2 * max(s.length for s in segs)


def test_exact_estimator_has_zero_error():
    c = disk(20)
    est, _ = curvature_profile(c, 20)
    stats = error_stats(c, 20, lambda x, y: 0.0, est)
    assert stats.mean_abs_err > 0
    shifted = [type(e)(e.index, 1.0, e.radius_grid) for e in est]
    stats = error_stats(c, 20, lambda x, y: 1.0, shifted)
    assert (stats.mean_abs_err, stats.std_abs_err) == (0.0, 0.0)


def test_error_is_deterministic_and_moderate_at_m100():
    c = disk(100)
    a = error_stats(c, 100, ShapeSpec.disk(1).curvature_at)
    b = error_stats(c, 100, ShapeSpec.disk(1).curvature_at)
    assert a == b
    assert 0.0 < a.mean_abs_err < 1.0


def test_ellipse_true_curvature():
    e = ShapeSpec.ellipse(1, 0.6)
    assert e.curvature_at(1.0, 0.0) == pytest.approx(1 / 0.36)
    assert e.curvature_at(0.0, 0.6) == pytest.approx(0.6 / 1.0)
    assert e.curvature_at(2.0, 0.0) == pytest.approx(1 / 0.36)
