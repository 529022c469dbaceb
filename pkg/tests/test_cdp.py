from fractions import Fraction
from itertools import product
from types import SimpleNamespace

import pytest

from maxseg.cdp import (CheckReport, DigitalEdge, SupportingEdgePair, analyze, cdp_stats,
                        check_edge_patterns, check_labeling, check_lemma1, check_prop4,
                        check_prop5, check_thm2, convex_hull, edge_pattern_decomposition,
                        is_cdp, label_vertices, lone_vertex_segments, match_supporting_edges,
                        rows_are_cdp)
from maxseg.dss import maximal_segments
from maxseg.errors import InvalidArgument
from maxseg.lattice import ShapeSpec, contour_from_rows, digitize, digitize_rows, trace_contour
from maxseg.patterns import max_edges_bound

CENTERS = [(0, 0), (Fraction(1, 3), Fraction(1, 7))]


def brute_is_cdp(pts):
    """Direct test: every lattice point in the hull's bounding box is in the set iff inside."""
    hull = convex_hull(pts)
    vs = hull.vertices
    xs = [p[0] for p in pts]
    ys = [p[1] for p in pts]

    def inside(q):
        if len(vs) == 1:
            return q == vs[0]
        if len(vs) == 2:
            (x1, y1), (x2, y2) = vs
            cross = (x2 - x1) * (q[1] - y1) - (y2 - y1) * (q[0] - x1)
            return cross == 0 and min(x1, x2) <= q[0] <= max(x1, x2) \
                and min(y1, y2) <= q[1] <= max(y1, y2)
        return all((b[0] - a[0]) * (q[1] - a[1]) - (b[1] - a[1]) * (q[0] - a[0]) >= 0
                   for a, b in zip(vs, vs[1:] + vs[:1]))

    box = product(range(min(xs), max(xs) + 1), range(min(ys), max(ys) + 1))
    return {q for q in box if inside(q)} == set(pts)


def rotate_to(seq, first):
    k = seq.index(first)
    return seq[k:] + seq[:k]


def analysis_for(shape, m):
    c = contour_from_rows(digitize_rows(shape, m))
    return analyze(c, maximal_segments(c))


def test_plus_shape_hull():
    hull = convex_hull({(0, 0), (1, 0), (-1, 0), (0, 1), (0, -1)})
    assert rotate_to(list(hull.vertices), (1, 0)) == [(1, 0), (0, 1), (-1, 0), (0, -1)]
    assert not hull.degenerate


def test_square_hull():
    hull = convex_hull({(0, 0), (1, 0), (0, 1), (1, 1)})
    assert sorted(hull.vertices) == [(0, 0), (0, 1), (1, 0), (1, 1)]


def test_degenerate_hulls():
    assert convex_hull({(2, 3)}).degenerate
    h = convex_hull({(0, 0), (1, 1), (2, 2)})
    assert h.degenerate and sorted(h.vertices) == [(0, 0), (2, 2)]
    with pytest.raises(InvalidArgument):
        convex_hull(set())


def test_is_cdp_examples():
    assert is_cdp(digitize(ShapeSpec.disk(1), 10))
    assert not is_cdp({(1, 0), (-1, 0), (0, 1), (0, -1)})
    assert is_cdp({(5, -2)})
    assert is_cdp({(0, 0), (1, 1), (2, 2)})
    assert not is_cdp({(0, 0), (2, 2)})
    assert not is_cdp({(0, 0), (1, 0), (3, 0)})


@pytest.mark.parametrize("seed", range(40))
def test_is_cdp_matches_brute_force(seed):
    import random

    rng = random.Random(seed)
    pts = {(rng.randint(0, 5), rng.randint(0, 4)) for _ in range(rng.randint(1, 14))}
    assert is_cdp(pts) == brute_is_cdp(pts)
    # filling the hull always gives a convex digital polygon
    filled = set(pts)
    for q in product(range(6), range(5)):
        if q not in filled and not brute_is_cdp(filled) and brute_is_cdp(filled | {q}):
            filled.add(q)
    assert is_cdp(filled) == brute_is_cdp(filled)


@pytest.mark.parametrize("center", CENTERS)
@pytest.mark.parametrize("m", [3, 10, 47, 128])
def test_digitized_shapes_are_cdp(center, m):
    for shape in (ShapeSpec.disk(1, center), ShapeSpec.ellipse(1, 0.6, center)):
        pts = digitize(shape, m)
        assert is_cdp(pts)
        assert rows_are_cdp(digitize_rows(shape, m))
        if m <= 47:
            assert brute_is_cdp(pts)


@pytest.mark.parametrize("d,slope,f", [
    ((10, 6), (3, 5), 2), ((5, 3), (3, 5), 1), ((4, 0), (0, 1), 4),
    ((-6, 10), (3, 5), 2), ((0, -7), (0, 1), 7),
])
def test_edge_pattern_decomposition(d, slope, f):
    assert edge_pattern_decomposition(d) == (slope, f)


def test_edge_pattern_decomposition_rejects_zero():
    with pytest.raises(InvalidArgument):
        edge_pattern_decomposition((0, 0))


@pytest.mark.parametrize("center", CENTERS)
@pytest.mark.parametrize("m", [7, 20, 55])
def test_edges_are_pattern_powers(center, m):
    for shape in (ShapeSpec.disk(1, center), ShapeSpec.ellipse(1, 0.6, center)):
        an = analysis_for(shape, m)
        rep = check_edge_patterns(an)
        assert rep.ok and rep.checked == len(an.edges)
        assert sum(e.last - e.first for e in an.edges) == an.n


def test_supporting_edges_disk_20():
    an = analysis_for(ShapeSpec.disk(1), 20)
    pairs = match_supporting_edges(an)
    paired = {p.segment for p in pairs}
    for s, outer in enumerate(an.outer):
        assert (len(outer) >= 2) == (s in paired)
    edges = [p.edge for p in pairs]
    assert len(edges) == len(set(edges))
    for p in pairs:
        e = an.edges[p.edge]
        seg = an.segments[p.segment]
        line = seg.witness.line
        assert (an.outer[p.segment][0] - e.first) % an.n == 0
        assert an.outer[p.segment][-1] - an.outer[p.segment][0] == e.last - e.first
        d = (e.end[0] - e.start[0], e.end[1] - e.start[1])
        assert d[0] * line.a == d[1] * line.b


def test_lone_leaning_point_is_a_vertex():
    for m in (20, 33, 61):
        an = analysis_for(ShapeSpec.disk(1, CENTERS[1]), m)
        singles = [s for s, o in enumerate(an.outer) if len(o) == 1]
        found = lone_vertex_segments(an)
        assert [s for s, _ in found] == singles
        for s, k in found:
            assert an.vertex_index[k] == an.outer[s][0] % an.n


@pytest.mark.parametrize("m", [20, 50, 100])
def test_labeling(m):
    an = analysis_for(ShapeSpec.disk(1), m)
    pairs = match_supporting_edges(an)
    lab = label_vertices(an, pairs)
    n_e = len(an.edges)
    assert sum(lab.counts) == n_e
    assert sum(lab.pair_counts.values()) == n_e
    for p in pairs:
        assert lab.labels[p.edge] == 2 and lab.labels[(p.edge + 1) % n_e] == 2
    assert lab.n2 <= 2 * lab.nij(2, 2)
    assert lab.n1 + 2 * lab.nij(2, 2) >= 1
    bound, _ = max_edges_bound(an.grid_size)
    assert lab.nij(0, 0) <= (lab.n1 + lab.n2) * bound
    assert check_labeling(an, lab).ok


@pytest.mark.parametrize("ms,ok", [(8, True), (22, True), (23, False), (7, False)])
def test_prop4_bound_for_single_pattern(ms, ok):
    edge = DigitalEdge((0, 0), (5, 3), (3, 5), 1, 0, 8)
    an = SimpleNamespace(edges=[edge], segments=[SimpleNamespace(length=ms)])
    assert check_prop4(an, SupportingEdgePair(0, 0)).ok == ok


def test_prop5_report_is_vacuous_without_segments():
    rep = CheckReport("prop5")
    assert rep.ok and rep.checked == 0


@pytest.mark.parametrize("center", CENTERS)
def test_theorem_checks_on_a_sweep(center):
    for shape in (ShapeSpec.disk(1, center), ShapeSpec.ellipse(1, 0.6, center)):
        for m in range(10, 121, 10):
            an = analysis_for(shape, m)
            pairs = match_supporting_edges(an)
            assert check_lemma1(an).ok
            for p in pairs:
                assert check_prop4(an, p).ok
                assert check_thm2(an, p).ok
            for s, k in lone_vertex_segments(an):
                assert check_prop5(an, s, k).ok


def test_square_stats():
    side = 6
    c = trace_contour({(x, y) for x in range(side) for y in range(side)})
    an = analyze(c, maximal_segments(c))
    lab = label_vertices(an, match_supporting_edges(an))
    stats = cdp_stats(an, lab)
    assert stats.n_e == 4 and stats.per_l1 == 4 * side
    # each maximal segment is a side plus one turn, so no side is a supporting edge
    assert lab.counts == (0, 4, 0)
    assert stats.thm3_lhs == 4


def test_stats_disk_100():
    an = analysis_for(ShapeSpec.disk(1), 100)
    lab = label_vertices(an, match_supporting_edges(an))
    stats = cdp_stats(an, lab)
    assert stats.per_l1 == an.n
    assert stats.ms_len_min <= stats.ms_len_mean <= stats.ms_len_max
    assert stats.ms_len_min * (stats.n_1 + 2 * stats.n_22) <= 8 * stats.per_l1
    assert stats.thm4_ratio == pytest.approx(stats.ms_len_min * stats.n_e / stats.per_l1)
