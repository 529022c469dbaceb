"""Convex digital polygons and how their edges relate to maximal segments.

The polygon analysed for a contour is the lattice set enclosed by the
contour's own pointels, so every hull vertex is a contour point and every
digital edge is a run of contour moves.  On a counterclockwise contour the
convex side of a segment is its right-hand side, i.e. the side of the
*lower* leaning points of the traversal-oriented line (see
:mod:`maxseg.dss`).  Below, "outer leaning points" means the leaning points
on the convex side; these play the role of the upper leaning points of a
digital edge.
"""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass, field
from math import gcd
from typing import Iterable, Optional, Sequence

from .dss import MaximalSegment
from .errors import CheckViolation, InvalidArgument
from .lattice import Contour, octant_normalize
from .patterns import cf_decompose, max_edges_bound, pattern


def _cross(o, a, b) -> int:
    return (a[0] - o[0]) * (b[1] - o[1]) - (a[1] - o[1]) * (b[0] - o[0])


@dataclass(frozen=True)
class Cdp:
    vertices: tuple[tuple[int, int], ...]
    degenerate: bool = False

    @property
    def n_e(self) -> int:
        return len(self.vertices)


def convex_hull(points: Iterable) -> Cdp:
    """Counterclockwise hull vertices (monotone chain, collinear points dropped)."""
    pts = sorted({(int(p[0]), int(p[1])) for p in points})
    if not pts:
        raise InvalidArgument("hull of an empty set")
    if len(pts) == 1:
        return Cdp((pts[0],), degenerate=True)
    lower, upper = [], []
    for p in pts:
        while len(lower) >= 2 and _cross(lower[-2], lower[-1], p) <= 0:
            lower.pop()
        lower.append(p)
    for p in reversed(pts):
        while len(upper) >= 2 and _cross(upper[-2], upper[-1], p) <= 0:
            upper.pop()
        upper.append(p)
    hull = lower[:-1] + upper[:-1]
    if len(hull) <= 2:
        return Cdp(tuple(hull), degenerate=True)
    return Cdp(tuple(hull))


def _row_ranges(vertices) -> dict[int, tuple[int, int]]:
    """Integer x-range of every row inside a counterclockwise polygon (exact)."""
    n = len(vertices)
    if n == 1:
        x, y = vertices[0]
        return {y: (x, x)}
    if n == 2:
        (x1, y1), (x2, y2) = vertices
        g = gcd(x2 - x1, y2 - y1)
        sx, sy = (x2 - x1) // g, (y2 - y1) // g
        out = {}
        for t in range(g + 1):
            x, y = x1 + t * sx, y1 + t * sy
            a, b = out.get(y, (x, x))
            out[y] = (min(a, x), max(b, x))
        return out
    left, right = {}, {}
    for k in range(n):
        (x1, y1), (x2, y2) = vertices[k], vertices[(k + 1) % n]
        if y1 == y2:
            a, b = min(x1, x2), max(x1, x2)
            left[y1] = min(left.get(y1, a), a)
            right[y1] = max(right.get(y1, b), b)
            continue
        dy = y2 - y1
        for y in range(min(y1, y2), max(y1, y2) + 1):
            num = (y - y1) * (x2 - x1)
            if dy > 0:  # rising edge: right boundary, round down
                xr = x1 + num // dy
                right[y] = max(right.get(y, xr), xr)
            else:  # falling edge: left boundary, round up
                xl = x1 - ((-num) // dy)
                left[y] = min(left.get(y, xl), xl)
    return {y: (left[y], right[y]) for y in left if y in right and left[y] <= right[y]}


def is_cdp(points: Iterable) -> bool:
    """True iff the set equals the lattice points of its convex hull."""
    pts = {(int(p[0]), int(p[1])) for p in points}
    if not pts:
        raise InvalidArgument("empty set")
    rows = {}
    for x, y in pts:
        rows.setdefault(y, []).append(x)
    spans = {}
    for y, xs in rows.items():
        lo, hi = min(xs), max(xs)
        if hi - lo + 1 != len(xs):
            return False
        spans[y] = (lo, hi)
    return rows_are_cdp(spans)


def rows_are_cdp(rows: dict[int, tuple[int, int]]) -> bool:
    """Same as :func:`is_cdp` for a set given by its (interval) row spans."""
    ends = [(lo, y) for y, (lo, hi) in rows.items()] + [(hi, y) for y, (lo, hi) in rows.items()]
    hull = convex_hull(ends)
    return _row_ranges(hull.vertices) == rows


# --- digital edges ---------------------------------------------------------------

def edge_pattern_decomposition(displacement) -> tuple[tuple[int, int], int]:
    """Reduced first-octant slope (a, b) and multiplicity f of an edge vector."""
    _, (nx, ny) = octant_normalize((0, 0), displacement)
    f = gcd(nx, ny)
    return (ny // f, nx // f), f


@dataclass(frozen=True)
class DigitalEdge:
    start: tuple[int, int]
    end: tuple[int, int]
    slope: tuple[int, int]
    f: int
    first: int  # contour index of start
    last: int  # unwrapped contour index of end

    @property
    def l1_length(self) -> int:
        return self.f * (self.slope[0] + self.slope[1])


def normalized_edge_word(moves: str, displacement) -> str:
    """Edge moves mapped to the first octant and read between upper leaning points."""
    sym, _ = octant_normalize((0, 0), displacement)
    table = {str(c): "0" if sym.map_code(c) == 0 else ("1" if sym.map_code(c) == 1 else "?")
             for c in range(4)}
    word = "".join(table[c] for c in moves)
    if sym.det > 0:
        # orientation kept: the interior is on the left, so the vertices are
        # lower leaning points and the forward word is the reversed pattern
        word = word[::-1]
    return word


@dataclass(frozen=True)
class SupportingEdgePair:
    edge: int  # edge index k (from vertex k to vertex k+1)
    segment: int  # index into the analysis' segment list


@dataclass
class CheckReport:
    name: str
    checked: int = 0
    violations: list = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return not self.violations

    def fail(self, detail):
        self.violations.append(detail)

    def raise_if_failed(self, m=None):
        if self.violations:
            raise CheckViolation(self.name, self.violations[0], m)


@dataclass
class CdpAnalysis:
    """A closed contour, its maximal segments and the polygon of its pointels."""

    contour: Contour
    segments: list[MaximalSegment]
    cdp: Cdp
    vertex_index: list[int]  # contour index of each vertex, increasing
    edges: list[DigitalEdge]
    outer: list[list[int]]  # outer leaning point indices (unwrapped) per segment
    inner_count: list[int]

    @property
    def n(self) -> int:
        return len(self.contour.points)

    @property
    def grid_size(self) -> int:
        pts = self.contour.points
        xs = [p[0] for p in pts]
        ys = [p[1] for p in pts]
        return max(max(xs) - min(xs), max(ys) - min(ys)) + 1

    @property
    def perimeter(self) -> int:
        return sum(e.l1_length for e in self.edges)

    def edge_of_vertex(self, index: int) -> Optional[int]:
        """Vertex number whose contour index is ``index`` (mod N), or None."""
        return self._vertex_at.get(index % self.n)

    def __post_init__(self):
        self._vertex_at = {v: k for k, v in enumerate(self.vertex_index)}


def analyze(contour: Contour, segments: Sequence[MaximalSegment]) -> CdpAnalysis:
    pts = contour.points
    n = len(pts)
    hull = convex_hull(pts)
    if hull.degenerate:
        raise InvalidArgument("contour pointels are collinear")
    pos = {p: k for k, p in enumerate(pts)}
    vidx = sorted(pos[v] for v in hull.vertices)
    edges = []
    for k, v in enumerate(vidx):
        w = vidx[(k + 1) % len(vidx)]
        last = w if w > v else w + n
        d = (pts[w][0] - pts[v][0], pts[w][1] - pts[v][1])
        slope, f = edge_pattern_decomposition(d)
        edges.append(DigitalEdge(pts[v], pts[w], slope, f, v, last))

    ccw = contour.signed_area2() > 0
    outer, inner_count = [], []
    for seg in segments:
        line = seg.witness.line
        w = line.thickness
        out_r = line.mu + w - 1 if ccw else line.mu
        in_r = line.mu if ccw else line.mu + w - 1
        a, b = line.a, line.b
        o, c = [], 0
        for k in range(seg.first, seg.last + 1):
            x, y = pts[k % n]
            r = a * x - b * y
            if r == out_r:
                o.append(k)
            if r == in_r:
                c += 1
        outer.append(o)
        inner_count.append(c)
    return CdpAnalysis(contour, list(segments), Cdp(tuple(pts[v] for v in vidx)),
                       vidx, edges, outer, inner_count)


def check_edge_patterns(analysis: CdpAnalysis) -> CheckReport:
    """Every digital edge is its slope's pattern repeated f times."""
    rep = CheckReport("prop3")
    moves = analysis.contour.moves * 2
    for k, e in enumerate(analysis.edges):
        rep.checked += 1
        d = (e.end[0] - e.start[0], e.end[1] - e.start[1])
        word = normalized_edge_word(moves[e.first:e.last], d)
        a, b = e.slope
        if word != pattern(a, b) * e.f:
            rep.fail(f"edge {k} {e.start}->{e.end}: {word} is not pattern({a},{b})^{e.f}")
    return rep


def match_supporting_edges(analysis: CdpAnalysis) -> list[SupportingEdgePair]:
    """Pairs (supporting edge, its maximal segment); raises if the structure is broken."""
    n = analysis.n
    pts = analysis.contour.points
    pairs = []
    used = {}
    for s, (seg, outer) in enumerate(zip(analysis.segments, analysis.outer)):
        if len(outer) == 1:
            if analysis.edge_of_vertex(outer[0]) is None:
                raise CheckViolation("cdp", f"segment {s}: lone outer leaning point "
                                            f"{pts[outer[0] % n]} is not a vertex")
            if analysis.inner_count[s] >= 3:
                raise CheckViolation("cdp", f"segment {s}: 3+ inner leaning points "
                                            f"without a supporting edge")
            continue
        i1, i2 = outer[0], outer[-1]
        k = analysis.edge_of_vertex(i1)
        edge = analysis.edges[k] if k is not None else None
        if edge is None or edge.last - edge.first != i2 - i1:
            raise CheckViolation("cdp", f"segment {s}: outer leaning points "
                                        f"{pts[i1 % n]}..{pts[i2 % n]} are not an edge")
        line = analysis.segments[s].witness.line
        d = (edge.end[0] - edge.start[0], edge.end[1] - edge.start[1])
        g = gcd(*d)
        if (d[0] // g, d[1] // g) != (line.b, line.a):
            raise CheckViolation("cdp", f"segment {s}: slope differs from edge {k}")
        if k in used:
            raise CheckViolation("cdp", f"edge {k} supports segments {used[k]} and {s}")
        used[k] = s
        pairs.append(SupportingEdgePair(k, s))
    # a supporting edge lies in no other maximal segment
    for pair in pairs:
        e = analysis.edges[pair.edge]
        holders = [t for t, seg in enumerate(analysis.segments)
                   if _contains(seg.first, seg.last, e.first, e.last, n)]
        if holders != [pair.segment]:
            raise CheckViolation("cdp", f"edge {pair.edge} is inside segments {holders}")
    return pairs


def _contains(s, e, a, b, n) -> bool:
    """Whether cyclic index range [a, b] lies inside [s, e]."""
    for shift in (-n, 0, n):
        if s <= a + shift and b + shift <= e:
            return True
    return False


@dataclass(frozen=True)
class VertexLabeling:
    labels: tuple[int, ...]
    counts: tuple[int, int, int]  # n_0, n_1, n_2
    pair_counts: dict  # (i, j) -> n_ij

    @property
    def n0(self):
        return self.counts[0]

    @property
    def n1(self):
        return self.counts[1]

    @property
    def n2(self):
        return self.counts[2]

    def nij(self, i, j) -> int:
        return self.pair_counts.get((i, j), 0)


def label_vertices(analysis: CdpAnalysis, pairs: Sequence[SupportingEdgePair]) -> VertexLabeling:
    """2-vertices end supporting edges; 1-vertices are other outer leaning points of segments."""
    n_e = len(analysis.edges)
    labels = [0] * n_e
    for outer in analysis.outer:
        for idx in outer:
            k = analysis.edge_of_vertex(idx)
            if k is not None:
                labels[k] = 1
    for pair in pairs:
        labels[pair.edge] = 2
        labels[(pair.edge + 1) % n_e] = 2
    counts = Counter(labels)
    pair_counts = Counter((labels[k], labels[(k + 1) % n_e]) for k in range(n_e))
    return VertexLabeling(tuple(labels), (counts[0], counts[1], counts[2]), dict(pair_counts))


# --- inequality checks ------------------------------------------------------------

def check_prop4(analysis: CdpAnalysis, pair: SupportingEdgePair,
                report: Optional[CheckReport] = None) -> CheckReport:
    """L1(edge) <= L1(MS) <= (f+2)/f L1(edge) - 2 and L1(MS) <= 3 L1(edge)."""
    rep = report or CheckReport("prop4")
    e = analysis.edges[pair.edge]
    ms = analysis.segments[pair.segment].length
    le, f = e.l1_length, e.f
    rep.checked += 1
    if not (le <= ms and f * ms <= (f + 2) * le - 2 * f and ms <= 3 * le):
        rep.fail(f"edge {pair.edge} (L1={le}, f={f}) vs segment L1={ms}")
    return rep


def lone_vertex_segments(analysis: CdpAnalysis) -> list[tuple[int, int]]:
    """(segment index, vertex number) for segments with a single outer leaning point."""
    out = []
    for s, outer in enumerate(analysis.outer):
        if len(outer) == 1:
            k = analysis.edge_of_vertex(outer[0])
            if k is not None:
                out.append((s, k))
    return out


def check_prop5(analysis: CdpAnalysis, segment: int, vertex: int,
                report: Optional[CheckReport] = None) -> CheckReport:
    """L1(MS) <= 4 (L1(V_{k-1} V_k) + L1(V_k V_{k+1})) for a lone-vertex segment."""
    rep = report or CheckReport("prop5")
    n_e = len(analysis.edges)
    before = analysis.edges[(vertex - 1) % n_e].l1_length
    after = analysis.edges[vertex].l1_length
    ms = analysis.segments[segment].length
    rep.checked += 1
    if ms > 4 * (before + after):
        rep.fail(f"segment {segment} L1={ms} > 4*({before}+{after}) at vertex {vertex}")
    return rep


def edges_beside(analysis: CdpAnalysis, pair: SupportingEdgePair) -> tuple[int, int]:
    """Numbers of other edges sharing at least one move with the segment, left and right."""
    n = analysis.n
    seg = analysis.segments[pair.segment]
    sup = analysis.edges[pair.edge]
    # unwrap the supporting edge into the segment's index window
    shift = 0
    while sup.first + shift < seg.first:
        shift += n
    while sup.first + shift > seg.first + n:
        shift -= n
    s0, s1 = sup.first + shift, sup.last + shift
    left = right = 0
    for k, e in enumerate(analysis.edges):
        if k == pair.edge:
            continue
        for t in (-n, 0, n):
            a, b = e.first + t, e.last + t
            if a < seg.last and b > seg.first:
                if b <= s0:
                    left += 1
                elif a >= s1:
                    right += 1
                break
    return left, right


def check_thm2(analysis: CdpAnalysis, pair: SupportingEdgePair,
               report: Optional[CheckReport] = None) -> CheckReport:
    """At most n other edges on each side, n the complexity of the edge slope (n >= 2)."""
    rep = report or CheckReport("thm2")
    a, b = analysis.edges[pair.edge].slope
    n = cf_decompose(a, b).complexity
    if n < 2:
        return rep
    bound, _ = max_edges_bound(analysis.grid_size)
    left, right = edges_beside(analysis, pair)
    rep.checked += 1
    if left > n or right > n:
        rep.fail(f"edge {pair.edge} slope {a}/{b} (n={n}): {left} left, {right} right")
    if left > bound or right > bound:
        rep.fail(f"edge {pair.edge}: {left}/{right} edges beside exceed Pell bound {bound}")
    return rep


def check_lemma1(analysis: CdpAnalysis) -> CheckReport:
    """No maximal segment lies strictly inside a digital edge."""
    rep = CheckReport("lemma1")
    n = analysis.n
    for s, seg in enumerate(analysis.segments):
        rep.checked += 1
        for k, e in enumerate(analysis.edges):
            if _contains(e.first, e.last, seg.first, seg.last, n) and \
                    (seg.first % n, seg.length) != (e.first % n, e.last - e.first):
                rep.fail(f"segment {s} [{seg.first},{seg.last}] inside edge {k}")
                break
    return rep


def check_labeling(analysis: CdpAnalysis, labeling: VertexLabeling) -> CheckReport:
    """Label partition, n_2 <= 2 n_22, the n_00 Pell bound and min MS * (n_1 + 2 n_22) <= 8 Per."""
    rep = CheckReport("thm3")
    n_e = len(analysis.edges)
    n0, n1, n2 = labeling.counts
    n22 = labeling.nij(2, 2)
    rep.checked += 1
    if n0 + n1 + n2 != n_e or sum(labeling.pair_counts.values()) != n_e:
        rep.fail("labels do not partition the vertices")
    if n2 > 2 * n22:
        rep.fail(f"n_2={n2} > 2 n_22={2 * n22}")
    if n1 + 2 * n22 < 1:
        rep.fail("no 1-vertex and no supporting edge")
    bound, _ = max_edges_bound(analysis.grid_size)
    if labeling.nij(0, 0) > (n1 + n2) * bound:
        rep.fail(f"n_00={labeling.nij(0, 0)} > (n_1+n_2)*{bound}")
    shortest = min(seg.length for seg in analysis.segments)
    if shortest * (n1 + 2 * n22) > 8 * analysis.perimeter:
        rep.fail(f"min MS {shortest} * (n_1 + 2 n_22) > 8 Per")
    return rep


@dataclass(frozen=True)
class CdpStats:
    n_e: int
    per_l1: int
    ms_len_min: int
    ms_len_mean: float
    ms_len_max: int
    n_1: int
    n_22: int
    thm3_lhs: int
    thm4_ratio: float
    lone_vertex_max_per_vertex: int


def cdp_stats(analysis: CdpAnalysis, labeling: VertexLabeling) -> CdpStats:
    lengths = [seg.length for seg in analysis.segments]
    per = analysis.perimeter
    n_e = len(analysis.edges)
    per_vertex = Counter(k for _, k in lone_vertex_segments(analysis))
    return CdpStats(
        n_e=n_e,
        per_l1=per,
        ms_len_min=min(lengths),
        ms_len_mean=sum(lengths) / len(lengths),
        ms_len_max=max(lengths),
        n_1=labeling.n1,
        n_22=labeling.nij(2, 2),
        thm3_lhs=labeling.n1 + 2 * labeling.nij(2, 2),
        thm4_ratio=min(lengths) * n_e / per,
        lone_vertex_max_per_vertex=max(per_vertex.values(), default=0),
    )
