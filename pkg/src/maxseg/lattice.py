"""Integer lattice primitives, Gauss digitization and 4-connected contours.

Pixels are lattice points; a pixel ``(x, y)`` is the unit square whose
corners are the pointels ``(x, y)``, ``(x+1, y)``, ``(x, y+1)`` and
``(x+1, y+1)``.  In real grid coordinates pointel ``(i, j)`` sits at
``(i - 1/2, j - 1/2)``, so pixel centers stay on the integer lattice while
pointels stay integer too.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass, field
from fractions import Fraction
from functools import cached_property
from math import floor, ceil, isqrt
from typing import Iterable, NamedTuple

from .errors import InvalidArgument, NotConnected

# Freeman 4-codes: 0:+x 1:+y 2:-x 3:-y
MOVES = ((1, 0), (0, 1), (-1, 0), (0, -1))
CODE_OF = {v: k for k, v in enumerate(MOVES)}


class LatticePoint(NamedTuple):
    x: int
    y: int


def _as_fraction(value) -> Fraction:
    if isinstance(value, Fraction):
        return value
    if isinstance(value, float):
        # decimal literal semantics: 0.4 means 2/5, not its binary neighbour
        return Fraction(repr(value))
    return Fraction(value)


@dataclass(frozen=True)
class ShapeSpec:
    """Axis-aligned disk or ellipse with rational center and radii."""

    kind: str
    center: tuple[Fraction, Fraction]
    radii: tuple[Fraction, Fraction]

    def __post_init__(self):
        if self.kind not in ("disk", "ellipse"):
            raise InvalidArgument(f"unknown shape kind {self.kind!r}")
        center = tuple(_as_fraction(c) for c in self.center)
        radii = tuple(_as_fraction(r) for r in self.radii)
        if len(center) != 2 or len(radii) != 2:
            raise InvalidArgument("center and radii must be pairs")
        if radii[0] <= 0 or radii[1] <= 0:
            raise InvalidArgument("radii must be positive")
        if self.kind == "disk" and radii[0] != radii[1]:
            raise InvalidArgument("a disk has equal radii")
        object.__setattr__(self, "center", center)
        object.__setattr__(self, "radii", radii)

    @classmethod
    def disk(cls, radius, center=(0, 0)) -> "ShapeSpec":
        return cls("disk", tuple(center), (radius, radius))

    @classmethod
    def ellipse(cls, rx, ry, center=(0, 0)) -> "ShapeSpec":
        return cls("ellipse", tuple(center), (rx, ry))

    def contains(self, x, y) -> bool:
        """Exact membership of the shape-space point ``(x, y)`` (boundary included)."""
        (cx, cy), (rx, ry) = self.center, self.radii
        dx = (_as_fraction(x) - cx) / rx
        dy = (_as_fraction(y) - cy) / ry
        return dx * dx + dy * dy <= 1

    def curvature_at(self, x: float, y: float) -> float:
        """Curvature of the boundary point nearest to ``(x, y)`` (shape units)."""
        cx, cy = float(self.center[0]), float(self.center[1])
        rx, ry = float(self.radii[0]), float(self.radii[1])
        if self.kind == "disk":
            return 1.0 / rx
        t = _nearest_ellipse_parameter(x - cx, y - cy, rx, ry)
        import math

        s, c = math.sin(t), math.cos(t)
        return rx * ry / (rx * rx * s * s + ry * ry * c * c) ** 1.5


def _nearest_ellipse_parameter(px, py, rx, ry, iterations=30):
    import math

    t = math.atan2(py * rx, px * ry)
    for _ in range(iterations):
        c, s = math.cos(t), math.sin(t)
        ex, ey = rx * c, ry * s
        dx, dy = -rx * s, ry * c
        ddx, ddy = -rx * c, -ry * s
        # minimise squared distance: g = (E - P).E'
        g = (ex - px) * dx + (ey - py) * dy
        dg = dx * dx + dy * dy + (ex - px) * ddx + (ey - py) * ddy
        if dg == 0:
            break
        step = g / dg
        t -= step
        if abs(step) < 1e-15:
            break
    return t


def _integer_span(center: Fraction, half_sq: Fraction):
    """Integers x with (x - center)^2 <= half_sq, as (lo, hi) or None."""
    if half_sq < 0:
        return None
    n, d = half_sq.numerator, half_sq.denominator
    approx = Fraction(isqrt(n * d), d)  # approx <= sqrt(half_sq) < approx + 1/d
    hi = floor(center + approx)
    if (hi + 1 - center) ** 2 <= half_sq:
        hi += 1
    lo = ceil(center - approx)
    if (center - (lo - 1)) ** 2 <= half_sq:
        lo -= 1
    if lo > hi:
        return None
    return lo, hi


def digitize_rows(shape: ShapeSpec, m: int) -> dict[int, tuple[int, int]]:
    """Row spans ``y -> (x_min, x_max)`` of the Gauss digitization at resolution m.

    The shape is convex, so every nonempty row is one interval.
    """
    if not isinstance(m, int) or m < 1:
        raise InvalidArgument(f"resolution must be a positive integer, got {m!r}")
    (cx, cy), (rx, ry) = shape.center, shape.radii
    x0, y0 = cx * m, cy * m
    big_rx, big_ry = rx * m, ry * m
    rows = {}
    y_span = _integer_span(y0, big_ry * big_ry)
    if y_span is None:
        return rows
    for y in range(y_span[0], y_span[1] + 1):
        t = 1 - ((y - y0) / big_ry) ** 2
        span = _integer_span(x0, big_rx * big_rx * t)
        if span is not None:
            rows[y] = span
    return rows


def digitize(shape: ShapeSpec, m: int) -> frozenset[LatticePoint]:
    """Lattice points ``(x, y)`` with ``(x/m, y/m)`` inside the shape."""
    return frozenset(
        LatticePoint(x, y)
        for y, (lo, hi) in digitize_rows(shape, m).items()
        for x in range(lo, hi + 1)
    )


@dataclass(frozen=True)
class Contour:
    """A 4-connected chain of pointels given by a start point and Freeman moves."""

    start: LatticePoint
    moves: str
    closed: bool = True

    def __post_init__(self):
        object.__setattr__(self, "start", LatticePoint(*self.start))
        if any(c not in "0123" for c in self.moves):
            raise InvalidArgument("moves must be over the alphabet 0123")
        for prev, nxt in zip(self.moves, self.moves[1:]):
            if (int(prev) - int(nxt)) % 4 == 2:
                raise InvalidArgument("contour reverses on itself")
        if self.closed and self.moves:
            if (int(self.moves[-1]) - int(self.moves[0])) % 4 == 2:
                raise InvalidArgument("contour reverses on itself")
            dx = self.moves.count("0") - self.moves.count("2")
            dy = self.moves.count("1") - self.moves.count("3")
            if (dx, dy) != (0, 0):
                raise InvalidArgument("closed contour does not return to its start")

    @cached_property
    def points(self) -> list[tuple[int, int]]:
        x, y = self.start
        pts = [(x, y)]
        for c in self.moves:
            dx, dy = MOVES[ord(c) - 48]
            x += dx
            y += dy
            pts.append((x, y))
        if self.closed:
            pts.pop()
        return pts

    def __len__(self):
        return len(self.points)

    def point(self, i: int) -> tuple[int, int]:
        """Point at index i; indices wrap around on closed contours."""
        pts = self.points
        if self.closed:
            return pts[i % len(pts)]
        if not 0 <= i < len(pts):
            raise InvalidArgument(f"index {i} out of range for open contour")
        return pts[i]

    def signed_area2(self) -> int:
        """Twice the signed enclosed area (positive when counterclockwise)."""
        pts = self.points
        total = 0
        for (x1, y1), (x2, y2) in zip(pts, pts[1:] + pts[:1]):
            total += x1 * y2 - x2 * y1
        return total


def _check_connected(pts: set) -> None:
    seed = next(iter(pts))
    seen = {seed}
    todo = deque([seed])
    while todo:
        x, y = todo.popleft()
        for dx, dy in MOVES:
            q = (x + dx, y + dy)
            if q in pts and q not in seen:
                seen.add(q)
                todo.append(q)
    if len(seen) != len(pts):
        raise NotConnected(f"{len(pts) - len(seen)} pixels unreachable from {seed}")


def trace_contour(points: Iterable) -> Contour:
    """Counterclockwise inter-pixel boundary of a 4-connected pixel set.

    The contour starts at the lexicographically smallest boundary pointel.
    Sets whose boundary is not a single simple cycle (holes, pixels touching
    only by a corner) are rejected.
    """
    pts = {(int(p[0]), int(p[1])) for p in points}
    if not pts:
        raise InvalidArgument("cannot trace the contour of an empty set")
    _check_connected(pts)

    out = {}
    for x, y in pts:
        if (x, y - 1) not in pts:
            out.setdefault((x, y), []).append(0)
        if (x + 1, y) not in pts:
            out.setdefault((x + 1, y), []).append(1)
        if (x, y + 1) not in pts:
            out.setdefault((x + 1, y + 1), []).append(2)
        if (x - 1, y) not in pts:
            out.setdefault((x, y + 1), []).append(3)
    n_edges = sum(len(v) for v in out.values())
    if any(len(v) > 1 for v in out.values()):
        raise InvalidArgument("boundary touches itself at a pixel corner")

    start = min(out)
    moves = []
    x, y = start
    while True:
        code = out[(x, y)][0]
        moves.append(code)
        dx, dy = MOVES[code]
        x, y = x + dx, y + dy
        if (x, y) == start:
            break
    if len(moves) != n_edges:
        raise InvalidArgument("pixel set has holes; its boundary is not one cycle")
    return Contour(LatticePoint(*start), "".join(map(str, moves)), True)


def contour_from_rows(rows: dict[int, tuple[int, int]]) -> Contour:
    """Contour of a row-convex set given by its row spans (fast path for digitizations).

    Consecutive rows must overlap, which holds for digitized convex shapes.
    Produces the same contour as :func:`trace_contour` on the expanded set.
    """
    if not rows:
        raise InvalidArgument("cannot trace the contour of an empty set")
    ys = sorted(rows)
    if ys[-1] - ys[0] + 1 != len(ys):
        raise NotConnected("rows are not contiguous")
    for y in ys[:-1]:
        lo, hi = rows[y]
        lo2, hi2 = rows[y + 1]
        if lo > hi2 or lo2 > hi:
            raise NotConnected(f"rows {y} and {y + 1} do not overlap")

    y0, y1 = ys[0], ys[-1]
    parts = []
    lo, hi = rows[y0]
    parts.append("0" * (hi - lo + 1))
    for y in ys:
        parts.append("1")
        if y < y1:
            step = rows[y + 1][1] - rows[y][1]
            parts.append(("0" if step > 0 else "2") * abs(step))
    lo, hi = rows[y1]
    parts.append("2" * (hi - lo + 1))
    for y in reversed(ys):
        parts.append("3")
        if y > y0:
            step = rows[y - 1][0] - rows[y][0]
            parts.append(("0" if step > 0 else "2") * abs(step))
    moves = "".join(parts)

    # the walk above starts at the bottom-left pointel of the lowest row
    origin = (rows[y0][0], y0)
    x, y = origin
    best, best_k = origin, 0
    for k, c in enumerate(moves[:-1], start=1):
        dx, dy = MOVES[ord(c) - 48]
        x += dx
        y += dy
        if (x, y) < best:
            best, best_k = (x, y), k
    moves = moves[best_k:] + moves[:best_k]
    return Contour(LatticePoint(*best), moves, True)


def contour_pixels(contour: Contour) -> frozenset[LatticePoint]:
    """Pixels enclosed by a closed counterclockwise contour (scanline fill)."""
    if not contour.closed:
        raise InvalidArgument("only closed contours enclose pixels")
    crossings = {}
    x, y = contour.start
    for c in contour.moves:
        if c == "1":  # right boundary: pixel x-1 inside
            crossings.setdefault(y, []).append((x, -1))
        elif c == "3":  # left boundary: pixel x inside
            crossings.setdefault(y - 1, []).append((x, +1))
        dx, dy = MOVES[ord(c) - 48]
        x += dx
        y += dy
    pixels = set()
    for row, marks in crossings.items():
        marks.sort()
        depth = 0
        for (xa, sa), (xb, _) in zip(marks, marks[1:]):
            depth += sa
            if depth > 0:
                pixels.update(LatticePoint(px, row) for px in range(xa, xb))
    return frozenset(pixels)


# --- octant symmetries -----------------------------------------------------

@dataclass(frozen=True)
class Symmetry:
    """One of the 8 lattice symmetries fixing the origin, as a 2x2 matrix."""

    name: str
    matrix: tuple[int, int, int, int] = field(repr=False)

    def apply(self, v):
        a, b, c, d = self.matrix
        return (a * v[0] + b * v[1], c * v[0] + d * v[1])

    def inverse_apply(self, v):
        a, b, c, d = self.matrix  # orthogonal: inverse is the transpose
        return (a * v[0] + c * v[1], b * v[0] + d * v[1])

    @property
    def det(self) -> int:
        a, b, c, d = self.matrix
        return a * d - b * c

    def map_code(self, code: int) -> int:
        return CODE_OF[self.apply(MOVES[code])]


SYMMETRIES = (
    Symmetry("identity", (1, 0, 0, 1)),
    Symmetry("swap-axes", (0, 1, 1, 0)),
    Symmetry("negate-x", (-1, 0, 0, 1)),
    Symmetry("negate-y", (1, 0, 0, -1)),
    Symmetry("negate-xy", (-1, 0, 0, -1)),
    Symmetry("rotate-cw", (0, 1, -1, 0)),
    Symmetry("rotate-ccw", (0, -1, 1, 0)),
    Symmetry("anti-swap", (0, -1, -1, 0)),
)
SYMMETRY_BY_NAME = {s.name: s for s in SYMMETRIES}


def octant_normalize(p, q) -> tuple[Symmetry, tuple[int, int]]:
    """Symmetry taking the displacement ``q - p`` into ``0 <= dy <= dx``."""
    d = (q[0] - p[0], q[1] - p[1])
    if d == (0, 0):
        raise InvalidArgument("octant of a null displacement is undefined")
    for sym in SYMMETRIES:
        nx, ny = sym.apply(d)
        if 0 <= ny <= nx:
            return sym, (nx, ny)
    raise AssertionError("unreachable: the 8 symmetries cover the plane")


# --- chain-code text format ------------------------------------------------

def write_chain(contour: Contour) -> str:
    x, y = contour.start
    return f"start {x} {y} closed {int(contour.closed)}\n{contour.moves}\n"


def read_chain(text: str) -> Contour:
    lines = text.split("\n")
    if len(lines) != 3 or lines[2] != "":
        raise InvalidArgument("chain code must be exactly two LF-terminated lines")
    head = lines[0].split(" ")
    if len(head) != 5 or head[0] != "start" or head[3] != "closed" or head[4] not in "01":
        raise InvalidArgument(f"malformed chain-code header {lines[0]!r}")
    return Contour(LatticePoint(int(head[1]), int(head[2])), lines[1], head[4] == "1")
