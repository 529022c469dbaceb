"""Arithmetic recognition of digital straight segments on 4-connected contours.

A standard line ``(a, b, mu)`` is the set of lattice points with
``mu <= a*x - b*y < mu + |a| + |b|``.  Lines produced here are oriented by
the traversal: ``(b, a)`` points along the direction of travel, so upper
leaning points (remainder ``mu``) lie on the left-hand side and lower
leaning points (remainder ``mu + |a| + |b| - 1``) on the right-hand side.
"""

from __future__ import annotations

from bisect import bisect_left, bisect_right
from dataclasses import dataclass
from math import gcd
from typing import Optional, Sequence

from .errors import DegenerateContour, InvalidArgument
from .lattice import CODE_OF, Contour

# rotation by k quarter turns counterclockwise, as (m00, m01, m10, m11)
_ROT = ((1, 0, 0, 1), (0, -1, 1, 0), (-1, 0, 0, -1), (0, 1, -1, 0))


@dataclass(frozen=True)
class StandardLine:
    a: int
    b: int
    mu: int

    def __post_init__(self):
        if (self.a, self.b) == (0, 0):
            raise InvalidArgument("a standard line needs (a, b) != (0, 0)")
        if gcd(self.a, self.b) != 1:
            raise InvalidArgument(f"characteristics ({self.a}, {self.b}) are not coprime")

    @property
    def thickness(self) -> int:
        return abs(self.a) + abs(self.b)

    def remainder(self, p) -> int:
        return self.a * p[0] - self.b * p[1]

    def contains(self, p) -> bool:
        return self.mu <= self.remainder(p) < self.mu + self.thickness

    def canonical(self) -> "StandardLine":
        """Same point set, with b > 0 or (b == 0 and a > 0)."""
        if self.b > 0 or (self.b == 0 and self.a > 0):
            return self
        return StandardLine(-self.a, -self.b, -self.mu - self.thickness + 1)


def remainder(line: StandardLine, p) -> int:
    return line.a * p[0] - line.b * p[1]


@dataclass(frozen=True)
class DssWitness:
    """Line of a recognized DSS with its principal leaning points.

    U1/L1 are the first upper/lower leaning points met along the traversal,
    U2/L2 the last ones.
    """

    line: StandardLine
    first: int
    last: int
    U1: tuple[int, int]
    U2: tuple[int, int]
    L1: tuple[int, int]
    L2: tuple[int, int]


class DssRecognizer:
    """Incremental recognizer; points are appended one 4-step at a time.

    Works in a local frame rotated so that the (at most two) Freeman codes of
    the run become 0 and 1, which keeps ``a, b >= 0`` and the classic update
    rules valid.
    """

    __slots__ = ("origin", "end", "frame", "two_codes", "n", "a", "b", "mu",
                 "lx", "ly", "U", "Up", "L", "Lp")

    def __init__(self, start):
        self.origin = (start[0], start[1])
        self.end = self.origin
        self.frame = None
        self.two_codes = False
        self.n = 1
        self.a, self.b, self.mu = 0, 1, 0
        self.lx = self.ly = 0
        self.U = self.Up = self.L = self.Lp = (0, 0)

    def __len__(self):
        return self.n

    def extend_front(self, p) -> bool:
        """Try to append ``p``; return False (state untouched) if the run stops being a DSS."""
        d = (p[0] - self.end[0], p[1] - self.end[1])
        code = CODE_OF.get(d)
        if code is None:
            raise InvalidArgument(f"{p} is not 4-adjacent to {self.end}")

        frame = self.frame
        a, b, mu = self.a, self.b, self.mu
        lx, ly = self.lx, self.ly
        U, Up, L, Lp = self.U, self.Up, self.L, self.Lp
        two_codes = self.two_codes
        if frame is None:
            frame = code
        elif not two_codes and code != frame:
            turn = (code - frame) % 4
            if turn == 1:
                two_codes = True
            elif turn == 3:
                # straight run so far: restate it as a vertical run in the new frame
                k = self.n - 1
                frame, two_codes = code, True
                a, b, mu = 1, 0, 0
                lx, ly = 0, k
                U = L = (0, 0)
                Up = Lp = (0, k)
            else:
                return False
        local = (code - frame) % 4
        if local == 0:
            mx, my = lx + 1, ly
        elif local == 1:
            mx, my = lx, ly + 1
        else:
            return False

        w = a + b
        r = a * mx - b * my
        M = (mx, my)
        if mu <= r < mu + w:
            if r == mu:
                Up = M
            if r == mu + w - 1:
                Lp = M
        elif r == mu - 1:
            Up = M
            L = Lp
            b, a = mx - U[0], my - U[1]
            mu = a * U[0] - b * U[1]
        elif r == mu + w:
            Lp = M
            U = Up
            b, a = mx - L[0], my - L[1]
            mu = a * mx - b * my - a - b + 1
        else:
            return False
        if a + b == 1:
            U = L = (0, 0)
            Up = Lp = M

        self.frame, self.two_codes = frame, two_codes
        self.a, self.b, self.mu = a, b, mu
        self.lx, self.ly = mx, my
        self.U, self.Up, self.L, self.Lp = U, Up, L, Lp
        self.end = (p[0], p[1])
        self.n += 1
        return True

    def _to_global(self, q):
        m00, m01, m10, m11 = _ROT[self.frame or 0]
        return (self.origin[0] + m00 * q[0] + m01 * q[1],
                self.origin[1] + m10 * q[0] + m11 * q[1])

    def line(self) -> StandardLine:
        m00, m01, m10, m11 = _ROT[self.frame or 0]
        # remainder is (a, -b) . local = R(a, -b) . (p - origin)
        A = m00 * self.a - m01 * self.b
        B = -(m10 * self.a - m11 * self.b)
        x0, y0 = self.origin
        return StandardLine(A, B, self.mu + A * x0 - B * y0)

    def witness(self, first: int = 0, last: Optional[int] = None) -> DssWitness:
        if last is None:
            last = first + self.n - 1
        g = self._to_global
        return DssWitness(self.line(), first, last,
                          g(self.U), g(self.Up), g(self.L), g(self.Lp))


def recognize(points: Sequence) -> Optional[DssWitness]:
    """Witness for a run of 4-adjacent points, or None if it is not a DSS."""
    rec = DssRecognizer(points[0])
    for p in points[1:]:
        if not rec.extend_front(p):
            return None
    return rec.witness()


# --- front / back ----------------------------------------------------------

def _span_limit(contour: Contour) -> int:
    return len(contour.points) - 1


def front(contour: Contour, i: int) -> int:
    """Largest j >= i such that points i..j form a DSS.

    On closed contours indices are unwrapped: the result may exceed the
    contour length and should be reduced modulo it to get a point.
    """
    pts = contour.points
    n = len(pts)
    if not contour.closed:
        if not 0 <= i < n:
            raise InvalidArgument(f"index {i} out of range")
        rec = DssRecognizer(pts[i])
        j = i
        while j + 1 < n and rec.extend_front(pts[j + 1]):
            j += 1
        return j
    rec = DssRecognizer(pts[i % n])
    j = i
    while j - i < n - 1 and rec.extend_front(pts[(j + 1) % n]):
        j += 1
    return j


def back(contour: Contour, j: int) -> int:
    """Smallest i <= j such that points i..j form a DSS (unwrapped on closed contours)."""
    pts = contour.points
    n = len(pts)
    if not contour.closed:
        if not 0 <= j < n:
            raise InvalidArgument(f"index {j} out of range")
        rec = DssRecognizer(pts[j])
        i = j
        while i > 0 and rec.extend_front(pts[i - 1]):
            i -= 1
        return i
    rec = DssRecognizer(pts[j % n])
    i = j
    while j - i < n - 1 and rec.extend_front(pts[(i - 1) % n]):
        i -= 1
    return i


# --- maximal segments -------------------------------------------------------

@dataclass(frozen=True)
class MaximalSegment:
    """Points ``first..last`` (last unwrapped, first in [0, N)) with their witness."""

    first: int
    last: int
    witness: DssWitness

    @property
    def length(self) -> int:
        """L1 length, i.e. the number of unit moves."""
        return self.last - self.first

    def indices(self) -> range:
        return range(self.first, self.last + 1)


def segment_witness(contour: Contour, first: int, last: int) -> DssWitness:
    pts = contour.points
    n = len(pts)
    rec = DssRecognizer(pts[first % n])
    for k in range(first + 1, last + 1):
        if not rec.extend_front(pts[k % n]):
            raise InvalidArgument(f"points {first}..{last} do not form a DSS")
    return rec.witness(first, last)


def maximal_segments(contour: Contour) -> list[MaximalSegment]:
    """All maximal segments of a closed contour, sorted by first index."""
    if not contour.closed:
        raise InvalidArgument("maximal segments are enumerated on closed contours")
    n = len(contour.points)
    if n < 5:
        raise InvalidArgument("contour needs at least 5 points")
    e = front(contour, 0)
    if e - 0 >= n - 1:
        raise DegenerateContour("the whole contour is one digital straight segment")
    s = back(contour, e)
    shift = (s // n) * n
    s0, e0 = s - shift, e - shift
    spans = [(s0, e0)]
    s, e = s0, e0
    while True:
        s = back(contour, e + 1)
        e = front(contour, s)
        if s >= s0 + n:
            break
        spans.append((s, e))
    segments = []
    for s, e in spans:
        shift = (s // n) * n
        s, e = s - shift, e - shift
        segments.append(MaximalSegment(s, e, segment_witness(contour, s, e)))
    segments.sort(key=lambda seg: seg.first)
    return segments


def fronts_and_backs(contour: Contour, segments: Sequence[MaximalSegment]):
    """Front and back of every index, read off the maximal segments.

    Any DSS lies inside a maximal segment, so front(i) is the last index of
    the last maximal segment starting at or before i, and back(j) the first
    index of the first maximal segment ending at or after j.
    """
    n = len(contour.points)
    shifts = (-n, 0, n)
    firsts = [seg.first + t for t in shifts for seg in segments]
    lasts = [seg.last + t for t in shifts for seg in segments]
    fronts, backs = [], []
    for i in range(n):
        k = bisect_right(firsts, i) - 1
        fronts.append(lasts[k])
        k = bisect_left(lasts, i)
        backs.append(firsts[k])
    return fronts, backs
