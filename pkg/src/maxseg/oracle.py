"""Brute-force references for DSS recognition, used to cross-check the recognizer.

Nothing here shares code with :mod:`maxseg.dss` beyond the line type.
"""

from __future__ import annotations

from functools import lru_cache
from math import gcd
from typing import Optional, Sequence

import numpy as np

from .dss import StandardLine
from .errors import InvalidArgument
from .lattice import Contour

ORACLE_MAX_POINTS = 600


@lru_cache(maxsize=None)
def _candidates(bound: int):
    """Coprime (a, b), |a|, |b| <= bound, one sign per pair, thinnest first."""
    pairs = [(a, b) for b in range(0, bound + 1) for a in range(-bound, bound + 1)
             if gcd(a, b) == 1 and (b > 0 or a > 0)]
    pairs.sort(key=lambda ab: (abs(ab[0]) + abs(ab[1]), abs(ab[0]), ab[0]))
    arr = np.array(pairs, dtype=np.int64)
    return arr[:, 0].copy(), arr[:, 1].copy()


def is_dss_oracle(points: Sequence) -> Optional[StandardLine]:
    """Thinnest standard line containing all points, found by exhaustive search.

    Candidates are all coprime (a, b) with |a|, |b| bounded by the number of
    points; mu is the smallest remainder.  A single point gets (0, 1, -y).
    """
    pts = np.asarray(points, dtype=np.int64).reshape(-1, 2)
    if len(pts) == 0:
        raise InvalidArgument("empty point run")
    a, b = _candidates(max(1, len(pts)))
    rel = pts - pts[0]
    r = np.outer(a, rel[:, 0]) - np.outer(b, rel[:, 1])
    lo = r.min(axis=1)
    ok = (r.max(axis=1) - lo) < (np.abs(a) + np.abs(b))
    hits = np.flatnonzero(ok)
    if len(hits) == 0:
        return None
    k = hits[0]
    ak, bk = int(a[k]), int(b[k])
    mu = int(lo[k]) + ak * int(pts[0, 0]) - bk * int(pts[0, 1])
    return StandardLine(ak, bk, mu)


def oracle_maximal_segments(contour: Contour) -> list[tuple[int, int]]:
    """Maximal segments as (first, last) pairs by direct use of the definition.

    For each i the longest DSS starting at i is found by exhaustive line
    search; [i, F(i)] is maximal when [i-1, F(i)] is not a DSS.
    """
    pts = contour.points
    n = len(pts)
    if n > ORACLE_MAX_POINTS:
        raise InvalidArgument(f"oracle limited to {ORACLE_MAX_POINTS} points, got {n}")
    if not contour.closed:
        fronts = []
        j = 0
        for i in range(n):
            j = max(j, i)
            while j + 1 < n and is_dss_oracle(pts[i:j + 2]) is not None:
                j += 1
            fronts.append(j)
        out = []
        for i in range(n):
            if i == 0 or is_dss_oracle(pts[i - 1:fronts[i] + 1]) is None:
                out.append((i, fronts[i]))
        return out

    def run(i, j):
        return [pts[k % n] for k in range(i, j + 1)]

    fronts = []
    j = 0
    for i in range(n):
        j = max(j, i)
        while j - i < n - 1 and is_dss_oracle(run(i, j + 1)) is not None:
            j += 1
        fronts.append(j)
    out = []
    for i in range(n):
        f = fronts[i]
        if f - i >= n - 1:
            continue
        if is_dss_oracle(run(i - 1, f)) is None:
            out.append((i, f))
    return out
