"""Continued fractions, pattern words and the flanking-factor constructions.

Words are strings over ``'0'`` (a step along x) and ``'1'`` (a step along y),
read in the first octant.  A slope ``a/b`` with ``0 <= a <= b`` is expanded
as ``[0; u_1, ..., u_n]`` and ``n`` is its complexity.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from itertools import product
from math import gcd
from typing import Iterator, Optional, Sequence

from .errors import InvalidArgument


@dataclass(frozen=True)
class ContinuedFraction:
    quotients: tuple[int, ...]

    def __post_init__(self):
        q = tuple(int(u) for u in self.quotients)
        if any(u < 1 for u in q):
            raise InvalidArgument("partial quotients must be positive")
        object.__setattr__(self, "quotients", q)

    @property
    def complexity(self) -> int:
        return len(self.quotients)

    @property
    def value(self) -> Fraction:
        v = Fraction(0)
        for u in reversed(self.quotients):
            v = 1 / (u + v)
        return v

    def u(self, k: int) -> int:
        """Partial quotient u_k (1-based; u_0 = 0)."""
        return 0 if k == 0 else self.quotients[k - 1]

    @property
    def canonical(self) -> bool:
        return len(self.quotients) < 2 or self.quotients[-1] >= 2

    def flipped(self) -> "ContinuedFraction":
        """The other expansion of the same value, with opposite parity."""
        q = self.quotients
        if not q:
            raise InvalidArgument("slope 0 has a single expansion")
        if q[-1] >= 2:
            return ContinuedFraction(q[:-1] + (q[-1] - 1, 1))
        if len(q) >= 2:
            return ContinuedFraction(q[:-2] + (q[-2] + 1,))
        raise InvalidArgument("slope 1 = [0; 1] has no positive flipped form")

    def __str__(self):
        return "[0; " + ", ".join(map(str, self.quotients)) + "]"


def cf_decompose(a: int, b: int) -> ContinuedFraction:
    """Canonical expansion of a/b by the Euclidean algorithm.

    Slope 0 (a = 0, b = 1) is accepted and has no quotients.
    """
    if b <= 0 or a < 0 or a > b:
        raise InvalidArgument(f"slope {a}/{b} is not in [0, 1]")
    if gcd(a, b) != 1:
        raise InvalidArgument(f"{a}/{b} is not reduced")
    quotients = []
    num, den = a, b
    while num:
        quotients.append(den // num)
        num, den = den % num, num
    return ContinuedFraction(tuple(quotients))


def convergents(cf: ContinuedFraction) -> list[tuple[int, int]]:
    """Rows (p_k, q_k) for k = 0..n."""
    rows = [(0, 1)]
    p2, q2, p1, q1 = 1, 0, 0, 1  # k-2 = -1 and k-1 = 0
    for u in cf.quotients:
        p, q = u * p1 + p2, u * q1 + q2
        rows.append((p, q))
        p2, q2, p1, q1 = p1, q1, p, q
    return rows


def _pq(rows, k):
    return (1, 0) if k == -1 else rows[k]


def _words(cf: ContinuedFraction) -> dict[int, str]:
    """E(z_k) for k = -1..n; E(z_{-1}) = '1' closes the odd recursion at i = 0."""
    E = {-1: "1", 0: "0"}
    for k in range(1, cf.complexity + 1):
        u = cf.u(k)
        if k % 2:
            E[k] = E[k - 1] * u + E[k - 2]
        else:
            E[k] = E[k - 2] + E[k - 1] * u
    return E


@dataclass(frozen=True)
class PatternWord:
    word: str
    a: int
    b: int

    def __str__(self):
        return self.word

    def __len__(self):
        return len(self.word)


def pattern_word(cf: ContinuedFraction) -> PatternWord:
    p, q = convergents(cf)[-1]
    return PatternWord(_words(cf)[cf.complexity], p, q)


def reversed_pattern(cf: ContinuedFraction) -> PatternWord:
    pw = pattern_word(cf)
    return PatternWord(pw.word[::-1], pw.a, pw.b)


def pattern(a: int, b: int) -> str:
    """Pattern word of the reduced slope a/b (first octant)."""
    return pattern_word(cf_decompose(a, b)).word


def leaning_vectors(cf: ContinuedFraction) -> tuple[tuple[int, int], tuple[int, int]]:
    """Vectors U1->L1 and L1->U2 of a pattern, from its convergents."""
    n = cf.complexity
    if n == 0:
        raise InvalidArgument("slope 0 has no lower leaning point inside its pattern")
    rows = convergents(cf)
    if n % 2:
        i = (n - 1) // 2
        p0, q0 = _pq(rows, 2 * i)
        pm, qm = _pq(rows, 2 * i - 1)
        k = cf.u(2 * i + 1) - 1
        ul = (k * q0 + qm + 1, k * p0 + pm - 1)
        lu = (q0 - 1, p0 + 1)
    else:
        i = n // 2
        pm, qm = _pq(rows, 2 * i - 1)
        pmm, qmm = _pq(rows, 2 * i - 2)
        k = cf.u(2 * i) - 1
        ul = (qm + 1, pm - 1)
        lu = (k * qm + qmm - 1, k * pm + pmm + 1)
    return ul, lu


def factor_structure(cf: ContinuedFraction) -> tuple[str, str]:
    """Left factor of [U1 L1] and right factor of [L1 U2] as words."""
    n = cf.complexity
    if n < 2:
        raise InvalidArgument("factor structure needs complexity >= 2")
    E = _words(cf)
    if n % 2:
        i = (n - 1) // 2
        return E[2 * i] * (cf.u(2 * i + 1) - 1), E[2 * i - 1] * cf.u(2 * i)
    i = n // 2
    return E[2 * i - 2] * cf.u(2 * i - 1), E[2 * i - 1] * (cf.u(2 * i) - 1)


# --- word utilities -------------------------------------------------------------

def word_slope(word: str) -> Fraction:
    """Slope (#ones / #zeros) of a first-octant word."""
    zeros = word.count("0")
    if zeros == 0:
        raise InvalidArgument("word has no x step")
    return Fraction(word.count("1"), zeros)


def word_remainders(word: str, a: int, b: int) -> list[int]:
    """Remainders a*x - b*y along the word walked from the origin."""
    x = y = 0
    out = [0]
    for c in word:
        if c == "0":
            x += 1
        else:
            y += 1
        out.append(a * x - b * y)
    return out


def is_dss_word(word: str, a: int, b: int) -> bool:
    """Whether the walked word fits in one standard line of slope a/b."""
    r = word_remainders(word, a, b)
    return max(r) - min(r) < a + b


def pattern_power(word: str) -> Optional[tuple[Fraction, int]]:
    """(slope, f) if word is f copies of one pattern, else None."""
    if not word or "0" not in word:
        return None
    s = word_slope(word)
    f = gcd(word.count("0"), word.count("1"))
    if pattern(s.numerator, s.denominator) * f == word:
        return s, f
    return None


def slope_complexity(s: Fraction) -> int:
    return cf_decompose(s.numerator, s.denominator).complexity


# --- flanking factors ----------------------------------------------------------

@dataclass(frozen=True)
class FlankingEdge:
    word: str
    side: str  # "right" for R_i, "left" for L_i
    rank: int
    complexity: int  # nominal depth from the construction tables
    slope: Fraction


def _factor(cf, E, side, k, cut):
    """R_k or L_k of the construction for the pattern of complexity n."""
    n = cf.complexity
    base = n - k
    power = cf.u(n + 1 - k) - cut
    if side == "right":
        if base % 2 == 0:
            word = E[base] * power + E[base - 1]
            depth = base + 1
        else:
            word = E[base] * power
            depth = base
    else:
        if base % 2:
            word = E[base - 1] + E[base] * power
            depth = base + 1
        else:
            word = E[base] * power
            depth = base
    return FlankingEdge(word, side, k, depth, word_slope(word))


def flanking_factors(cf: ContinuedFraction, side: str, cut: int) -> FlankingEdge:
    """Strict right factor R (side 'right') or left factor L (side 'left') of the pattern.

    ``cut`` is r (resp. l) and must satisfy 0 < cut < u_n.
    """
    n = cf.complexity
    if n < 1:
        raise InvalidArgument("flanking factors need complexity >= 1")
    if side not in ("left", "right"):
        raise InvalidArgument(f"side must be 'left' or 'right', got {side!r}")
    if not 0 < cut < cf.u(n):
        raise InvalidArgument(f"cut {cut} not in (0, {cf.u(n)})")
    return _factor(cf, _words(cf), side, 1, cut)


def flanking_properties(cf: ContinuedFraction, r: int, l: int) -> dict[str, bool]:
    """Evaluate properties (i)-(vi) of the R/L factors for cuts r and l."""
    n = cf.complexity
    E = _words(cf)
    P = E[n]
    a, b = convergents(cf)[-1]
    R = flanking_factors(cf, "right", r)
    L = flanking_factors(cf, "left", l)
    q = cf.quotients

    def value(quots):
        return ContinuedFraction(tuple(quots)).value

    props = {}
    props["i"] = all(is_dss_word(w, a, b) for w in (R.word + P, P + L.word, R.word + P + L.word))
    props["ii"] = pattern_power(R.word) is not None and pattern_power(L.word) is not None
    props["iii"] = all(pattern_power(w) is None for w in (R.word + P, P + L.word, R.word + P + L.word))
    props["iv"] = R.slope > Fraction(a, b) > L.slope
    # (v): slopes are the truncated expansions of the tables, and their
    # canonical depth never exceeds the tabulated maximum
    if n % 2:
        r_quots, l_quots = q[:-1] + (q[-1] - r,), q[:-1]
        r_max, l_max = n, n - 1
    else:
        r_quots, l_quots = q[:-1], q[:-1] + (q[-1] - l,)
        r_max, l_max = n - 1, n
    props["v"] = (R.slope == value(r_quots) and L.slope == value(l_quots)
                  and slope_complexity(R.slope) <= r_max
                  and slope_complexity(L.slope) <= l_max
                  and R.complexity == r_max and L.complexity == l_max)
    # (vi): what is left of P once R (a suffix) or L (a prefix) is removed
    rest_r, rest_l = P[:len(P) - len(R.word)], P[len(L.word):]
    ok = P.endswith(R.word) and P.startswith(L.word)
    if n % 2:
        ok = ok and rest_r == E[n - 1] * r and rest_l == E[n - 1] * l + E[n - 2]
        ok = ok and word_slope(rest_r) == value(q[:-1]) and word_slope(rest_l) == value(q[:-1] + (l,))
    else:
        ok = ok and rest_r == E[n - 2] + E[n - 1] * r and rest_l == E[n - 1] * l
        ok = ok and word_slope(rest_r) == value(q[:-1] + (r,))
        ok = ok and word_slope(rest_l) == value(q[:-1])
    props["vi"] = ok
    return props


def _steps(cf: ContinuedFraction):
    """Ranks k whose quotient u_{n+1-k} allows a strict cut (u >= 2)."""
    n = cf.complexity
    return [k for k in range(1, n + 1) if cf.u(n + 1 - k) >= 2]


def flanking_edge_sequence(cf: ContinuedFraction,
                           cuts: Optional[Sequence[Optional[tuple[int, int]]]] = None):
    """Edges (R_1..R_n) and (L_1..L_n) around a pattern, per the construction tables.

    ``cuts[k-1] = (r_k, l_k)``; ranks whose quotient is 1 are skipped and
    their entry ignored.  Defaults to all cuts equal to 1.
    """
    n = cf.complexity
    if n < 1:
        raise InvalidArgument("need complexity >= 1")
    if cuts is None:
        cuts = [(1, 1)] * n
    if len(cuts) != n:
        raise InvalidArgument(f"expected {n} cut pairs, got {len(cuts)}")
    E = _words(cf)
    rights, lefts = [], []
    for k in _steps(cf):
        u = cf.u(n + 1 - k)
        if cuts[k - 1] is None:
            raise InvalidArgument(f"missing cut for rank {k}")
        r, l = cuts[k - 1]
        if not (0 < r < u and 0 < l < u):
            raise InvalidArgument(f"cuts {(r, l)} at rank {k} not in (0, {u})")
        rights.append(_factor(cf, E, "right", k, r))
        lefts.append(_factor(cf, E, "left", k, l))
    return rights, lefts


def admissible_cuts(cf: ContinuedFraction) -> Iterator[list[Optional[tuple[int, int]]]]:
    """Every admissible cut vector for :func:`flanking_edge_sequence`."""
    n = cf.complexity
    steps = _steps(cf)
    choices = []
    for k in steps:
        u = cf.u(n + 1 - k)
        choices.append([(r, l) for r in range(1, u) for l in range(1, u)])
    for combo in product(*choices):
        cuts = [None] * n
        for k, c in zip(steps, combo):
            cuts[k - 1] = c
        yield cuts


def assemble(cf: ContinuedFraction, rights, lefts, f: int = 1) -> tuple[str, int, int]:
    """Word R_n..R_1 E L_1..L_n and the index range of E inside it."""
    E = pattern_word(cf).word * f
    head = "".join(e.word for e in reversed(rights))
    tail = "".join(e.word for e in lefts)
    return head + E + tail, len(head), len(head) + len(E)


def check_edge_sequence(cf: ContinuedFraction, rights, lefts) -> dict[str, bool]:
    """DSS, leaning-point confinement and slope monotonicity of an assembled sequence."""
    a, b = convergents(cf)[-1]
    word, e0, e1 = assemble(cf, rights, lefts)
    r = word_remainders(word, a, b)
    lo = min(r)
    upper = [k for k, v in enumerate(r) if v == lo]
    slopes = [e.slope for e in reversed(rights)] + [Fraction(a, b)] + [e.slope for e in lefts]
    return {
        "dss": max(r) - lo < a + b,
        "upper_on_edge": all(e0 <= k <= e1 for k in upper) and r[e0] == lo and r[e1] == lo,
        "slopes_decrease": all(s > t for s, t in zip(slopes, slopes[1:])),
        "patterns": all(pattern_power(e.word) is not None for e in rights + lefts),
    }


# --- Pell bound ---------------------------------------------------------------

_SILVER = 1 + math.sqrt(2)


def pell_numbers(count: int) -> list[int]:
    """U_0..U_{count-1} with U_n = 2 U_{n-1} + U_{n-2}, U_0 = 0, U_1 = 1."""
    seq = [0, 1]
    while len(seq) < count:
        seq.append(2 * seq[-1] + seq[-2])
    return seq[:count]


def max_edges_bound(m: int) -> tuple[int, float]:
    """Largest n with U_{n+1} <= m, and the closed-form estimate of it."""
    if m < 2:
        raise InvalidArgument("grid size must be at least 2")
    n = 0
    prev, cur = 1, 2  # U_1, U_2
    while cur <= m:
        n += 1
        prev, cur = cur, 2 * cur + prev
    closed = math.log(4 * m / math.sqrt(2)) / math.log(_SILVER) - 1
    return n, closed
