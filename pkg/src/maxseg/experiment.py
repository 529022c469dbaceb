"""Resolution sweeps, CSV records and log-log trend fitting."""

from __future__ import annotations

import csv
import io
import math
from concurrent.futures import ProcessPoolExecutor
from dataclasses import astuple, dataclass, field, fields
from fractions import Fraction
from typing import Optional, Sequence

import numpy as np

from .cdp import (analyze, check_edge_patterns, check_labeling, check_lemma1, check_prop4,
                  check_prop5, check_thm2, CheckReport, label_vertices, lone_vertex_segments,
                  match_supporting_edges, rows_are_cdp)
from .dss import maximal_segments
from .errors import CheckViolation, InvalidArgument
from .estimators import curvature_profile, error_stats
from .lattice import ShapeSpec, contour_from_rows, digitize_rows
from .oracle import oracle_maximal_segments

ALL_CHECKS = ("lemma1", "prop4", "prop5", "thm2", "thm3", "cdp")
DEFAULT_JITTER = ((Fraction(0), Fraction(0)), (Fraction(1, 3), Fraction(1, 7)))


def geometric_ladder(m_min: int, m_max: int, steps: int) -> list[int]:
    """Roughly equal-ratio integer resolutions from m_min to m_max (deduplicated)."""
    if steps < 2:
        raise InvalidArgument("a ladder needs at least 2 steps")
    if m_min < 1 or m_max < m_min:
        raise InvalidArgument(f"bad ladder bounds {m_min}..{m_max}")
    ratio = m_max / m_min
    out = []
    for k in range(steps):
        m = int(round(m_min * ratio ** (k / (steps - 1))))
        if not out or m > out[-1]:
            out.append(m)
    return out


@dataclass
class ExperimentConfig:
    shape: ShapeSpec
    m_min: int = 16
    m_max: int = 256
    steps: int = 5
    checks: frozenset = frozenset(ALL_CHECKS)
    oracle_max_m: int = 0
    out: Optional[str] = None
    center_jitter: Sequence = DEFAULT_JITTER
    m_values: Optional[Sequence[int]] = None  # explicit list, overrides the ladder
    jobs: int = 1

    def __post_init__(self):
        if self.m_values is None:
            if self.m_min < 4:
                raise InvalidArgument("m_min must be >= 4")
            self.m_values = geometric_ladder(self.m_min, self.m_max, self.steps)
        else:
            self.m_values = sorted({int(m) for m in self.m_values})
        if not self.m_values:
            raise InvalidArgument("empty resolution list")
        if min(self.m_values) < 4:
            raise InvalidArgument("resolutions must be >= 4")
        unknown = set(self.checks) - set(ALL_CHECKS)
        if unknown:
            raise InvalidArgument(f"unknown checks {sorted(unknown)}")
        self.checks = frozenset(self.checks)
        if not 0 <= self.oracle_max_m <= 64:
            raise InvalidArgument("oracle_max_m must be in [0, 64]")
        self.center_jitter = tuple((Fraction(x), Fraction(y)) for x, y in
                                   (self.center_jitter or ((0, 0),)))

    def shapes(self) -> list[ShapeSpec]:
        cx, cy = self.shape.center
        return [ShapeSpec(self.shape.kind, (cx + dx, cy + dy), self.shape.radii)
                for dx, dy in self.center_jitter]


def _g(v: float) -> float:
    # what survives a .12g round trip
    return float(format(v, ".12g"))


@dataclass(frozen=True)
class ExperimentRecord:
    cx: float
    cy: float
    m: int
    n_points: int
    n_e: int
    per_l1: int
    ms_count: int
    ms_len_min: int
    ms_len_mean: float
    ms_len_max: int
    n_0: int
    n_1: int
    n_2: int
    n_22: int
    curv_err_mean: float
    curv_err_std: float
    halftangent_len_min: int
    halftangent_len_mean: float
    check_lemma1: Optional[bool] = None
    check_prop4: Optional[bool] = None
    check_prop5: Optional[bool] = None
    check_thm2: Optional[bool] = None
    check_thm3: Optional[bool] = None
    check_cdp: Optional[bool] = None
    check_oracle: Optional[bool] = None


FIELD_NAMES = [f.name for f in fields(ExperimentRecord)]


def measure(shape: ShapeSpec, m: int, checks=frozenset(ALL_CHECKS),
            oracle_max_m: int = 0) -> ExperimentRecord:
    """Run the whole pipeline at one resolution; raises CheckViolation on any failed check."""
    rows = digitize_rows(shape, m)
    contour = contour_from_rows(rows)
    segments = maximal_segments(contour)
    passed = {}

    if m <= oracle_max_m:
        got = [(s.first, s.last) for s in segments]
        if got != oracle_maximal_segments(contour):
            raise CheckViolation("oracle", "maximal segments differ from the oracle", m)
        passed["oracle"] = True

    analysis = analyze(contour, segments)
    if "cdp" in checks:
        if not rows_are_cdp(rows):
            raise CheckViolation("cdp", "digitization is not a convex digital polygon", m)
        check_edge_patterns(analysis).raise_if_failed(m)
    try:
        pairs = match_supporting_edges(analysis)
    except CheckViolation as exc:
        raise CheckViolation(exc.check, exc.detail, m) from None
    if "cdp" in checks:
        passed["cdp"] = True
    labeling = label_vertices(analysis, pairs)

    if "lemma1" in checks:
        check_lemma1(analysis).raise_if_failed(m)
        passed["lemma1"] = True
    if "prop4" in checks:
        rep = CheckReport("prop4")
        for pair in pairs:
            check_prop4(analysis, pair, rep)
        rep.raise_if_failed(m)
        passed["prop4"] = True
    if "prop5" in checks:
        rep = CheckReport("prop5")
        for s, k in lone_vertex_segments(analysis):
            check_prop5(analysis, s, k, rep)
        rep.raise_if_failed(m)
        passed["prop5"] = True
    if "thm2" in checks:
        rep = CheckReport("thm2")
        for pair in pairs:
            check_thm2(analysis, pair, rep)
        rep.raise_if_failed(m)
        passed["thm2"] = True
    if "thm3" in checks:
        check_labeling(analysis, labeling).raise_if_failed(m)
        passed["thm3"] = True

    estimates, ht = curvature_profile(contour, m, segments)
    err = error_stats(contour, m, shape.curvature_at, estimates)
    lengths = [s.length for s in segments]
    return ExperimentRecord(
        cx=_g(float(shape.center[0])), cy=_g(float(shape.center[1])), m=m,
        n_points=len(contour.points), n_e=len(analysis.edges), per_l1=analysis.perimeter,
        ms_count=len(segments), ms_len_min=min(lengths),
        ms_len_mean=_g(sum(lengths) / len(lengths)), ms_len_max=max(lengths),
        n_0=labeling.n0, n_1=labeling.n1, n_2=labeling.n2, n_22=labeling.nij(2, 2),
        curv_err_mean=_g(err.mean_abs_err), curv_err_std=_g(err.std_abs_err),
        halftangent_len_min=min(ht), halftangent_len_mean=_g(sum(ht) / len(ht)),
        **{"check_" + k: v for k, v in passed.items()},
    )


def _measure_task(args):
    return measure(*args)


def run_experiment(config: ExperimentConfig) -> list[ExperimentRecord]:
    """Records in ascending m (then jitter order); writes the CSV if ``config.out`` is set."""
    tasks = [(shape, m, config.checks, config.oracle_max_m)
             for m in config.m_values for shape in config.shapes()]
    if config.jobs > 1:
        with ProcessPoolExecutor(config.jobs) as pool:
            records = list(pool.map(_measure_task, tasks))
    else:
        records = [_measure_task(t) for t in tasks]
    if config.out:
        write_csv(records, config.out)
    return records


# --- CSV ----------------------------------------------------------------------------

def _cell(v) -> str:
    if v is None:
        return ""
    if isinstance(v, bool):
        return "1" if v else "0"
    if isinstance(v, float):
        return format(v, ".12g")
    return str(v)


def records_to_csv(records: Sequence[ExperimentRecord]) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(FIELD_NAMES)
    for r in records:
        w.writerow([_cell(v) for v in astuple(r)])
    return buf.getvalue()


def write_csv(records: Sequence[ExperimentRecord], path: str) -> None:
    with open(path, "w", newline="", encoding="utf-8") as fh:
        fh.write(records_to_csv(records))


def _parse(ftype, text):
    if text == "":
        return None
    if "bool" in str(ftype):
        return text == "1"
    if ftype in ("int", int):
        return int(text)
    return float(text)


def read_csv(path: str) -> list[ExperimentRecord]:
    types = {f.name: f.type for f in fields(ExperimentRecord)}
    with open(path, newline="", encoding="utf-8") as fh:
        reader = csv.DictReader(fh)
        if reader.fieldnames != FIELD_NAMES:
            raise InvalidArgument("unexpected CSV header")
        return [ExperimentRecord(**{k: _parse(types[k], v) for k, v in row.items()})
                for row in reader]


# --- trends ---------------------------------------------------------------------------

def fit_loglog_slope(xs: Sequence[float], ys: Sequence[float]) -> tuple[float, float, float]:
    """Least-squares line through (ln x, ln y): (slope, intercept, r^2)."""
    x = np.asarray(xs, dtype=float)
    y = np.asarray(ys, dtype=float)
    if x.shape != y.shape or len(x) < 3:
        raise InvalidArgument("need at least 3 (x, y) pairs")
    if (x <= 0).any() or (y <= 0).any():
        raise InvalidArgument("log-log fit needs positive values")
    lx, ly = np.log(x), np.log(y)
    slope, intercept = np.polyfit(lx, ly, 1)
    resid = ly - (slope * lx + intercept)
    ss_tot = float(((ly - ly.mean()) ** 2).sum())
    r2 = 1.0 if ss_tot == 0 else 1.0 - float((resid ** 2).sum()) / ss_tot
    return float(slope), float(intercept), r2


@dataclass
class BoundsSummary:
    exponents: dict = field(default_factory=dict)  # name -> (slope, intercept, r2)
    thm3_ratio_max: float = 0.0
    sqrt_growth_refuted: bool = False
    curvature_convergent: bool = True
    lines: list = field(default_factory=list)

    def __str__(self):
        return "\n".join(self.lines)


def _per_m_mean(records, attr):
    by_m = {}
    for r in records:
        by_m.setdefault(r.m, []).append(float(getattr(r, attr)))
    ms = sorted(by_m)
    return ms, [sum(by_m[m]) / len(by_m[m]) for m in ms]


def report_bounds(records: Sequence[ExperimentRecord]) -> BoundsSummary:
    """Exponent fits, the n_e / ((n_1 + 2 n_22) ln m) ratio and verdict lines."""
    if len({r.m for r in records}) < 3:
        raise InvalidArgument("need records at 3 or more resolutions")
    out = BoundsSummary()
    targets = {"n_e": 2 / 3, "ms_len_min": 1 / 3, "ms_len_mean": 1 / 3,
               "halftangent_len_min": 1 / 2}
    for name, target in targets.items():
        ms, ys = _per_m_mean(records, name)
        fit = fit_loglog_slope(ms, ys)
        out.exponents[name] = fit
        out.lines.append(f"{name}: exponent {fit[0]:.4f} (reference {target:.4f}), r2 {fit[2]:.4f}")

    ratios = [r.n_e / ((r.n_1 + 2 * r.n_22) * math.log(r.m)) for r in records]
    out.thm3_ratio_max = max(ratios)
    out.lines.append(f"n_e / ((n_1 + 2 n_22) ln m): max {out.thm3_ratio_max:.4f}")

    ht = out.exponents["halftangent_len_min"][0]
    ms_min = out.exponents["ms_len_min"][0]
    out.sqrt_growth_refuted = ht < 0.5 or ms_min < 0.5
    verdict = "refuted empirically" if out.sqrt_growth_refuted else "not refuted"
    out.lines.append(f"half-tangents grow like sqrt(m): {verdict} "
                     f"(min half-tangent exponent {ht:.4f}, min segment exponent {ms_min:.4f})")

    ms, errs = _per_m_mean(records, "curv_err_mean")
    decreasing = all(b < a for a, b in zip(errs, errs[1:]))
    out.curvature_convergent = decreasing and errs[-1] < 0.02
    verdict = "consistent with convergence" if out.curvature_convergent else "not convergent"
    out.lines.append("curvature error by m: " + ", ".join(f"{m}:{e:.4f}" for m, e in zip(ms, errs)))
    out.lines.append(f"curvature by circumcircle: {verdict}")
    return out
