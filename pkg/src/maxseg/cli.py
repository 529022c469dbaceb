"""Command-line front end for resolution sweeps.

Exit status: 0 when every check passed, 1 on a check violation, 2 on bad usage.
"""

from __future__ import annotations

import argparse
import sys
from fractions import Fraction

from .errors import CheckViolation, InvalidArgument
from .experiment import ALL_CHECKS, DEFAULT_JITTER, ExperimentConfig, report_bounds, run_experiment
from .lattice import ShapeSpec


def _pair(text: str) -> tuple[Fraction, Fraction]:
    parts = text.split(",")
    if len(parts) != 2:
        raise argparse.ArgumentTypeError(f"expected X,Y, got {text!r}")
    try:
        return Fraction(parts[0].strip()), Fraction(parts[1].strip())
    except (ValueError, ZeroDivisionError):
        raise argparse.ArgumentTypeError(f"not a rational pair: {text!r}") from None


def _rational(text: str) -> Fraction:
    try:
        return Fraction(text)
    except (ValueError, ZeroDivisionError):
        raise argparse.ArgumentTypeError(f"not a number: {text!r}") from None


def _checks(text: str) -> frozenset:
    names = [t.strip() for t in text.split(",") if t.strip()]
    if names == ["all"]:
        return frozenset(ALL_CHECKS)
    if names == ["none"]:
        return frozenset()
    bad = [t for t in names if t not in ALL_CHECKS]
    if bad:
        raise argparse.ArgumentTypeError(f"unknown checks: {', '.join(bad)}")
    return frozenset(names)


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(
        prog="maxseg",
        description="Digitize a disk or ellipse over a range of resolutions and "
                    "record maximal-segment statistics as CSV.")
    p.add_argument("--shape", choices=("disk", "ellipse"), default="disk")
    p.add_argument("--radius", type=_rational, default=Fraction(1))
    p.add_argument("--radius2", type=_rational, default=None,
                   help="second semi-axis (ellipse only)")
    p.add_argument("--center", type=_pair, default=(Fraction(0), Fraction(0)),
                   help="shape center X,Y (rationals such as 1/3 are allowed)")
    p.add_argument("--m-min", type=int, default=16)
    p.add_argument("--m-max", type=int, default=256)
    p.add_argument("--steps", type=int, default=5)
    p.add_argument("--m-values", type=int, nargs="+", default=None,
                   help="explicit resolutions, replacing the geometric ladder")
    p.add_argument("--checks", type=_checks, default=frozenset(ALL_CHECKS),
                   help=f"comma list among {','.join(ALL_CHECKS)}, or all / none")
    p.add_argument("--oracle-max-m", type=int, default=0,
                   help="cross-check against brute force up to this m (<= 64)")
    p.add_argument("--out", default=None, help="CSV output path")
    p.add_argument("--jitter", type=_pair, nargs="+", default=None,
                   help="center offsets X,Y; default 0,0 and 1/3,1/7")
    p.add_argument("--jobs", type=int, default=1)
    p.add_argument("--summary", action="store_true",
                   help="print fitted exponents and verdicts after the sweep")
    return p


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return 0 if exc.code == 0 else 2
    try:
        if args.shape == "disk":
            if args.radius2 is not None and args.radius2 != args.radius:
                raise InvalidArgument("--radius2 only applies to ellipses")
            shape = ShapeSpec.disk(args.radius, args.center)
        else:
            shape = ShapeSpec.ellipse(args.radius, args.radius2 or args.radius, args.center)
        config = ExperimentConfig(
            shape=shape, m_min=args.m_min, m_max=args.m_max, steps=args.steps,
            checks=args.checks, oracle_max_m=args.oracle_max_m, out=args.out,
            center_jitter=args.jitter or DEFAULT_JITTER, m_values=args.m_values,
            jobs=args.jobs)
    except InvalidArgument as exc:
        print(f"maxseg: error: {exc}", file=sys.stderr)
        return 2
    try:
        records = run_experiment(config)
    except CheckViolation as exc:
        print(f"maxseg: {exc}", file=sys.stderr)
        return 1
    except OSError as exc:
        print(f"maxseg: error: {exc}", file=sys.stderr)
        return 2
    if not args.out:
        from .experiment import records_to_csv

        sys.stdout.write(records_to_csv(records))
    if args.summary:
        if len(config.m_values) >= 3:
            print(report_bounds(records), file=sys.stderr if not args.out else sys.stdout)
        else:
            print("summary needs at least 3 resolutions", file=sys.stderr)
    return 0


if __name__ == "__main__":
    sys.exit(main())
