"""Command-line front end: ``infbranch {points,branches,compare,sample,hausdorff}``.

Exit codes: 0 success / same behavior, 1 different behavior, 2 parse error,
3 degenerate polynomial, 4 expansion failure, 5 bad branch/leaf selector,
6 empty Hausdorff sample.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import sys
import warnings
from fractions import Fraction

from .branches import (Leaf, has_vertical_point, infinity_branches, infinity_points,
                       prepare_pair, sample_leaf)
from .compare import hausdorff_estimate, same_asymptotic_behavior
from .config import Config
from .errors import (DegeneratePolynomialError, EmptySampleError, ExpansionError,
                     InsufficientTruncationError, ParseError, RootFindingError,
                     SelectorError)
from .parser import parse_polynomial
from .polynomial import is_square_free, square_free_part

EXIT_OK, EXIT_DIFFERENT, EXIT_PARSE, EXIT_DEGENERATE = 0, 1, 2, 3
EXIT_EXPANSION, EXIT_SELECTOR, EXIT_EMPTY = 4, 5, 6


class UsageError(ValueError):
    """Wrong number of curves on the command line."""


def fmt(x: float) -> str:
    return format(x, ".12g")


def fmt_complex(z: complex) -> str:
    if z.imag == 0:
        return fmt(z.real)
    if z.real == 0:
        return f"{fmt(z.imag)}i"
    sign = "-" if z.imag < 0 else "+"
    return f"{fmt(z.real)}{sign}{fmt(abs(z.imag))}i"


def fmt_exponent(e: Fraction) -> str:
    return str(e.numerator) if e.denominator == 1 else f"{e.numerator}/{e.denominator}"


def _dumps(obj) -> str:
    return json.dumps(obj, indent=2)


def _csv(rows, header) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(header)
    w.writerows(rows)
    return buf.getvalue()


def _load(text: str):
    f = parse_polynomial(text)
    if f.is_constant():
        raise DegeneratePolynomialError("curve polynomial is constant")
    if not is_square_free(f):
        warnings.warn("input polynomial has repeated factors; using its square-free part")
        f = square_free_part(f)
    return f


def _prepared(text: str):
    f = _load(text)
    vertical = has_vertical_point(f)
    f, _, lam = prepare_pair(f)
    return f, lam, vertical


def render_series(terms) -> str:
    parts = []
    for e, a in terms:
        if e == 0:
            parts.append(f"({fmt_complex(a)})")
        elif e == 1:
            parts.append(f"({fmt_complex(a)})*z")
        else:
            parts.append(f"({fmt_complex(a)})*z^({fmt_exponent(e)})")
    return " + ".join(parts) if parts else "0"


def cmd_points(curve_text: str, config: Config) -> tuple[str, int]:
    f, lam, vertical = _prepared(curve_text)
    points, _ = infinity_points(f, config.tol)
    if config.output_format == "json":
        return _dumps({"lambda": lam, "vertical_point_before_shear": vertical,
                       "points": [p.to_record() for p in points]}), EXIT_OK
    if config.output_format == "csv":
        return _csv([(p.m.real, p.m.imag, p.multiplicity) for p in points],
                    ["re", "im", "mult"]), EXIT_OK
    lines = [f"shear lambda: {lam}"]
    if lam:
        lines.append(f"curve after shear: {f.to_text()}")
    lines += [f"(1 : {fmt_complex(p.m)} : 0)  multiplicity {p.multiplicity}" for p in points]
    return "\n".join(lines) + "\n", EXIT_OK


def cmd_branches(curve_text: str, config: Config) -> tuple[str, int]:
    f, lam, _ = _prepared(curve_text)
    branches = infinity_branches(f, config.min_exponent, config.tol)
    if config.output_format == "json":
        return _dumps({"lambda": lam, "branches": [b.to_record() for b in branches]}), EXIT_OK
    if config.output_format == "csv":
        rows = [(k, b.point.m.real, b.point.m.imag, b.N, b.degree, fmt_exponent(e), a.real, a.imag)
                for k, b in enumerate(branches) for e, a in b.r_terms]
        return _csv(rows, ["branch", "m_re", "m_im", "N", "degree", "exponent", "re", "im"]), EXIT_OK
    lines = [f"shear lambda: {lam}"]
    for k, b in enumerate(branches):
        lines.append(f"branch {k} at (1 : {fmt_complex(b.point.m)} : 0): "
                     f"N={b.N} degree={b.degree} watermark={fmt_exponent(b.watermark)}")
        lines.append(f"  r(z) = {render_series(b.r_terms)} + ...")
    return "\n".join(lines) + "\n", EXIT_OK


def cmd_compare(curve_a_text: str, curve_b_text: str, config: Config) -> tuple[str, int]:
    f = parse_polynomial(curve_a_text)
    fbar = parse_polynomial(curve_b_text)
    report = same_asymptotic_behavior(f, fbar, config)
    code = EXIT_OK if report.same else EXIT_DIFFERENT
    if config.output_format == "json":
        return _dumps(report.to_record()), code
    if config.output_format == "csv":
        rows = [(p.point.m.real, p.point.m.imag, p.branch_a, p.branch_b,
                 p.witness.conjugation_root.real, p.witness.conjugation_root.imag,
                 p.witness.max_coefficient_deviation) for p in report.pairing]
        return _csv(rows, ["m_re", "m_im", "branch_a", "branch_b", "c_re", "c_im",
                           "deviation"]), code
    lines = [f"verdict: {report.verdict}"]
    if report.failure_stage:
        lines.append(f"failure stage: {report.failure_stage}")
    lines.append(f"shear lambda: {report.shear}")
    lines.append("infinity points A: " + ", ".join(fmt_complex(p.m) for p in report.points_a))
    lines.append("infinity points B: " + ", ".join(fmt_complex(p.m) for p in report.points_b))
    for p in report.pairing:
        w = p.witness
        lines.append(f"  m={fmt_complex(p.point.m)}: A{p.branch_a} <-> B{p.branch_b} "
                     f"(c={fmt_complex(w.conjugation_root)}, "
                     f"deviation={fmt(w.max_coefficient_deviation)})")
    for side, items in (("A", report.unmatched_a), ("B", report.unmatched_b)):
        for u in items:
            what = "point" if u.branch is None else f"branch {side}{u.branch}"
            lines.append(f"  unmatched {what} at m={fmt_complex(u.point.m)}")
    return "\n".join(lines) + "\n", code


def cmd_sample(curve_text: str, branch: int, leaf: int, config: Config) -> tuple[str, int]:
    f, _, _ = _prepared(curve_text)
    branches = infinity_branches(f, config.min_exponent, config.tol)
    if not 0 <= branch < len(branches):
        raise SelectorError(f"branch {branch} out of range (curve has {len(branches)})")
    b = branches[branch]
    if not 0 <= leaf < b.N:
        raise SelectorError(f"leaf {leaf} out of range (branch has {b.N})")
    pts = sample_leaf(Leaf(b, leaf), config.radii, config.angle)
    rows = [(z.real, z.imag, y.real, y.imag, leaf) for z, y in pts]
    if config.output_format == "json":
        keys = ("z_re", "z_im", "y_re", "y_im", "leaf")
        return _dumps([dict(zip(keys, r)) for r in rows]), EXIT_OK
    return _csv(rows, ["z_re", "z_im", "y_re", "y_im", "leaf"]), EXIT_OK


def cmd_hausdorff(curve_a_text: str, curve_b_text: str, config: Config) -> tuple[str, int]:
    f = _load(curve_a_text)
    fbar = _load(curve_b_text)
    values = [(R, hausdorff_estimate(f, fbar, R, config.grid_count, config.tol))
              for R in config.window]
    note = "discrete windowed estimate; trends across windows only, not a certified distance"
    if config.output_format == "json":
        return _dumps({"grid": config.grid_count, "note": note,
                       "estimates": [{"window": R, "estimate": v} for R, v in values]}), EXIT_OK
    if config.output_format == "csv":
        return _csv(values, ["window", "estimate"]), EXIT_OK
    lines = [f"window {fmt(R)}: {fmt(v)}" for R, v in values] + [f"({note})"]
    return "\n".join(lines) + "\n", EXIT_OK


def _float_list(text: str) -> tuple[float, ...]:
    try:
        values = tuple(float(t) for t in text.split(",") if t.strip())
    except ValueError:
        raise argparse.ArgumentTypeError(f"not a comma-separated number list: {text!r}")
    if not values:
        raise argparse.ArgumentTypeError("empty list")
    return values


def _fraction(text: str) -> Fraction:
    try:
        return Fraction(text)
    except (ValueError, ZeroDivisionError):
        raise argparse.ArgumentTypeError(f"not a rational number: {text!r}")


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--tol", type=float, default=1e-10, help="root-finder tolerance")
    common.add_argument("--compare-tol", type=float, default=1e-6,
                        help="relative tolerance for coefficient comparison")
    common.add_argument("--min-exponent", type=_fraction, default=Fraction(-2),
                        help="expand r(z) down to this exponent, as p/q (default -2)")
    common.add_argument("--radii", type=_float_list, default=(50.0, 100.0, 200.0),
                        help="comma-separated sampling radii")
    common.add_argument("--angle", type=float, default=0.0, help="sampling angle in radians")
    common.add_argument("--grid", type=int, default=64, help="x-grid size for hausdorff")
    common.add_argument("--window", type=_float_list, default=(20.0,),
                        help="comma-separated half-widths R for hausdorff")
    common.add_argument("--format", choices=("text", "json", "csv"), default="text")
    common.add_argument("--curve-file", action="append", default=[],
                        help="read a curve from a file (repeat for the second curve)")

    parser = argparse.ArgumentParser(
        prog="infbranch",
        description="Infinity branches of plane algebraic curves and asymptotic comparison.")
    sub = parser.add_subparsers(dest="command", required=True)

    for name, help_ in (("points", "infinity points (1:m:0)"),
                        ("branches", "infinity branches with truncated r(z)")):
        p = sub.add_parser(name, parents=[common], help=help_)
        p.add_argument("curve", nargs="?")

    p = sub.add_parser("sample", parents=[common], help="sample points of one leaf as CSV")
    p.add_argument("curve", nargs="?")
    p.add_argument("--branch", type=int, default=0)
    p.add_argument("--leaf", type=int, default=0)

    for name, help_ in (("compare", "decide same asymptotic behavior"),
                        ("hausdorff", "windowed Hausdorff distance estimate")):
        p = sub.add_parser(name, parents=[common], help=help_)
        p.add_argument("curves", nargs="*")
        p.add_argument("--curve-a", "-curve-a", dest="curve_a")
        p.add_argument("--curve-b", "-curve-b", dest="curve_b")
    return parser


def _curves(args, count: int) -> list[str]:
    given = []
    if count == 1:
        if args.curve is not None:
            given.append(args.curve)
    else:
        if args.curve_a is not None:
            given.append(args.curve_a)
        if args.curve_b is not None:
            given.append(args.curve_b)
        given += list(args.curves)
    for path in args.curve_file:
        with open(path, encoding="utf-8") as fh:
            given.append(fh.read().strip())
    if len(given) != count:
        raise UsageError(f"expected {count} curve(s), got {len(given)}")
    return given


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        config = Config(tol=args.tol, compare_tol=args.compare_tol,
                        min_exponent=args.min_exponent, radii=args.radii,
                        grid_count=args.grid, window=args.window,
                        output_format=args.format, angle=args.angle)
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_PARSE
    try:
        if args.command in ("points", "branches"):
            (curve,) = _curves(args, 1)
            fn = cmd_points if args.command == "points" else cmd_branches
            out, code = fn(curve, config)
        elif args.command == "sample":
            (curve,) = _curves(args, 1)
            out, code = cmd_sample(curve, args.branch, args.leaf, config)
        elif args.command == "compare":
            out, code = cmd_compare(*_curves(args, 2), config)
        else:
            out, code = cmd_hausdorff(*_curves(args, 2), config)
    except (ParseError, OSError) as exc:
        print(f"parse error: {exc}", file=sys.stderr)
        return EXIT_PARSE
    except UsageError as exc:
        print(f"usage error: {exc}", file=sys.stderr)
        return EXIT_PARSE
    except DegeneratePolynomialError as exc:
        print(f"degenerate polynomial: {exc}", file=sys.stderr)
        return EXIT_DEGENERATE
    except (ExpansionError, RootFindingError, InsufficientTruncationError) as exc:
        print(f"expansion failed: {exc}", file=sys.stderr)
        return EXIT_EXPANSION
    except SelectorError as exc:
        print(f"selector error: {exc}", file=sys.stderr)
        return EXIT_SELECTOR
    except EmptySampleError as exc:
        print(f"empty sample: {exc}", file=sys.stderr)
        return EXIT_EMPTY
    sys.stdout.write(out if out.endswith("\n") else out + "\n")
    return code


if __name__ == "__main__":
    sys.exit(main())
