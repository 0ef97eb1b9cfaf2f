"""Command line entry point.

Exit codes: 0 success, 1 domain error (bad certificate, failed check), 2 usage error.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import math
import sys
from fractions import Fraction

from . import counting
from .complexes import ComplexError, SimplicialComplex, complement, find_coloring
from .cyclic import CyclicParameterError, relabel_swap, s_complex, s_variant
from .decoration import (
    DecorationError,
    decorate_via_complement,
    decoration_from_coloring,
    positively_decorates,
)
from .geometry import GeometryError, ViroSystem, build_viro_system
from .linalg import LinAlgError, RationalMatrix, as_fraction, format_fraction
from .pipeline import PipelineError, s_pipeline, simcomp6_system
from .points import PointConfig
from .solver import SolverError, count_positive_solutions, t_search

DOMAIN_ERRORS = (
    ComplexError,
    CyclicParameterError,
    DecorationError,
    GeometryError,
    LinAlgError,
    PipelineError,
    SolverError,
    counting.BoundError,
)


class UsageError(Exception):
    pass


def _load_json(path: str):
    if path == "-":
        return json.load(sys.stdin)
    with open(path, encoding="utf-8") as fh:
        return json.load(fh)


def _emit(text: str, path: str | None):
    if path in (None, "-"):
        sys.stdout.write(text)
    else:
        with open(path, "w", encoding="utf-8", newline="\n") as fh:
            fh.write(text)


def _dumps(data) -> str:
    return json.dumps(data, indent=2) + "\n"


def _rational(text: str) -> Fraction:
    try:
        return as_fraction(text)
    except (ValueError, ZeroDivisionError, TypeError) as exc:
        raise argparse.ArgumentTypeError(f"not a rational number: {text!r}") from exc


# ---------------------------------------------------------------------------
# subcommands


def cmd_delannoy(args) -> int:
    f = counting.corona_count if args.corona else counting.delannoy
    print(f(args.h, args.k))
    return 0


def cmd_scomplex(args) -> int:
    gamma = s_variant(args.m, args.k, args.variant)
    _emit(json.dumps(gamma.to_json()) + "\n", args.out)
    return 0


def cmd_duality_check(args) -> int:
    if args.max is not None:
        pairs = [(m, k) for m in range(2, args.max + 1) for k in range(1, m)]
    elif args.m is not None and args.k is not None:
        pairs = [(args.m, args.k)]
    else:
        raise UsageError("give --m and --k, or --max")
    ok_all = True
    for m, k in pairs:
        ok = relabel_swap(s_complex(m, k)) == complement(s_complex(m, m - k))
        ok_all &= ok
        print(f"m={m} k={k} {'ok' if ok else 'FAIL'}")
    return 0 if ok_all else 1


def cmd_decorate(args) -> int:
    gamma = SimplicialComplex.from_json(_load_json(args.complex))
    if args.complement_realization:
        data = _load_json(args.complement_realization)
        if isinstance(data, dict) and "points" not in data:
            realization = {int(k): v for k, v in data.items()}
        else:
            realization = PointConfig.from_json(data)
        c = decorate_via_complement(gamma, realization)
    else:
        if args.coloring in (None, "auto"):
            coloring = find_coloring(gamma)
            if coloring is None:
                print("complex is not balanced: no proper colouring exists", file=sys.stderr)
                return 1
        else:
            coloring = {int(k): int(v) for k, v in _load_json(args.coloring).items()}
        c = decoration_from_coloring(coloring, gamma.n, gamma.dim, gamma)
    _emit(_dumps(c.to_json()), args.emit)
    return 0


def cmd_check_decoration(args) -> int:
    gamma = SimplicialComplex.from_json(_load_json(args.complex))
    c = RationalMatrix.from_json(_load_json(args.matrix))
    rep = positively_decorates(c, gamma)
    print(json.dumps({"ok": rep.ok, "facets": len(gamma), "failing": [list(f) for f in rep.failing]}))
    return 0 if rep else 1


def cmd_viro_build(args) -> int:
    points = PointConfig.from_json(_load_json(args.points))
    c = RationalMatrix.from_json(_load_json(args.matrix))
    nu = [x.strip() for x in args.nu.split(",")]
    facets = SimplicialComplex.from_json(_load_json(args.complex)) if args.complex else None
    system = build_viro_system(points, c, nu, args.t, facets)
    _emit(_dumps(system.to_json()), args.emit)
    return 0


def cmd_viro_pipeline(args) -> int:
    res = s_pipeline(args.m, args.k, args.t)
    _emit(_dumps(res.system.to_json()), args.emit)
    print(
        f"S_{{{2 * args.m},{2 * args.k - 1}}}: {len(res.gamma)} facets, {res.decorated} decorated, "
        f"Schlegel facet {list(res.schlegel_facet)}, exponent scale {res.exponent_scale}",
        file=sys.stderr,
    )
    return 0


def _verify(system: ViroSystem, args) -> dict:
    if args.t_search:
        rep = t_search(system, jobs=args.jobs)
    else:
        rep = count_positive_solutions(system, t=args.t, jobs=args.jobs)
    return rep.to_json()


def _print_report(report: dict, fmt: str):
    if fmt == "json":
        sys.stdout.write(_dumps(report))
    else:
        print(f"t = {report['t']}: {report['count']} verified positive solutions from {report['decorated']} decorated facets")


def cmd_viro_verify(args) -> int:
    system = ViroSystem.from_json(_load_json(args.system))
    if system.facets is None:
        raise UsageError("the system file needs a 'facets' list to seed from")
    _print_report(_verify(system, args), args.report)
    return 0


def cmd_example_simcomp6(args) -> int:
    system = simcomp6_system()
    if args.report != "json":
        print("\n".join(system.to_text()))
    _print_report(_verify(system, args), args.report)
    return 0


def _grid(step: Fraction) -> list[Fraction]:
    if not 0 < step < 1:
        raise UsageError("--step must lie in (0, 1)")
    out, a = [], step
    while a < 1:
        out.append(a)
        a += step
    return out


def _fmt_float(x: float) -> str:
    return "" if x != x else repr(float(x))


def cmd_bounds(args) -> int:
    if (args.table is None) == (args.curve is None):
        raise UsageError("give exactly one of --table or --curve")
    rows: list[list[str]] = []
    if args.table:
        header = ["d", "k", "value", "provenance"]
        lo = 0 if args.table in ("delannoy", "corona") else 1
        for d in range(lo, args.max + 1):
            for k in range(lo, args.max + 1):
                rows.append([str(d), str(k), *_table_entry(args, d, k)])
    else:
        header = ["alpha", "new_lower", "classical_lower", "envelope", "r_upper"]
        rows = _curve_rows(args)
    if args.csv:
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(header)
        w.writerows(rows)
        sys.stdout.write(buf.getvalue())
    else:
        widths = [max(len(r[i]) for r in [header, *rows]) for i in range(len(header))]
        for r in [header, *rows]:
            print("  ".join(x.rjust(wd) for x, wd in zip(r, widths)))
    return 0


def _table_entry(args, d: int, k: int) -> list[str]:
    if args.table == "delannoy":
        return [str(counting.delannoy(d, k)), "exact"]
    if args.table == "corona":
        return [str(counting.corona_count(d, k)), "exact"]
    if args.table == "xi":
        rec = counting.xi_best_lower_bound(d, k, counting.PARITY_SEEDS if args.with_parity else counting.CLASSICAL_SEEDS)
        return [str(rec.value), rec.provenance]
    lower, upper = counting.r_bounds(d, k)
    if args.upper:
        return ["", "no-formula"] if upper is None else [str(upper), "cyclic-upper"]
    return ["", "no-formula"] if lower is None else [str(lower.value), lower.provenance]


def _curve_rows(args) -> list[list[str]]:
    grid = _grid(args.step)
    new = [counting.xi_asymptotic_bound(a) for a in grid]
    classical = counting.classical_curve_points()
    pool = new + classical
    if args.with_parity:
        pool = pool + counting.parity_curve_points(args.parity_max)
    rows = []
    for a, s in zip(grid, new):
        vals = [s.value, counting.envelope_at(classical, a), counting.envelope_at(pool, a), counting.r_upper_curve(a).value]
        if args.curve == "fig2":
            vals = [math.log(v) if v == v else v for v in vals]
        rows.append([format_fraction(a), *(_fmt_float(v) for v in vals)])
    return rows


# ---------------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="fewnomial", description=__doc__.splitlines()[0])
    sub = p.add_subparsers(dest="command", required=True)

    s = sub.add_parser("delannoy", help="Delannoy number D_{h,k} (or corona count F_{h,k})")
    s.add_argument("--h", type=int, required=True)
    s.add_argument("--k", type=int, required=True)
    s.add_argument("--corona", action="store_true", help="print F_{h,k} = D_{h,k} + D_{h-1,k-1}")
    s.set_defaults(func=cmd_delannoy)

    s = sub.add_parser("scomplex", help="emit S_{2m,2k-1} or its deletion/link variant")
    s.add_argument("--m", type=int, required=True)
    s.add_argument("--k", type=int, required=True)
    s.add_argument("--variant", choices=["full", "deletion", "link"], default="full")
    s.add_argument("--emit", choices=["json"], default="json")
    s.add_argument("--out", default=None, help="output file (default stdout)")
    s.set_defaults(func=cmd_scomplex)

    s = sub.add_parser("duality-check", help="check relabel_swap(S_{2m,2k-1}) = complement(S_{2m,2m-2k-1})")
    s.add_argument("--m", type=int)
    s.add_argument("--k", type=int)
    s.add_argument("--max", type=int, help="check every 1 <= k < m <= MAX")
    s.set_defaults(func=cmd_duality_check)

    s = sub.add_parser("decorate", help="build a positive decoration from a colouring or a complement realization")
    s.add_argument("--complex", required=True, help="complex JSON file")
    g = s.add_mutually_exclusive_group()
    g.add_argument("--coloring", nargs="?", const="auto", help="colouring JSON {vertex: colour}; omit the file to search")
    g.add_argument("--complement-realization", help="points JSON (list of points, or {label: point})")
    s.add_argument("--emit", default=None, help="matrix JSON output file (default stdout)")
    s.set_defaults(func=cmd_decorate)

    s = sub.add_parser("check-decoration", help="check that a matrix positively decorates every facet")
    s.add_argument("--complex", required=True)
    s.add_argument("--matrix", required=True)
    s.set_defaults(func=cmd_check_decoration)

    s = sub.add_parser("viro-build", help="assemble a Viro system JSON")
    s.add_argument("--points", required=True, help="integral points JSON")
    s.add_argument("--matrix", required=True, help="coefficient matrix JSON")
    s.add_argument("--nu", required=True, help="comma separated heights, e.g. 0,0,3/2")
    s.add_argument("--t", type=_rational, default=Fraction(1))
    s.add_argument("--complex", help="complex JSON whose facets seed the solver")
    s.add_argument("--emit", default=None)
    s.set_defaults(func=cmd_viro_build)

    s = sub.add_parser("viro-pipeline", help="build the Viro system of S_{2m,2k-1}")
    s.add_argument("--m", type=int, required=True)
    s.add_argument("--k", type=int, required=True)
    s.add_argument("--t", type=_rational, default=Fraction(1))
    s.add_argument("--emit", default=None)
    s.set_defaults(func=cmd_viro_pipeline)

    for name, helptext, func in (
        ("viro-verify", "count verified positive solutions of a system", cmd_viro_verify),
        ("example-simcomp6", "the balanced planar example with six positive solutions", cmd_example_simcomp6),
    ):
        s = sub.add_parser(name, help=helptext)
        if name == "viro-verify":
            s.add_argument("--system", required=True)
        g = s.add_mutually_exclusive_group()
        g.add_argument("--t", type=_rational, default=None)
        g.add_argument("--t-search", action="store_true", help="try t = 1/10, 1/100, ..., 1/10^12")
        s.add_argument("--report", choices=["json", "text"], default="text")
        s.add_argument("--jobs", type=int, default=1)
        s.set_defaults(func=func)

    s = sub.add_parser("bounds", help="bound tables and curve data")
    s.add_argument("--table", choices=["xi", "r", "delannoy", "corona"])
    s.add_argument("--curve", choices=["fig1", "fig2", "fig3"])
    s.add_argument("--max", type=int, default=9)
    s.add_argument("--step", type=_rational, default=Fraction(1, 512))
    s.add_argument("--csv", action="store_true")
    s.add_argument("--with-parity", action="store_true", help="add parity bounds to the seeds / envelope")
    s.add_argument("--parity-max", type=int, default=40)
    s.add_argument("--upper", action="store_true", help="R table: print upper bounds")
    s.set_defaults(func=cmd_bounds)
    return p


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        return args.func(args)
    except UsageError as exc:
        print(f"usage error: {exc}", file=sys.stderr)
        return 2
    except DOMAIN_ERRORS as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    except (OSError, json.JSONDecodeError, KeyError) as exc:
        print(f"input error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
