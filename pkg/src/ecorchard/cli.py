"""Command-line front end.

Exit codes: 0 pass, 1 verification mismatch, 2 usage or parse error,
3 resource cap exceeded.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import sys
from fractions import Fraction
from importlib import resources
from pathlib import Path

from . import __version__
from .admissibility import SCHOOF_RULES, ruck_admissible, schoof_admissible
from .elliptic_curve import (
    ProjPoint,
    ec_basis,
    ec_is_supersingular,
    ec_trace,
    parse_curve,
)
from .errors import NotRealizableOrder, TooLarge, WrongForm
from .finite_field import FieldElement, FieldSpec
from .group_counting import (
    AbelianStructure,
    count_3rich_bruteforce,
    count_3rich_formula,
    green_tao_bound,
    parse_group,
    psi,
    psi_literal,
)
from .caps import BRUTEFORCE_MAX_ORDER
from .orchard import arrangement_json, format_arrangement, lines_from_group, parse_arrangement, summarize
from .rational_geometry import FIG4_COEFFS, check_realization
from .theorems import TheoremReport, reproduce_table3, sweep, verify_theorem

EXIT_OK, EXIT_MISMATCH, EXIT_USAGE, EXIT_CAP = 0, 1, 2, 3


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(message)


def _point_text(spec: FieldSpec, P: ProjPoint) -> str:
    if P.is_infinity():
        return "O"
    x, y = (FieldElement(spec, v).format("z") for v in P.affine())
    return f"({x},{y})"


def _dash(v) -> str:
    return "-" if v is None else str(v)


def _jsonable(v):
    if isinstance(v, (frozenset, set)):
        return len(v)
    if isinstance(v, (AbelianStructure, Fraction)):
        return str(v)
    if isinstance(v, dict):
        return {str(k): _jsonable(x) for k, x in v.items()}
    if isinstance(v, (list, tuple)):
        return [_jsonable(x) for x in v]
    return v


class Output:
    def __init__(self, fmt: str, quiet: bool, stream):
        self.fmt, self.quiet, self.stream = fmt, quiet, stream
        if fmt == "plain" and not quiet:
            self.line(f"# ecorchard {__version__}")

    def line(self, text: str = "") -> None:
        self.stream.write(text + "\n")

    def json(self, obj) -> None:
        self.stream.write(json.dumps(_jsonable(obj), sort_keys=True, indent=2) + "\n")

    def csv(self, header: list[str], rows: list[list]) -> None:
        buf = io.StringIO()
        writer = csv.writer(buf, lineterminator="\n")
        writer.writerow(header)
        writer.writerows([[_dash(v) for v in r] for r in rows])
        self.stream.write(buf.getvalue())


# subcommands


def cmd_curve(args, out: Output) -> int:
    curve = parse_curve(args.curve)
    s = summarize(curve)
    record = {
        "field": str(curve.spec), "curve": curve.text(), "equation": curve.equation(),
        "N": s.n, "t": s.t, "group": str(s.group), "bound": s.bound, "excess": s.excess,
    }
    extra = []
    if args.structure:
        basis = ec_basis(curve)
        record["basis"] = [_point_text(curve.spec, P) for P in basis]
        extra.append(f"structure={s.group.pretty()} basis={' '.join(record['basis']) or '-'}")
    if args.supersingular:
        record["trace"] = ec_trace(curve)
        record["supersingular"] = ec_is_supersingular(curve, "trace")
        text = f"trace={record['trace']} supersingular={'yes' if record['supersingular'] else 'no'}"
        try:
            record["deuring"] = ec_is_supersingular(curve, "deuring")
            text += f" deuring={'yes' if record['deuring'] else 'no'}"
        except WrongForm:
            record["deuring"] = None
        extra.append(text)
    arrangement = None
    if args.lines or args.write_arrangement:
        arrangement = lines_from_group(curve)
        if arrangement.n_lines != s.t:
            raise AssertionError(f"group triples give {arrangement.n_lines} lines, formula {s.t}")
    if args.write_arrangement:
        Path(args.write_arrangement).write_text(
            format_arrangement(arrangement.points, arrangement.lines, curve.q), encoding="utf-8"
        )
    if out.fmt == "json":
        if args.lines:
            record["arrangement"] = arrangement_json(curve, arrangement)
        out.json(record)
    elif out.fmt == "csv":
        out.csv(["curve", "q", "group", "N", "t", "bound", "excess"],
                [[curve.text(), curve.q, s.group, s.n, s.t, s.bound, s.excess]])
    else:
        out.line(f"N={s.n} t={s.t} group={s.group} bound={_dash(s.bound)} excess={_dash(s.excess)}")
        for text in extra:
            out.line(text)
        if args.lines:
            for i, P in enumerate(arrangement.points):
                out.line(f"point {i} {_point_text(curve.spec, P)}")
            for L in arrangement.lines:
                out.line("line {} {} {}".format(*L))
    return EXIT_OK


def cmd_formula(args, out: Output) -> int:
    group = parse_group(args.group)
    t = count_3rich_formula(group)
    brute = count_3rich_bruteforce(group) if group.order <= BRUTEFORCE_MAX_ORDER else None
    N = group.order
    bound = green_tao_bound(N) if N >= 3 else None
    excess = None if bound is None else t - bound
    record = {
        "group": str(group), "formula": t, "brute": brute, "psi": psi(group),
        "psi_literal": psi_literal(group), "bound": bound, "excess": excess,
    }
    if out.fmt == "json":
        out.json(record)
    elif out.fmt == "csv":
        out.csv(list(record), [list(record.values())])
    else:
        out.line(
            f"group={group} formula={t} brute={_dash(brute)} psi={record['psi']} "
            f"psi_literal={record['psi_literal']} bound={_dash(bound)} excess={_dash(excess)}"
        )
    return EXIT_OK if brute is None or brute == t else EXIT_MISMATCH


def cmd_admissible(args, out: Output) -> int:
    if (args.n1 is None) != (args.n2 is None):
        raise UsageError("give both n1 and n2 or neither")
    schoof = schoof_admissible(args.p, args.n, args.t, corrected=args.corrected)
    verdict, rule_text = schoof, SCHOOF_RULES[schoof.rule_fired]
    if args.n1 is not None:
        try:
            verdict = ruck_admissible(args.p, args.n, args.t, args.n1, args.n2)
            rule_text = f"{rule_text}; group: {verdict.rule_fired}"
        except NotRealizableOrder:
            pass
    record = {
        "p": args.p, "n": args.n, "t": args.t, "N": verdict.N, "n1": args.n1, "n2": args.n2,
        "admissible": verdict.admissible, "rule": schoof.rule_fired, "rule_text": rule_text,
    }
    if out.fmt == "json":
        out.json(record)
    elif out.fmt == "csv":
        out.csv(list(record), [list(record.values())])
    else:
        out.line(
            f"q={verdict.q} t={args.t} N={verdict.N} admissible={'yes' if verdict.admissible else 'no'} "
            f"rule={schoof.rule_fired} ({rule_text})"
        )
    return EXIT_OK


TABLE3_HEADER = ["curve", "q", "group", "N", "t", "bound", "excess", "status"]


def cmd_table3(args, out: Output) -> int:
    results = reproduce_table3(errata=args.errata)
    rows = [[r.row.equation, r.q_used, r.group, r.N, r.t, r.bound, r.excess, r.status] for r in results]
    passed = sum(r.passed for r in results)
    if out.fmt == "json":
        out.json({
            "errata": args.errata,
            "passed": passed,
            "rows": [
                dict(zip(TABLE3_HEADER, row), printed_q=r.row.q, t_group=r.t_group,
                     diff=[{"field": m.row, "expected": m.expected, "computed": m.computed} for m in r.mismatches])
                for row, r in zip(rows, results)
            ],
        })
    elif out.fmt == "csv":
        out.csv(TABLE3_HEADER, rows)
    else:
        for row, r in zip(rows, results):
            out.line("{:<20} q={:<4} group={:<6} N={:<4} t={:<5} bound={:<5} excess={} {}".format(*map(_dash, row)))
            for m in r.mismatches:
                out.line(f"    {m}")
        out.line(f"{passed}/{len(results)} rows pass")
    return EXIT_OK if passed == len(results) else EXIT_MISMATCH


def _report_record(report: TheoremReport) -> dict:
    return {
        "theorem": report.theorem,
        "params": report.params,
        "passed": report.passed,
        "witnesses": [
            {"label": w.label, "curve": w.curve.text(), "equation": w.curve.equation(), "group": str(w.structure),
             "N": w.N, "t": w.t_formula, "t_group": w.t_group, "t_geometric": w.t_geometric,
             "bound": w.bound, "excess": w.excess}
            for w in report.witnesses
        ],
        "checks": [
            {"name": c.name, "expected": c.expected, "computed": c.computed, "ok": c.ok, "fatal": c.fatal}
            for c in report.checks
        ],
    }


def cmd_verify(args, out: Output) -> int:
    if args.theorem == "t38":
        if args.p is None or args.group is None:
            raise UsageError("t38 needs --p and --group")
        g = parse_group(args.group)
        factors = (1,) * (2 - len(g.factors)) + g.factors
        if len(factors) != 2:
            raise UsageError("t38 takes a group with at most two invariant factors")
        report = verify_theorem("t38", p=args.p, n1=factors[0], n2=factors[1])
    else:
        if args.q is None:
            raise UsageError(f"{args.theorem} needs q")
        report = verify_theorem(args.theorem, args.q)
    if out.fmt == "json":
        out.json(_report_record(report))
    elif out.fmt == "csv":
        out.csv(["name", "expected", "computed", "ok", "fatal"],
                [[c.name, _jsonable(c.expected), _jsonable(c.computed), c.ok, c.fatal] for c in report.checks])
    else:
        params = " ".join(f"{k}={v}" for k, v in report.params.items())
        for w in report.witnesses:
            out.line(
                f"{w.label}: {w.curve.equation()} over {w.curve.spec} N={w.N} group={w.structure} "
                f"t={w.t_formula} t_group={_dash(w.t_group)} t_geometric={_dash(w.t_geometric)} "
                f"bound={_dash(w.bound)} excess={_dash(w.excess)}"
            )
        for c in report.failures:
            out.line(f"FAIL {c.name}: expected {_jsonable(c.expected)}, computed {_jsonable(c.computed)}")
        for c in report.flags:
            out.line(f"flag {c.name}: printed {_jsonable(c.expected)}, computed {_jsonable(c.computed)}")
        out.line(f"{report.theorem} {params}: {'pass' if report.passed else 'FAIL'} ({len(report.checks)} checks)")
    return EXIT_OK if report.passed else EXIT_MISMATCH


def _bundled_fig4() -> str:
    return resources.files("ecorchard").joinpath("data/fig4.cfg").read_text(encoding="utf-8")


def cmd_real(args, out: Output) -> int:
    if args.file:
        text = Path(args.file).read_text(encoding="utf-8")
        coeffs = None
    else:
        text = _bundled_fig4()
        coeffs = FIG4_COEFFS
    if args.curve:
        try:
            coeffs = tuple(int(c) for c in args.curve.split(","))
        except ValueError as exc:
            raise UsageError(f"bad --curve {args.curve!r}") from exc
        if len(coeffs) != 5:
            raise UsageError("--curve needs five integers a1,a2,a3,a4,a6")
    data = parse_arrangement(text)
    primes = args.p or [7]
    result = check_realization(data, coeffs, primes)
    n_lines = len(result.lines)
    if out.fmt == "json":
        out.json({
            "points": result.n_points, "lines": n_lines, "file_lines_match": result.file_lines_match,
            "on_curve": result.on_curve, "ok": result.ok,
            "reductions": {
                str(p): {"ok": r.ok, "injective": r.injective, "bijective": r.bijective, "lines_match": r.lines_match}
                for p, r in result.reductions.items()
            },
        })
    elif out.fmt == "csv":
        out.csv(["p", "points", "lines", "injective", "bijective", "lines_match"],
                [[p, result.n_points, n_lines, r.injective, r.bijective, r.lines_match]
                 for p, r in result.reductions.items()])
    else:
        if not result.file_lines_match:
            out.line(f"file lists {len(data.lines)} lines, recount over Q gives {n_lines}")
        if result.on_curve is False:
            out.line("some points are not on the curve over Q")
        for p, r in result.reductions.items():
            verdict = "matches" if r.ok else "does not match"
            out.line(f"{n_lines} lines; reduction mod {p} {verdict}")
    return EXIT_OK if result.ok else EXIT_MISMATCH


def cmd_sweep(args, out: Output) -> int:
    report = sweep(args.p)
    rows = [
        [N, sum(c.values()), " ".join(f"{g}:{k}" for g, k in sorted(c.items(), key=lambda kv: kv[0].factors))]
        for N, c in report.by_order.items()
    ]
    missing = sorted(report.admissible - report.realized)
    extra = sorted(report.realized - report.admissible)
    if out.fmt == "json":
        out.json({
            "p": args.p, "curves": report.curves, "matches_schoof": report.matches_schoof,
            "orders": {str(N): {str(g): k for g, k in c.items()} for N, c in report.by_order.items()},
            "admissible_not_realized": missing, "realized_not_admissible": extra,
        })
    elif out.fmt == "csv":
        out.csv(["N", "curves", "groups"], rows)
    else:
        for N, count, groups in rows:
            out.line(f"N={N} curves={count} groups={groups}")
        out.line(
            f"p={args.p} curves={report.curves} orders={len(rows)} "
            f"schoof={'match' if report.matches_schoof else f'mismatch missing={missing} extra={extra}'}"
        )
    return EXIT_OK if report.matches_schoof else EXIT_MISMATCH


# argument parsing


def build_parser() -> argparse.ArgumentParser:
    common = _Parser(add_help=False)
    common.add_argument("--format", choices=("plain", "json", "csv"), default=argparse.SUPPRESS)
    common.add_argument("--quiet", action="store_true", default=argparse.SUPPRESS, help="no version banner")

    parser = _Parser(prog="ecorchard", description=__doc__.splitlines()[0], parents=[common])
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    p = sub.add_parser("curve", parents=[common], help="points, group, lines and bound of one curve")
    p.add_argument("curve", help='"p^n[:modulus];a1,a2,a3,a4,a6" or "p^n;y2+y=x3+x"')
    p.add_argument("--lines", action="store_true", help="list points and 3-rich lines")
    p.add_argument("--structure", action="store_true", help="show generators")
    p.add_argument("--supersingular", action="store_true")
    p.add_argument("--write-arrangement", metavar="FILE")
    p.set_defaults(func=cmd_curve)

    p = sub.add_parser("formula", parents=[common], help="3-rich count of an abelian group")
    p.add_argument("group", help='invariant factors, e.g. "2,10"')
    p.set_defaults(func=cmd_formula)

    p = sub.add_parser("admissible", parents=[common], help="is q + 1 - t a curve order (and the group realized)?")
    p.add_argument("p", type=int)
    p.add_argument("n", type=int)
    p.add_argument("t", type=int)
    p.add_argument("n1", type=int, nargs="?")
    p.add_argument("n2", type=int, nargs="?")
    p.add_argument("--corrected", action="store_true", help="use p != 1 mod 4 for t = 0, n even")
    p.set_defaults(func=cmd_admissible)

    p = sub.add_parser("table3", parents=[common], help="recompute the worked example table")
    p.add_argument("--errata", action="store_true", help="evaluate the q=16 and q=49 rows at q=64 and q=47")
    p.set_defaults(func=cmd_table3)

    p = sub.add_parser("verify", parents=[common], help="check a theorem on witness curves")
    p.add_argument("theorem", choices=("t35", "t36", "t37", "t38"))
    p.add_argument("q", type=int, nargs="?")
    p.add_argument("--p", type=int, help="prime for t38")
    p.add_argument("--group", help="n1,n2 for t38")
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("real", parents=[common], help="check a rational arrangement and its reductions")
    p.add_argument("file", nargs="?", help="arrangement file (default: the bundled eight-point example)")
    p.add_argument("--curve", help="a1,a2,a3,a4,a6 over Q the points should satisfy")
    p.add_argument("--p", type=int, action="append", help="prime to reduce by (repeatable, default 7)")
    p.set_defaults(func=cmd_real)

    p = sub.add_parser("sweep", parents=[common], help="all short-form curves over F_p")
    p.add_argument("p", type=int)
    p.set_defaults(func=cmd_sweep)
    return parser


def main(argv=None, stdout=None, stderr=None) -> int:
    stdout = stdout or sys.stdout
    stderr = stderr or sys.stderr
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except UsageError as exc:
        stderr.write(f"ecorchard: {exc}\n")
        return EXIT_USAGE
    except SystemExit as exc:  # --help
        return int(exc.code or 0)
    out = Output(getattr(args, "format", "plain"), getattr(args, "quiet", False), stdout)
    try:
        return args.func(args, out)
    except TooLarge as exc:
        stderr.write(f"ecorchard: {exc}\n")
        return EXIT_CAP
    except (UsageError, ValueError, OSError) as exc:
        stderr.write(f"ecorchard: {exc}\n")
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
