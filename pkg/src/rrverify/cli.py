"""Command-line front end: list | verify | count | table | all | series.

Exit codes: 0 success, 1 some identity did not match, 2 usage error,
3 budget or parameter error.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import sys

from . import identities as R
from .errors import BadParameters, RRVerifyError
from .partitions import BUDGET_ENV, count_lambda, count_table

EXIT_OK, EXIT_MISMATCH, EXIT_USAGE, EXIT_PARAMS = 0, 1, 2, 3

REPORT_COLUMNS = ("id", "params", "order", "status", "q_exp", "x_exp",
                  "lhs", "rhs", "elapsed", "message")
SERIES_COLUMNS = ("q_exp", "x_exp", "coeff")


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise _UsageError(message)


class _UsageError(Exception):
    pass


def _param(text: str) -> tuple[str, str]:
    key, sep, value = text.partition("=")
    if not sep or not key:
        raise argparse.ArgumentTypeError(f"expected key=value, got {text!r}")
    return key.strip(), value.strip()


def build_parser() -> argparse.ArgumentParser:
    common = _Parser(add_help=False)
    common.add_argument("--format", choices=("text", "json", "csv"), default="text")
    common.add_argument("--budget", type=int, default=None,
                        help=f"enumeration ceiling (overrides {BUDGET_ENV})")

    parser = _Parser(prog="rrverify",
                     description="Exact q-series identity checks and partition counts.")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    sub.add_parser("list", parents=[common], help="show the identity registry")

    p = sub.add_parser("verify", parents=[common], help="check one identity")
    p.add_argument("--id", required=True)
    p.add_argument("--param", type=_param, action="append", default=[],
                   metavar="KEY=VALUE")
    p.add_argument("--order", type=int, default=None)
    p.add_argument("--oracle", action="store_true",
                   help="also recompute the left side by enumeration when possible")

    p = sub.add_parser("count", parents=[common], help="|Lambda^{a,m}(n)|")
    p.add_argument("--a", type=int, required=True)
    p.add_argument("--m", type=int, required=True)
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--omega", type=int, default=None)

    p = sub.add_parser("table", parents=[common], help="counts for n = 0..max-n")
    p.add_argument("--a", type=int, required=True)
    p.add_argument("--m", type=int, required=True)
    p.add_argument("--max-n", type=int, required=True)
    p.add_argument("--by-omega", action="store_true")

    p = sub.add_parser("all", parents=[common], help="check every registry entry")
    p.add_argument("--order", type=int, default=None,
                   help="one order for every entry (default: each entry's own)")
    p.add_argument("--jobs", type=int, default=1)
    p.add_argument("--oracle", action="store_true")

    p = sub.add_parser("series", parents=[common], help="print one side of an identity")
    p.add_argument("--id", required=True)
    p.add_argument("--side", choices=("lhs", "rhs"), default="lhs")
    p.add_argument("--param", type=_param, action="append", default=[],
                   metavar="KEY=VALUE")
    p.add_argument("--order", type=int, default=None)
    return parser


def _csv(rows, columns) -> str:
    buf = io.StringIO()
    writer = csv.DictWriter(buf, fieldnames=columns, lineterminator="\n")
    writer.writeheader()
    for row in rows:
        writer.writerow(row)
    return buf.getvalue().rstrip("\n")


def _report_row(rep: R.IdentityReport) -> dict:
    d = rep.to_dict()
    fm = d.pop("first_mismatch") or {}
    d["params"] = ";".join(f"{k}={v}" for k, v in rep.params.items())
    d.update({k: fm.get(k, "") for k in ("q_exp", "x_exp", "lhs", "rhs")})
    return d


def _render_reports(reports, fmt: str) -> str:
    if fmt == "json":
        return "\n".join(r.to_json() for r in reports)
    if fmt == "csv":
        return _csv((_report_row(r) for r in reports), REPORT_COLUMNS)
    lines = [r.text_row() for r in reports]
    bad = sum(not r.ok for r in reports)
    lines.append(f"{len(reports) - bad}/{len(reports)} MATCH")
    return "\n".join(lines)


def emit_table(a: int, m: int, max_n: int, by_omega: bool = False,
               fmt: str = "text", budget: int | None = None) -> str:
    """Render |Lambda^{a,m}(n)| for n <= max_n, optionally split by omega."""
    if max_n < 0:
        raise BadParameters("max-n must be nonnegative")
    rows = count_table(a, m, max_n, by_omega, budget)
    columns = ("n", "omega", "count") if by_omega else ("n", "count")
    if fmt == "json":
        return json.dumps(rows)
    if fmt == "csv":
        return _csv(rows, columns)
    widths = [max(len(c), *(len(str(r[c])) for r in rows)) for c in columns]
    lines = ["  ".join(c.rjust(w) for c, w in zip(columns, widths))]
    for r in rows:
        lines.append("  ".join(str(r[c]).rjust(w) for c, w in zip(columns, widths)))
    return "\n".join(lines)


def _series_text(s) -> str:
    return "\n".join(f"q^{k} x^{j}: {c}" for k, j, c in s.items()) or "0"


def _dispatch(args, out) -> int:
    cmd = args.command
    if cmd == "list":
        specs = R.list_identities()
        if args.format == "json":
            print("\n".join(json.dumps(s, sort_keys=True) for s in specs), file=out)
        elif args.format == "csv":
            rows = [{"id": s["id"], "default_order": s["default_order"],
                     "tags": ";".join(s["tags"]),
                     "params": ";".join(f"{k}={v['default']}" for k, v in s["params"].items()),
                     "summary": s["summary"]} for s in specs]
            print(_csv(rows, ("id", "default_order", "tags", "params", "summary")), file=out)
        else:
            for s in specs:
                print(f"{s['id']:<28} order={s['default_order']:<4} "
                      f"[{', '.join(s['tags'])}]  {s['summary']}", file=out)
        return EXIT_OK

    if cmd == "verify":
        rep = R.verify(args.id, dict(args.param), args.order, oracle=args.oracle,
                       budget=args.budget)
        text = _render_reports([rep], args.format)
        if args.format == "text":
            text = text.rsplit("\n", 1)[0]
        print(text, file=out)
        return EXIT_OK if rep.ok else EXIT_MISMATCH

    if cmd == "count":
        if args.n < 0:
            raise BadParameters("n must be nonnegative")
        value = count_lambda(args.a, args.m, args.n, args.omega, args.budget)
        if args.format == "json":
            print(json.dumps({"a": args.a, "m": args.m, "n": args.n,
                              "omega": args.omega, "count": value}), file=out)
        elif args.format == "csv":
            row = {"a": args.a, "m": args.m, "n": args.n,
                   "omega": "" if args.omega is None else args.omega, "count": value}
            print(_csv([row], ("a", "m", "n", "omega", "count")), file=out)
        else:
            print(value, file=out)
        return EXIT_OK

    if cmd == "table":
        print(emit_table(args.a, args.m, args.max_n, args.by_omega, args.format,
                         args.budget), file=out)
        return EXIT_OK

    if cmd == "all":
        if args.order is not None and args.order < 0:
            raise BadParameters("order must be nonnegative")
        reports = R.run_all(args.order, max(1, args.jobs), args.oracle, args.budget)
        print(_render_reports(reports, args.format), file=out)
        if any(r.status is R.Status.ERROR for r in reports) and \
                all(r.status is not R.Status.MISMATCH for r in reports):
            return EXIT_PARAMS
        return EXIT_OK if all(r.ok for r in reports) else EXIT_MISMATCH

    if cmd == "series":
        spec = R.get(args.id)
        p = spec.resolve(dict(args.param))
        order = spec.default_order if args.order is None else args.order
        if order < 0:
            raise BadParameters("order must be nonnegative")
        build = spec.lhs if args.side == "lhs" else spec.rhs
        s = build(p, order, args.budget)
        if args.format == "json":
            print(json.dumps(s.to_json()), file=out)
        elif args.format == "csv":
            rows = [{"q_exp": k, "x_exp": j, "coeff": c} for k, j, c in s.to_json()["terms"]]
            print(_csv(rows, SERIES_COLUMNS), file=out)
        else:
            print(_series_text(s), file=out)
        return EXIT_OK
    raise _UsageError(f"unknown command {cmd}")


def run(argv=None, out=None, err=None) -> int:
    out = out or sys.stdout
    err = err or sys.stderr
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except _UsageError as exc:
        print(f"usage error: {exc}", file=err)
        print(parser.format_usage().rstrip(), file=err)
        return EXIT_USAGE
    except SystemExit as exc:  # --help
        return EXIT_OK if exc.code in (0, None) else EXIT_USAGE
    try:
        return _dispatch(args, out)
    except (RRVerifyError, ArithmeticError) as exc:
        print(f"error: {exc}", file=err)
        return EXIT_PARAMS


def main() -> None:
    sys.exit(run())


if __name__ == "__main__":
    main()
