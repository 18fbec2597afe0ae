"""Command line front end: a thin client over the service dispatch layer.

Exit codes: 0 check passed, 1 counterexample found, 2 precondition, parse or
precision error, 3 I/O failure.
"""

from __future__ import annotations

import argparse
import json
import sys

from .errors import ValuadefError
from .report import CheckReport, CheckFailure, report_to_json, report_to_text
from .service import runner
from .service.schemas import CHECK_NAMES, CheckRequest, EvalRequest, GroupRequest

EXIT_PASS = 0
EXIT_COUNTEREXAMPLE = 1
EXIT_PRECONDITION = 2
EXIT_IO = 3


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(
        prog="valuadef",
        description="Exact valued-field arithmetic and definability checks",
    )
    sub = ap.add_subparsers(dest="command", required=True)

    g = sub.add_parser("group", help="describe an ordered abelian group")
    g.add_argument("--group", required=True, help="e.g. lex[Z,Q,Z] or surd(2)")
    g.add_argument("--p", type=int, default=None)
    g.add_argument("--format", choices=("json", "text"), default="text")

    e = sub.add_parser("eval", help="evaluate a series expression")
    e.add_argument("--field", required=True, help="e.g. Q((lex[Z]))")
    e.add_argument("expression", help="series literal, e.g. '1 - t^(1)'")
    e.add_argument("--format", choices=("json", "text"), default="text")

    c = sub.add_parser("check", help="run a verification check")
    c.add_argument("name", choices=CHECK_NAMES)
    c.add_argument("--field", default=None)
    c.add_argument("--group", default=None)
    c.add_argument("--b", default=None, help="series parameter b")
    c.add_argument("--n", type=int, default=None)
    c.add_argument("--p", type=int, default=None)
    c.add_argument("--gamma", default=None, help="group element literal")
    c.add_argument("--f", default=None, help="monic integer quadratic, e.g. X^2-2")
    c.add_argument("--a", default=None, help="left interval end (rational)")
    c.add_argument("--b0", default=None, help="right interval end (rational)")
    c.add_argument("--weights", default=None, help="ex1, ex2 or s0=-1,s1=0,...")
    c.add_argument("--samples", type=int, default=1000)
    c.add_argument("--seed", type=int, default=None)
    c.add_argument("--precision", default=None, help="reserved precision override")
    c.add_argument("--format", choices=("json", "text"), default="json")
    c.add_argument("--out", default=None, help="write the report to this path")

    r = sub.add_parser("report", help="re-render a saved JSON report")
    r.add_argument("--in", dest="path", required=True)
    r.add_argument("--format", choices=("json", "text"), default="text")

    s = sub.add_parser("serve", help="run the HTTP service")
    s.add_argument("--host", default="127.0.0.1")
    s.add_argument("--port", type=int, default=8000)
    return ap


def _emit(text: str, path: str | None) -> None:
    if path is None:
        sys.stdout.write(text)
        return
    with open(path, "w") as fh:
        fh.write(text)


def _cmd_group(args) -> int:
    resp = runner.group_info(GroupRequest(group=args.group, p=args.p))
    if args.format == "json":
        print(resp.model_dump_json(indent=2))
        return EXIT_PASS
    for key, value in resp.model_dump().items():
        if value is None:
            continue
        print(f"{key}: {value}")
    return EXIT_PASS


def _cmd_eval(args) -> int:
    resp = runner.eval_expression(
        EvalRequest(field=args.field, expression=args.expression)
    )
    if args.format == "json":
        print(resp.model_dump_json(indent=2))
    else:
        print(f"series: {resp.series}")
        print(f"valuation: {resp.valuation}")
        print(f"sign: {resp.sign}")
        print(f"residue: {resp.residue}")
    return EXIT_PASS


def _cmd_check(args) -> int:
    req = CheckRequest(
        field=args.field,
        group=args.group,
        b=args.b,
        n=args.n,
        p=args.p,
        gamma=args.gamma,
        f=args.f,
        a=args.a,
        b0=args.b0,
        weights=args.weights,
        samples=args.samples,
        seed=args.seed,
    )
    report = runner.run_check(args.name, req)
    text = report_to_json(report) if args.format == "json" else report_to_text(report)
    _emit(text, args.out)
    return EXIT_PASS if report.verdict == "pass" else EXIT_COUNTEREXAMPLE


def _cmd_report(args) -> int:
    with open(args.path) as fh:
        data = json.load(fh)
    report = CheckReport(
        check=data["check"],
        params=data["params"],
        seed=data["seed"],
        samples=data["samples"],
        failures=[CheckFailure(**f) for f in data["failures"]],
    )
    text = report_to_json(report) if args.format == "json" else report_to_text(report)
    sys.stdout.write(text)
    return EXIT_PASS if report.verdict == data["verdict"] == "pass" else (
        EXIT_COUNTEREXAMPLE if data["verdict"] == "fail" else EXIT_PASS
    )


def _cmd_serve(args) -> int:
    import uvicorn

    from .service.app import app

    uvicorn.run(app, host=args.host, port=args.port)
    return EXIT_PASS


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        if args.command == "group":
            return _cmd_group(args)
        if args.command == "eval":
            return _cmd_eval(args)
        if args.command == "check":
            return _cmd_check(args)
        if args.command == "report":
            return _cmd_report(args)
        if args.command == "serve":
            return _cmd_serve(args)
        raise AssertionError(f"unhandled command {args.command}")
    except ValuadefError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_PRECONDITION
    except OSError as exc:
        print(f"i/o error: {exc}", file=sys.stderr)
        return EXIT_IO


if __name__ == "__main__":
    sys.exit(main())
