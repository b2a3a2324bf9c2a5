"""Command-line front end: run scenarios, emit reports, re-verify them.

Exit codes: 0 when every executed check meets its expected outcome, 1 on
any check failure (or a failed re-verification), 2 on usage or
configuration errors.
"""

from __future__ import annotations

import argparse
import json
import sys
from concurrent.futures import ThreadPoolExecutor

from .scenarios import (
    MalformedReportError,
    Report,
    UnknownScenarioError,
    list_scenarios,
    reverify,
    run_scenario,
)
from .toeplitz import factor_census


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="cohomcert",
        description=(
            "exact verification of local-cohomology torsion classes, "
            "Toeplitz determinant identities, and colon-ideal annihilators"
        ),
    )
    sub = parser.add_subparsers(dest="command", required=True)

    sub.add_parser("list", help="list the built-in scenarios")

    run_p = sub.add_parser("run", help="run a scenario (or 'all')")
    run_p.add_argument("scenario", help="scenario name, or 'all'")
    run_p.add_argument("--format", choices=("text", "json"), default="text")
    run_p.add_argument("--out", metavar="PATH",
                       help="write the JSON report to PATH")
    run_p.add_argument("--full", action="store_true",
                       help="print complete certificate transcripts")
    run_p.add_argument("--jobs", type=int, default=1,
                       help="worker pool size for 'run all' (default 1)")
    run_p.add_argument("--params", metavar="PATH", dest="params_file",
                       help="JSON file of parameter overrides")
    run_p.add_argument("--k-max", type=int, dest="k_max")
    run_p.add_argument("--n-max", type=int, dest="n_max")
    run_p.add_argument("--primes", type=str,
                       help="comma-separated primes, e.g. 2,3,5,7")
    run_p.add_argument("--p", type=int, dest="p")

    rev_p = sub.add_parser("reverify", help="re-check a saved JSON report")
    rev_p.add_argument("path", metavar="REPORT.json")

    toe_p = sub.add_parser("toeplitz", help="irreducible-factor census table")
    toe_p.add_argument("--n-max", type=int, dest="n_max", default=16)
    toe_p.add_argument("--p", type=int, dest="p", default=5)
    toe_p.add_argument("--format", choices=("text", "json"), default="text")
    toe_p.add_argument("--out", metavar="PATH")

    tor_p = sub.add_parser("torsion", help="run the p-torsion pipeline standalone")
    tor_p.add_argument("--primes", type=str, default="2,3,5,7")
    tor_p.add_argument("--format", choices=("text", "json"), default="text")
    tor_p.add_argument("--out", metavar="PATH")
    tor_p.add_argument("--full", action="store_true")
    return parser


def _parse_primes(text: str) -> list[int]:
    try:
        return [int(tok) for tok in text.split(",") if tok.strip()]
    except ValueError:
        raise ValueError(f"bad primes list {text!r}; expected e.g. 2,3,5,7")


def _scenario_params(args) -> dict:
    params = {}
    if getattr(args, "params_file", None):
        with open(args.params_file) as fh:
            loaded = json.load(fh)
        if not isinstance(loaded, dict):
            raise ValueError("parameter file must hold a JSON object")
        params.update(loaded)
    if getattr(args, "k_max", None) is not None:
        params["k_max"] = args.k_max
    if getattr(args, "n_max", None) is not None:
        params["n_max"] = args.n_max
    if getattr(args, "p", None) is not None:
        params["p"] = args.p
    if getattr(args, "primes", None):
        params["primes"] = _parse_primes(args.primes)
    return params


def _abbreviate(value, limit=100) -> str:
    text = json.dumps(value, sort_keys=True) if not isinstance(value, str) else value
    return text if len(text) <= limit else text[: limit - 3] + "..."


def _print_report(report: Report, full: bool, stream) -> None:
    mark = "PASS" if report.passed else "FAIL"
    ok = sum(1 for c in report.checks if c.ok)
    print(
        f"scenario {report.scenario}: {mark} "
        f"({ok}/{len(report.checks)} checks, {report.seconds:.2f}s)",
        file=stream,
    )
    for c in report.checks:
        flag = c.status if c.ok else f"{c.status}, expected {c.expected_status}"
        print(f"  [{flag}] {c.name}: {_abbreviate(c.actual)}", file=stream)
        if full:
            print(json.dumps(c.certificate, indent=2, sort_keys=True), file=stream)


def _emit(payload: dict, args, text_renderer) -> None:
    if getattr(args, "out", None):
        with open(args.out, "w") as fh:
            json.dump(payload, fh, indent=2, sort_keys=True)
            fh.write("\n")
        print(f"wrote {args.out}", file=sys.stdout)
    elif getattr(args, "format", "text") == "json":
        json.dump(payload, sys.stdout, indent=2, sort_keys=True)
        sys.stdout.write("\n")
    else:
        text_renderer()


def _cmd_list() -> int:
    for name, description in list_scenarios():
        print(f"{name:24s} {description}")
    return 0


def _cmd_run(args) -> int:
    if args.out and args.format == "json":
        print("--out and --format json are mutually exclusive", file=sys.stderr)
        return 2
    if args.jobs < 1:
        print("--jobs must be at least 1", file=sys.stderr)
        return 2
    try:
        params = _scenario_params(args)
    except (OSError, json.JSONDecodeError, ValueError) as exc:
        print(f"bad parameters: {exc}", file=sys.stderr)
        return 2
    names = [n for n, _ in list_scenarios()] if args.scenario == "all" \
        else [args.scenario]
    try:
        if len(names) > 1 and args.jobs > 1:
            with ThreadPoolExecutor(max_workers=args.jobs) as pool:
                reports = list(pool.map(lambda n: run_scenario(n, params), names))
        else:
            reports = [run_scenario(n, params) for n in names]
    except UnknownScenarioError as exc:
        print(f"unknown scenario: {exc}", file=sys.stderr)
        return 2
    except ValueError as exc:
        print(f"bad parameters: {exc}", file=sys.stderr)
        return 2
    payload = reports[0].to_json_dict() if len(reports) == 1 \
        else {"artifact": "cohomcert", "reports":
              [r.to_json_dict() for r in reports]}
    _emit(payload, args, lambda: [
        _print_report(r, args.full, sys.stdout) for r in reports
    ])
    return 0 if all(r.passed for r in reports) else 1


def _cmd_reverify(args) -> int:
    try:
        with open(args.path) as fh:
            payload = json.load(fh)
    except (OSError, json.JSONDecodeError) as exc:
        print(f"cannot read report: {exc}", file=sys.stderr)
        return 2
    try:
        ok = reverify(payload)
    except MalformedReportError as exc:
        print(f"malformed report: {exc}", file=sys.stderr)
        return 2
    print("all certificates re-verified" if ok else "re-verification FAILED")
    return 0 if ok else 1


def _cmd_toeplitz(args) -> int:
    try:
        census = factor_census(args.n_max, args.p)
    except ValueError as exc:
        print(f"bad parameters: {exc}", file=sys.stderr)
        return 2
    payload = {"cumulative_count": census.cumulative_count,
               **census.to_json_dict()}

    def render():
        print(f"irreducible factors of Q_n(1,t) over GF({args.p})")
        print(f"{'n':>3s}  {'cum':>4s}  factorization")
        for row in census.rows:
            fac = " * ".join(
                f"({f})" if m == 1 else f"({f})^{m}"
                for f, m in row.factorization
            )
            print(f"{row.n:3d}  {row.cumulative_count:4d}  {fac}")
        print(f"distinct irreducible factors up to n = {args.n_max}: "
              f"{census.cumulative_count}")

    _emit(payload, args, render)
    return 0


def _cmd_torsion(args) -> int:
    try:
        primes = _parse_primes(args.primes)
        report = run_scenario("singh-p-torsion", {"primes": primes})
    except ValueError as exc:
        print(f"bad parameters: {exc}", file=sys.stderr)
        return 2
    _emit(report.to_json_dict(), args,
          lambda: _print_report(report, args.full, sys.stdout))
    return 0 if report.passed else 1


def main(argv=None) -> int:
    parser = _build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    if args.command == "list":
        return _cmd_list()
    if args.command == "run":
        return _cmd_run(args)
    if args.command == "reverify":
        return _cmd_reverify(args)
    if args.command == "toeplitz":
        return _cmd_toeplitz(args)
    if args.command == "torsion":
        return _cmd_torsion(args)
    return 2


if __name__ == "__main__":
    sys.exit(main())
