"""Command-line entry point.

    qsl2 dims --r 3
    qsl2 verify --r 3 --suite all
    qsl2 maxwell-solve --r 3 --source theta --gauge lorentz

Output is JSON on stdout (or ``--out``).  Exit status: 0 on success, 1 when a
certificate fails or a source has no solution, 2 on invalid configuration.
"""

from __future__ import annotations

import argparse
import json
import logging
import sys
from pathlib import Path

from . import __version__
from .certificates import SUITES, run_suite, suites_for
from .derham import complex_for
from .expr import ExpressionError
from .hodge import hodge_for, star_table_json
from .maxwell import NAMED_SOURCES, GaugeInfeasible, NoSolution, maxwell_for

COMMANDS = ("dims", "cohomology", "hodge-check", "maxwell-report", "maxwell-solve",
            "verify", "export-operator")
OPERATORS = ("d", "star", "delta", "laplacian", "theta", "max", "wedge")


class ConfigError(Exception):
    pass


def _odd_r(text: str) -> int:
    try:
        r = int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"r must be an integer, got {text!r}")
    if r < 3 or r % 2 == 0:
        raise argparse.ArgumentTypeError(f"r must be odd and at least 3, got {r}")
    return r


def _degree(text: str) -> int:
    k = int(text)
    if not 0 <= k <= 4:
        raise argparse.ArgumentTypeError("degree must be 0..4")
    return k


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--r", type=_odd_r, default=3, help="odd root of unity order (default 3)")
    common.add_argument("--tier", choices=("fast", "slow"), default="fast",
                        help="slow allows r >= 7")
    common.add_argument("--out", type=Path, help="write JSON here instead of stdout")
    common.add_argument("--cache-dir", type=Path, help="reuse operator matrices stored here")
    common.add_argument("--table", action="store_true", help="human-readable table instead of JSON")
    common.add_argument("-v", "--verbose", action="store_true")

    p = argparse.ArgumentParser(prog="qsl2", description=__doc__.split("\n")[0])
    p.add_argument("--version", action="version", version=__version__)
    sub = p.add_subparsers(dest="command", required=True, metavar="command")
    sub.add_parser("dims", parents=[common], help="all/closed/exact form counts")
    c = sub.add_parser("cohomology", parents=[common], help="cohomology dims and representatives")
    c.add_argument("--degree", type=_degree)
    sub.add_parser("hodge-check", parents=[common], help="harmonic counts and Hodge identities")
    sub.add_parser("maxwell-report", parents=[common], help="zero-mode and source counts")
    s = sub.add_parser("maxwell-solve", parents=[common], help="solve Max A = J")
    s.add_argument("--source", required=True,
                   help=f"one of {', '.join(NAMED_SOURCES)}, a file with a form (JSON or expression), "
                        "or an expression")
    s.add_argument("--gauge", choices=("none", "lorentz", "temporal"), default="none")
    v = sub.add_parser("verify", parents=[common], help="run certificate suites")
    v.add_argument("--suite", default="all", help=f"all or one of: {', '.join(SUITES)}")
    v.add_argument("--all-r", action="store_true", help="every r the suite covers, ignoring --r")
    e = sub.add_parser("export-operator", parents=[common], help="matrix or structure-constant JSON")
    e.add_argument("--op", choices=OPERATORS, default="d")
    e.add_argument("--degree", type=_degree, default=0)
    return p


# -- commands -----------------------------------------------------------------


def _complex(args):
    cx = complex_for(args.r)
    if args.cache_dir is not None:
        from .cache import OperatorCache
        OperatorCache(args.cache_dir, args.r, __version__).preload_complex(cx)
    return cx


def cmd_dims(args):
    return _complex(args).report(), True


def cmd_cohomology(args):
    cx = _complex(args)
    if args.degree is None:
        return {"r": args.r, "dims": [cx.cohomology_dim(k) for k in range(5)]}, True
    h = cx.cohomology(args.degree)
    return {"r": args.r, "degree": args.degree, "dim": h["dim"],
            "canonical_basis": [w.to_json_obj() for w in h["canonical_basis"]]}, True


def cmd_hodge_check(args):
    _complex(args)
    h = hodge_for(args.r)
    out = h.report()
    checks = {f"star^2 = id on degree {k}": v for k, v in h.star_squared_is_identity().items()}
    checks.update({f"delta^2 = 0 from degree {k}": v for k, v in h.delta_squared_is_zero().items()})
    out["checks"] = checks
    ok = all(checks.values())
    if args.r == 3:
        harm, spec = h.harmonic_certificates(), h.spin0_spectrum_report()
        out["harmonic_certificates"] = harm
        out["spin0_spectrum"] = spec
        ok = ok and harm["pass"] and spec["pass"]
    out["pass"] = ok
    return out, ok


def cmd_maxwell_report(args):
    _complex(args)
    return maxwell_for(args.r).report(), True


def _read_source(cx, spec: str):
    if spec in NAMED_SOURCES:
        return cx.parse(NAMED_SOURCES[spec])
    path = Path(spec)
    text = path.read_text() if path.is_file() else spec
    stripped = text.strip()
    if stripped.startswith("{"):
        return cx.from_json_obj(json.loads(stripped))
    return cx.parse(stripped)


def cmd_maxwell_solve(args):
    cx = _complex(args)
    try:
        J = _read_source(cx, args.source)
    except (ExpressionError, ValueError, KeyError) as exc:
        raise ConfigError(f"cannot read source {args.source!r}: {exc}")
    if J.degree != 1:
        raise ConfigError(f"sources are 1-forms, got degree {J.degree}")
    gauge = None if args.gauge == "none" else args.gauge
    try:
        sol = maxwell_for(args.r).solve_source(J, gauge=gauge)
    except (NoSolution, GaugeInfeasible) as exc:
        return {"r": args.r, "error": type(exc).__name__, "message": str(exc)}, False
    return {"r": args.r, **sol.to_json_obj()}, sol.residual_ok


def cmd_verify(args):
    try:
        suites = suites_for(args.suite)
    except KeyError:
        raise ConfigError(f"unknown suite {args.suite!r}")
    slow = args.tier == "slow"
    r = None if args.all_r else args.r
    results = []
    for s in suites:
        res = run_suite(s, r, slow)
        if res["results"]:
            results.append(res)
    if not results:
        raise ConfigError(f"suite {args.suite!r} has no checks at r = {args.r} in tier {args.tier}")
    ok = all(x["pass"] for x in results)
    summary = {x["suite"]: x["pass"] for x in results}
    return {"r": r, "tier": args.tier, "summary": summary, "suites": results, "pass": ok}, ok


def cmd_export_operator(args):
    cx = _complex(args)
    k, op = args.degree, args.op
    if op == "star":
        return json.loads(star_table_json(args.r)), True
    if op == "wedge":
        blocks = [json.loads(cx.ext.wedge_table_json(i, j))
                  for i in range(5) for j in range(5 - i)]
        return {"r": args.r, "tables": blocks}, True
    if op in ("d", "theta") and k == 4:
        raise ConfigError(f"{op} is defined on degrees 0..3")
    if op == "delta" and k == 0:
        raise ConfigError("delta is defined on degrees 1..4")
    if op == "max":
        M = maxwell_for(args.r).max_operator()
    elif op == "d":
        M = cx.d_matrix(k)
    elif op == "theta":
        M = cx.theta_matrix(k)
    elif op == "delta":
        M = hodge_for(args.r).codifferential(k)
    else:
        M = hodge_for(args.r).laplacian(k)
    return {"op": op, "deg": k, **M.to_json_obj()}, True


HANDLERS = {
    "dims": cmd_dims, "cohomology": cmd_cohomology, "hodge-check": cmd_hodge_check,
    "maxwell-report": cmd_maxwell_report, "maxwell-solve": cmd_maxwell_solve,
    "verify": cmd_verify, "export-operator": cmd_export_operator,
}


# -- output ---------------------------------------------------------------------


def render_table(command: str, obj: dict) -> str:
    lines = []
    if command == "dims":
        lines.append(f"r = {obj['r']}      " + "".join(f"{k:>6}" for k in range(5)))
        for key in ("all", "closed", "exact"):
            lines.append(f"{key:<12}" + "".join(f"{x:>6}" for x in obj[key]))
    elif command == "hodge-check":
        for key in ("all", "closed", "exact", "harmonic", "ker_box"):
            if key in obj:
                lines.append(f"{key:<12}" + "".join(f"{x:>6}" for x in obj[key]))
    elif command == "maxwell-report":
        lines.append(f"{'r = ' + str(obj['r']):<16}{'mod exact':>10}{'raw':>8}")
        for row in obj["zero_modes"]:
            lines.append(f"{row['name']:<16}{row['dim']:>10}{row['raw']:>8}")
        for name, n in obj["sources"].items():
            lines.append(f"{name:<16}{n:>10}")
    elif command == "verify":
        for name, ok in obj["summary"].items():
            lines.append(f"{'PASS' if ok else 'FAIL'}  {name}")
    else:
        return json.dumps(obj, indent=2)
    return "\n".join(lines)


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING,
                        format="%(levelname)s %(name)s: %(message)s")
    if args.r > 5 and args.tier != "slow":
        print(f"qsl2: error: r = {args.r} needs --tier slow", file=sys.stderr)
        return 2
    try:
        obj, ok = HANDLERS[args.command](args)
    except ConfigError as exc:
        print(f"qsl2: error: {exc}", file=sys.stderr)
        return 2
    if args.table:
        text = render_table(args.command, obj)
    elif args.command == "export-operator":
        text = json.dumps(obj, separators=(",", ":"))
    else:
        text = json.dumps(obj, indent=2)
    if args.out is not None:
        args.out.write_text(text + "\n")
    else:
        sys.stdout.write(text + "\n")
    return 0 if ok else 1


if __name__ == "__main__":
    sys.exit(main())
