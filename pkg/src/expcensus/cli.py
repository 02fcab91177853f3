"""Command-line front end.

Every file written starts with ``# expcensus <version> <command line>`` so
that tables can be traced back to the invocation that produced them.  Exit
status: 0 on success, 1 on a computational error or a failed verification
check, 2 on a usage error.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import math
import shlex
import sys

from . import __version__
from .census import SEED_DENSITIES, family_census
from .characteristic import characteristic_direct, characteristic_ee, characteristic_split
from .counting import SWEEP_HEADER, count_parameters, count_sweep
from .errors import ExpCensusError
from .iterates import FamilyPoint, eval_f
from .quadrature import DEFAULT_NODE_BUDGET
from .verify import CSV_HEADER, SUITES, VerifyConfig, all_passed, results_csv, run_all


# alternative suite names accepted on the command line
SUITE_ALIASES = {"lemma_ec": "gaussian_cosine"}


def parse_grid(text: str) -> list[float]:
    """``A:B:STEP`` -> ``[A, A+STEP, ..., B]`` (inclusive)."""
    try:
        a, b, step = (float(x) for x in text.split(":"))
    except ValueError:
        raise argparse.ArgumentTypeError(f"grid must look like A:B:STEP, got {text!r}")
    if step <= 0 or b < a or a <= 0:
        raise argparse.ArgumentTypeError("grid needs 0 < A <= B and STEP > 0")
    n = int(math.floor((b - a) / step + 1e-9))
    return [round(a + i * step, 12) for i in range(n + 1)]


def _positive(text: str) -> float:
    v = float(text)
    if not v > 0:
        raise argparse.ArgumentTypeError(f"expected a positive number, got {text}")
    return v


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="expcensus", description=__doc__.splitlines()[0])
    p.add_argument("--version", action="version", version=f"expcensus {__version__}")
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--format", choices=("csv", "jsonl"), default="csv")
    common.add_argument("--threads", type=int, default=None,
                        help="worker cap (work is vectorized in one process)")
    common.add_argument("--out", default=None, help="output file (default: stdout)")
    sub = p.add_subparsers(dest="command", required=True)

    s = sub.add_parser("iterate", parents=[common], help="value and derivative of f_m")
    s.add_argument("--m", type=int, required=True)
    s.add_argument("--r", type=_positive, required=True)
    s.add_argument("--theta", type=float, default=0.0)

    s = sub.add_parser("characteristic", parents=[common], help="T(r, f_m) by quadrature")
    s.add_argument("--m", type=int, default=3)
    s.add_argument("--r", type=_positive, required=True)
    s.add_argument("--method", choices=("direct", "split", "ee"), default="direct")
    s.add_argument("--node-budget", type=int, default=DEFAULT_NODE_BUDGET)

    for name, text in (("count", "n(r) and N(r) at one radius"),
                       ("census", "all parameters in a disk, as JSON lines")):
        s = sub.add_parser(name, parents=[common], help=text)
        s.add_argument("--k", type=int, required=True)
        s.add_argument("--l", type=int, required=True)
        s.add_argument("--r", type=_positive, required=True)
        if name == "census":
            s.add_argument("--seed-density", type=int, default=SEED_DENSITIES[0])

    s = sub.add_parser("sweep", parents=[common], help="counting table along a radius grid")
    s.add_argument("--k", type=int, required=True)
    s.add_argument("--l", type=int, required=True)
    s.add_argument("--grid", type=parse_grid, required=True, help="A:B:STEP, inclusive")

    s = sub.add_parser("verify", parents=[common], help="run the verification suites")
    s.add_argument("--suite", action="append", choices=SUITES + tuple(SUITE_ALIASES), default=None,
                   help="suite to run (repeatable; default: all)")
    s.add_argument("--timings", action="store_true",
                   help="record wall-clock runtime_ms (makes output run-dependent)")
    return p


def _emit(text: str, out: str | None, header: str) -> None:
    body = header + "\n" + text
    if out is None:
        sys.stdout.write(body)
    else:
        with open(out, "w", encoding="utf-8", newline="") as fh:
            fh.write(body)


def _scalar(text: str):
    """Recover numbers and nulls from table cells for JSON output."""
    if text in ("None", ""):
        return None
    for conv in (int, float):
        try:
            return conv(text)
        except ValueError:
            pass
    return text


def _table(header: list[str], rows: list[list[str]], fmt: str) -> str:
    if fmt == "jsonl":
        return "".join(json.dumps({h: _scalar(c) for h, c in zip(header, row)}) + "\n"
                       for row in rows)
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(header)
    w.writerows(rows)
    return buf.getvalue()


def _cmd_iterate(args, header):
    prof = eval_f(args.m, FamilyPoint(args.r, args.theta))
    lines = [f"m={prof.m}", f"lambda={prof.point.lam!r}", f"value={prof.value}",
             f"derivative={prof.derivative}"]
    if prof.log_value is not None:
        lines.append(f"log_value={prof.log_value}")
    _emit("\n".join(lines) + "\n", args.out, header)


def _cmd_characteristic(args, header):
    if args.method == "ee":
        rep = characteristic_ee(args.r, node_budget=args.node_budget)
    elif args.method == "split":
        rep = characteristic_split(args.m, args.r, node_budget=args.node_budget)
    else:
        rep = characteristic_direct(args.m, args.r, node_budget=args.node_budget)
    fields = ["r", "m", "method", "value", "abs_error_estimate", "nodes_used", "delta_r",
              "inner", "outer", "outer_bound"]
    row = [repr(getattr(rep, f)) if isinstance(getattr(rep, f), float) else str(getattr(rep, f))
           for f in fields]
    _emit(_table(fields, [row], args.format), args.out, header)


def _cmd_count(args, header):
    rep = count_parameters(args.k, args.l, args.r)
    line = (f"n={rep.n} n_A={rep.n_A} n_B={rep.n_B} n_paper_formula={rep.n_paper_formula} "
            f"N={rep.N!r} N_A_bar={rep.N_A_bar!r} r={rep.r!r} contour={rep.contour_radius_used!r}")
    _emit(line + "\n", args.out, header)


def _cmd_census(args, header):
    d = args.seed_density
    fc = family_census(args.k, args.l, args.r, densities=(d, 2 * d, 4 * d))
    _emit("".join(rec.to_json() + "\n" for rec in fc.records()), args.out, header)


def _cmd_sweep(args, header):
    rows = count_sweep(args.k, args.l, args.grid)
    _emit(_table(SWEEP_HEADER, [row.csv_fields() for row in rows], args.format), args.out, header)


def _cmd_verify(args, header) -> int:
    suites = None if args.suite is None else [SUITE_ALIASES.get(x, x) for x in args.suite]
    results = run_all(VerifyConfig(suites=suites))
    if args.format == "jsonl":
        lines = list(csv.reader(io.StringIO(results_csv(results, args.timings))))
        text = _table(CSV_HEADER, lines[1:], "jsonl")
    else:
        text = results_csv(results, timings=args.timings)
    _emit(text, args.out, header)
    return 0 if all_passed(results) else 1


COMMANDS = {
    "iterate": _cmd_iterate,
    "characteristic": _cmd_characteristic,
    "count": _cmd_count,
    "census": _cmd_census,
    "sweep": _cmd_sweep,
    "verify": _cmd_verify,
}


def main(argv: list[str] | None = None) -> int:
    argv = list(sys.argv[1:] if argv is None else argv)
    parser = build_parser()
    args = parser.parse_args(argv)
    header = f"# expcensus {__version__} {shlex.join(['expcensus', *argv])}"
    try:
        status = COMMANDS[args.command](args, header)
    except ExpCensusError as exc:
        print(f"{type(exc).__name__}: {exc}", file=sys.stderr)
        return 1
    except ValueError as exc:
        print(f"usage error: {exc}", file=sys.stderr)
        return 2
    return status or 0


if __name__ == "__main__":
    sys.exit(main())
