"""Command-line front end: ``heron-somos <table|verify|search|period|orbit|triangle>``.

Exit codes: 0 success, 1 verification failure, 2 usage error.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import os
import sys
from concurrent.futures import ThreadPoolExecutor

from .exact import int_text, is_prime
from .heron import main_sequence, schubert_from_triangle, theta_phi_of
from .modp import period_record
from .qrt import ProjValue, orbit_rows, write_orbit_csv
from .search import run_search
from .tables import Table, build_table, q
from .verify import SUITES, run_verify

EXIT_OK, EXIT_FAIL, EXIT_USAGE = 0, 1, 2
THREADS_ENV = "HERON_SOMOS_THREADS"


class UsageError(Exception):
    pass


def run_table(which: int, max_n: int | None = None) -> Table:
    return build_table(which, max_n)


def run_orbit(kind: str, count: int, out=None, approx: bool = False) -> str:
    """Write an exact orbit CSV; ``kind`` is uv, v, f or brahma."""
    if count < 1:
        raise ValueError("count must be at least 1")
    if kind == "brahma":
        ms = main_sequence()
        # n = 1 .. count, skipping nothing: the singular indices are all <= 0
        rows = [list(ms.brahma_point(n)) for n in range(1, count + 1)]
        return write_orbit_csv(rows, ["sin_psi_a", "sin_psi_b", "u"], out, approx, first_index=1)
    names = {"uv": ["u", "v"], "v": ["v"], "f": ["f"]}
    if kind not in names:
        raise ValueError(f"unknown orbit {kind!r}")
    return write_orbit_csv(orbit_rows(kind, count), names[kind], out, approx)


# ---- rendering ------------------------------------------------------------

def _render_rows(columns: list[str], rows: list[list[str]], fmt: str, extra: dict | None = None) -> str:
    if fmt == "json":
        return json.dumps({"columns": columns, "rows": rows, **(extra or {})}, indent=2) + "\n"
    if fmt == "csv":
        buf = io.StringIO()
        writer = csv.writer(buf, lineterminator="\n")
        writer.writerow(columns)
        writer.writerows(rows)
        return buf.getvalue()
    widths = [max(len(c), *(len(r[i]) for r in rows)) if rows else len(c) for i, c in enumerate(columns)]
    lines = ["  ".join(c.rjust(w) for c, w in zip(columns, widths))]
    lines += ["  ".join(x.rjust(w) for x, w in zip(r, widths)) for r in rows]
    for key, val in (extra or {}).items():
        lines.append(f"{key}: {json.dumps(val)}")
    return "\n".join(lines) + "\n"


def _emit(text: str, out: str | None) -> None:
    if out:
        with open(out, "w", newline="") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def _threads(args) -> int:
    if args.threads is not None:
        return args.threads
    env = os.environ.get(THREADS_ENV)
    if env is None:
        return 1
    try:
        value = int(env)
    except ValueError:
        raise UsageError(f"{THREADS_ENV} must be a positive integer, got {env!r}") from None
    if value < 1:
        raise UsageError(f"{THREADS_ENV} must be a positive integer, got {env!r}")
    return value


def _positive(text: str) -> int:
    try:
        value = int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected an integer, got {text!r}") from None
    if value < 1:
        raise argparse.ArgumentTypeError(f"expected a positive integer, got {value}")
    return value


# ---- subcommands ------------------------------------------------------------

def _cmd_table(args) -> int:
    if not 1 <= args.which <= 7:
        raise UsageError("table number must be between 1 and 7")
    t = run_table(args.which, args.max_n)
    _emit(_render_rows(t.columns, t.rows, args.format, {"table": t.number, **t.notes}), args.out)
    return EXIT_OK


def _cmd_verify(args) -> int:
    report = run_verify(args.suite, args.max_n or 300, args.prime_bound or 200, _threads(args))
    if args.format == "text":
        lines = [f"{'PASS' if c['passed'] else 'FAIL'}  {c['name']} ({c['checked']} cases)"
                 + (f"  first counterexample at {c['counterexample']}" if c["counterexample"] else "")
                 for c in report["checks"]]
        lines.append("all checks passed" if report["passed"] else "verification FAILED")
        text = "\n".join(lines) + "\n"
    else:
        text = json.dumps(report, indent=2) + "\n"
    _emit(text, args.out)
    return EXIT_OK if report["passed"] else EXIT_FAIL


def _cmd_search(args) -> int:
    hits = run_search(args.height or 12)
    rows = [[q(h.theta), q(h.phi), str(h.triangle.a), str(h.triangle.b), str(h.triangle.c),
             q(h.triangle.k), q(h.triangle.l), q(h.triangle.area), h.classification] for h in hits]
    cols = ["theta", "phi", "a", "b", "c", "k", "l", "area", "class"]
    _emit(_render_rows(cols, rows, args.format), args.out)
    return EXIT_OK


def _cmd_period(args) -> int:
    bound = args.prime_bound or 200
    primes = [p for p in range(2, bound) if is_prime(p)]
    tasks = [(w, p) for w in args.seq for p in primes]
    threads = _threads(args)
    if threads > 1:
        with ThreadPoolExecutor(threads) as pool:
            records = list(pool.map(lambda wp: {"seq": wp[0], **period_record(*wp)}, tasks))
    else:
        records = [{"seq": w, **period_record(w, p)} for w, p in tasks]
    if args.format == "json":
        text = "".join(json.dumps(r) + "\n" for r in records)
    else:
        cols = ["seq", "p", "t", "A_plus", "A_minus", "B_star", "lstar", "period", "zero_residues", "method"]
        rows = [[str(r[c]) if c != "zero_residues" else " ".join(map(str, r[c])) for c in cols] for r in records]
        text = _render_rows(cols, rows, args.format)
    _emit(text, args.out)
    return EXIT_OK


def _cmd_orbit(args) -> int:
    text = run_orbit(args.map, args.count, None, args.approx)
    _emit(text, args.out)
    return EXIT_OK


def _json_big(data: dict) -> str:
    # json.dumps refuses huge ints, so integers go in as raw number tokens
    marks = {}
    def swap(v):
        if isinstance(v, int) and not isinstance(v, bool):
            key = f"@@int{len(marks)}@@"
            marks[f'"{key}"'] = int_text(v)
            return key
        return v
    text = json.dumps({k: swap(v) for k, v in data.items()}, indent=2)
    for key, digits in marks.items():
        text = text.replace(key, digits)
    return text + "\n"


def _cmd_triangle(args) -> int:
    ms = main_sequence()
    t = ms.triangle(args.n)
    A = schubert_from_triangle(t, "k")
    B = schubert_from_triangle(t, "l")
    theta, phi = theta_phi_of(t)
    bp = ms.brahmagupta(args.n)
    data = {
        "n": args.n, "a": t.a, "b": t.b, "c": t.c, "k": q(t.k), "l": q(t.l), "area": t.area,
        "schubert_a": [q(x) for x in A], "schubert_b": [q(x) for x in B],
        "theta": q(theta), "phi": q(phi),
        "brahmagupta": {"p": q(bp.p), "q": q(bp.q), "r": q(bp.r)},
        "failed_invariants": t.check(),
    }
    if args.format == "json":
        text = _json_big(data)
    else:
        flat = [[k, json.dumps(v) if isinstance(v, (list, dict)) else (int_text(v) if isinstance(v, int) else str(v))] for k, v in data.items()]
        text = _render_rows(["field", "value"], flat, args.format)
    _emit(text, args.out)
    return EXIT_OK if not data["failed_invariants"] else EXIT_FAIL


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="heron-somos", description=__doc__.splitlines()[0])
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--format", choices=("text", "json", "csv"), help="default: json for verify and period, text otherwise")
    common.add_argument("--out", metavar="PATH")
    common.add_argument("--threads", type=_positive, help=f"worker threads (fallback: ${THREADS_ENV})")
    common.add_argument("--max-n", type=_positive)
    common.add_argument("--prime-bound", type=_positive)
    common.add_argument("--height", type=_positive)
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("table", parents=[common], help="reproduce one of the tables 1-7")
    p.add_argument("which", type=int)
    p.set_defaults(func=_cmd_table)

    p = sub.add_parser("verify", parents=[common], help="run identity verification suites")
    p.add_argument("suite", nargs="?", default="all", choices=("all", *SUITES))
    p.set_defaults(func=_cmd_verify)

    p = sub.add_parser("search", parents=[common], help="search (theta, phi) by height")
    p.set_defaults(func=_cmd_search)

    p = sub.add_parser("period", parents=[common], help="periods of S and T modulo primes")
    p.add_argument("--seq", choices=("S", "T"), action="append")
    p.set_defaults(func=_cmd_period)

    p = sub.add_parser("orbit", parents=[common], help="export an orbit as exact CSV")
    p.add_argument("map", choices=("uv", "v", "f", "brahma"))
    p.add_argument("--count", type=_positive, default=10)
    p.add_argument("--approx", action="store_true", help="add a decimal column per value")
    p.set_defaults(func=_cmd_orbit)

    p = sub.add_parser("triangle", parents=[common], help="show main-sequence triangle n")
    p.add_argument("n", type=_positive)
    p.set_defaults(func=_cmd_triangle)
    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_OK if exc.code == 0 else EXIT_USAGE
    if args.format is None:
        args.format = "json" if args.command in ("verify", "period") else "text"
    if args.command == "period" and not args.seq:
        args.seq = ["S", "T"]
    try:
        return args.func(args)
    except UsageError as exc:
        print(f"heron-somos: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except OSError as exc:
        print(f"heron-somos: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
