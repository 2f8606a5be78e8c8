"""Command-line interface.

Exit codes: 0 success, 1 validation failure (including disagreeing
algorithms in ``compare`` and rejected certificates), 2 parse or I/O error,
3 resource limit hit.
"""

from __future__ import annotations

import argparse
import csv
import os
import sys
from concurrent.futures import ThreadPoolExecutor
from typing import Sequence

from .bench import CSV_FIELDS, loglog_slope, median_times, run_bench
from .core import ValidationError, normalize
from .formats import ParseError, emit_instance, emit_solution, parse_instance, parse_solution
from .generator import GeneratorConfig, generate
from .oracle import DEFAULT_BUDGET, BudgetExceeded
from .representing import SizeOverflow
from .solver import ALGORITHMS, instance_digest, solve, verify_certificate

BUDGET_ENV = "HBMATCH_ORACLE_BUDGET"

EXIT_OK, EXIT_INVALID, EXIT_PARSE, EXIT_RESOURCE = 0, 1, 2, 3


def oracle_budget() -> int:
    raw = os.environ.get(BUDGET_ENV)
    if raw is None:
        return DEFAULT_BUDGET
    try:
        value = int(raw)
    except ValueError:
        raise ParseError(f"{BUDGET_ENV} must be an integer, got {raw!r}") from None
    if value < 1:
        raise ParseError(f"{BUDGET_ENV} must be positive")
    return value


def _read(path: str) -> str:
    if path == "-":
        return sys.stdin.read()
    with open(path, encoding="utf-8") as fh:
        return fh.read()


def _write(path: str, text: str) -> None:
    if path == "-":
        sys.stdout.write(text)
        return
    with open(path, "w", encoding="utf-8") as fh:
        fh.write(text)


def _csv_list(text: str, conv=str) -> list:
    return [conv(t.strip()) for t in text.split(",") if t.strip()]


def cmd_solve(args: argparse.Namespace) -> int:
    inst = parse_instance(_read(args.input))
    report = solve(inst, args.algo, oracle_budget=oracle_budget(), greedy=not args.no_greedy)
    norm = normalize(inst)
    if args.out:
        _write(args.out, emit_solution(norm, report))
    if args.out != "-":
        extra = " ".join(f"{k}={v}" for k, v in sorted(report.counters.items()))
        print(f"size {report.cardinality}" + (f"  {extra}" if extra else ""))
    return EXIT_OK


def cmd_validate(args: argparse.Namespace) -> int:
    inst = parse_instance(_read(args.input))
    norm = normalize(inst)
    changed = sum(a != b for a, b in zip(inst.b + inst.c, norm.b + norm.c))
    print(f"ok: n={inst.n} m={inst.m} edges={len(inst.edges)} "
          f"normalization changes {changed} bound(s)")
    if args.solution:
        sol = parse_solution(_read(args.solution))
        if sol.edges != norm.edges:
            print("solution edges do not match the instance", file=sys.stderr)
            return EXIT_INVALID
        if sol.digest != instance_digest(inst):
            print("warning: solution digest differs from the instance digest", file=sys.stderr)
        cert = verify_certificate(norm, sol.x, oracle_budget())
        if not cert.ok:
            for v in cert.violations:
                print(f"violation: {v.describe(norm)}", file=sys.stderr)
            if cert.optimum is not None and not cert.violations:
                print(f"not optimal: size {sol.size}, optimum {cert.optimum}", file=sys.stderr)
            return EXIT_INVALID
        status = "optimal" if cert.optimal else "feasible (optimality not checked)"
        print(f"solution {status}, size {sol.size}")
    return EXIT_OK


def cmd_gen(args: argparse.Namespace) -> int:
    cfg = GeneratorConfig(
        n=args.n, density=args.density, max_b=args.max_b, max_c=args.max_c,
        depth=args.depth, branching=(args.branching[0], args.branching[1]),
        seed=args.seed, max_edges=args.max_edges,
    )
    _write(args.out, emit_instance(generate(cfg)))
    return EXIT_OK


def cmd_compare(args: argparse.Namespace) -> int:
    inst = parse_instance(_read(args.input))
    algos = _csv_list(args.algos)
    for a in algos:
        if a not in ALGORITHMS:
            raise ParseError(f"unknown algorithm {a!r}", "--algos")
    budget = oracle_budget()

    def run(algo: str):
        return solve(inst, algo, oracle_budget=budget)

    with ThreadPoolExecutor(max_workers=max(1, args.workers)) as pool:
        reports = list(pool.map(run, algos))
    for rep in reports:
        print(f"{rep.algorithm:10s} size {rep.cardinality:6d}  {rep.elapsed_us / 1e3:10.2f} ms")
    exact = {r.cardinality for r in reports if r.algorithm != "flow-only"}
    if len(exact) > 1:
        print("algorithms disagree", file=sys.stderr)
        return EXIT_INVALID
    return EXIT_OK


def cmd_bench(args: argparse.Namespace) -> int:
    sizes = _csv_list(args.sizes, int)
    rows = run_bench(sizes, args.trials, args.density, args.seed, args.algo,
                     args.workers, greedy=not args.no_greedy)
    out = sys.stdout if args.out in (None, "-") else open(args.out, "w", newline="", encoding="utf-8")
    try:
        w = csv.writer(out)
        w.writerow(CSV_FIELDS)
        for r in rows:
            w.writerow(r.as_csv())
    finally:
        if out is not sys.stdout:
            out.close()
    over = [r for r in rows if r.augmentations > r.bound]
    for r in over:
        print(f"n={r.n} trial={r.trial}: {r.augmentations} augmentations exceed {r.bound}",
              file=sys.stderr)
    if len(sizes) >= 2:
        print(f"log-log slope {loglog_slope(median_times(rows)):.2f}", file=sys.stderr)
    return EXIT_INVALID if over else EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="hbmatch", description="Maximum hierarchical b-matching solver")
    sub = p.add_subparsers(dest="command", required=True)

    s = sub.add_parser("solve", help="solve an instance file")
    s.add_argument("--in", dest="input", required=True, help="instance JSON ('-' for stdin)")
    s.add_argument("--algo", choices=ALGORITHMS, default="poly")
    s.add_argument("--out", help="write the solution JSON here ('-' for stdout)")
    s.add_argument("--seed", type=int, default=0,
                   help="accepted for reproducible scripts; every algorithm is deterministic")
    s.add_argument("--no-greedy", action="store_true",
                   help="skip the saturation pass between flow stage and augmentation")
    s.set_defaults(func=cmd_solve)

    v = sub.add_parser("validate", help="check an instance, optionally a solution for it")
    v.add_argument("--in", dest="input", required=True)
    v.add_argument("--solution", help="solution JSON to certify")
    v.set_defaults(func=cmd_validate)

    g = sub.add_parser("gen", help="generate a random instance")
    g.add_argument("--n", type=int, required=True)
    g.add_argument("--density", type=float, default=0.5)
    g.add_argument("--out", default="-")
    g.add_argument("--seed", type=int, default=0)
    g.add_argument("--max-b", type=int, default=3)
    g.add_argument("--max-c", type=int, default=2)
    g.add_argument("--depth", type=int, default=2)
    g.add_argument("--branching", type=int, nargs=2, default=(2, 3), metavar=("LO", "HI"))
    g.add_argument("--max-edges", type=int)
    g.set_defaults(func=cmd_gen)

    c = sub.add_parser("compare", help="run several algorithms on one instance")
    c.add_argument("--in", dest="input", required=True)
    c.add_argument("--algos", default="poly,pseudo,oracle")
    c.add_argument("--workers", type=int, default=1)
    c.set_defaults(func=cmd_compare)

    b = sub.add_parser("bench", help="time solves on generated instances, CSV output")
    b.add_argument("--sizes", default="100,200,400,800")
    b.add_argument("--trials", type=int, default=1)
    b.add_argument("--density", type=float, default=0.05)
    b.add_argument("--seed", type=int, default=0)
    b.add_argument("--algo", choices=ALGORITHMS, default="poly")
    b.add_argument("--workers", type=int, default=1)
    b.add_argument("--out", help="CSV path (default stdout)")
    b.add_argument("--no-greedy", action="store_true")
    b.set_defaults(func=cmd_bench)
    return p


def main(argv: Sequence[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except ParseError as exc:
        print(f"parse error: {exc}", file=sys.stderr)
        return EXIT_PARSE
    except (ValidationError, ValueError) as exc:
        print(f"invalid: {exc}", file=sys.stderr)
        return EXIT_INVALID
    except (SizeOverflow, BudgetExceeded) as exc:
        print(f"resource limit: {exc}", file=sys.stderr)
        return EXIT_RESOURCE
    except OSError as exc:
        print(f"i/o error: {exc}", file=sys.stderr)
        return EXIT_PARSE


if __name__ == "__main__":
    sys.exit(main())
