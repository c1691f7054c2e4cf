"""Command-line driver: ``solve``, ``translate``, ``verify``, ``oracle`` and
``bench``.

Exit codes of ``solve`` and ``oracle``: 0 optimum found, 20 hard constraints
unsatisfiable, 10 unknown (budget exhausted), 2 bad input or flags.
"""

from __future__ import annotations

import argparse
import csv
import io
import sys
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from pathlib import Path

from .encodings import SCHEMES
from .errors import EncodingBudgetError, HardViolation, ParseError, UsageError
from .model import PBOInstance, SolveOutcome, Status, VarPool, WBOFormula, cost_of
from .msu import solve_wmsu1
from .oracle import brute_force
from .parser_io import (
    OPB,
    WCNF,
    parse_any,
    read_model,
    write_opb,
    write_solution,
    write_wbo,
    write_wcnf,
)
from .translate import pbo_to_maxsat, pbo_to_wbo, wbo_to_pbo
from .wbo_core import solve_linear_search, solve_wbo, to_clausal

ENGINES = ("wmsu1", "wbo-native", "wbo-cnf", "linear")
EXIT_CODES = {Status.OPTIMUM: 0, Status.HARD_INFEASIBLE: 20, Status.RESOURCE_OUT: 10}
INSTANCE_SUFFIXES = (".wcnf", ".cnf", ".opb", ".wbo")
BENCH_HEADER = ["name", "engine", "status", "cost", "time", "iterations", "core_sizes"]


@dataclass
class Problem:
    """A parsed input ready for any engine."""

    fmt: str
    instance: WBOFormula | PBOInstance

    @property
    def num_vars(self) -> int:
        return self.instance.num_vars

    @property
    def offset(self) -> int:
        return self.instance.offset if isinstance(self.instance, PBOInstance) else 0

    def default_engine(self) -> str:
        return "wmsu1" if self.fmt == WCNF else "wbo-native"

    def as_wbo(self) -> WBOFormula:
        """Formula over the original variables (objective terms as soft units)."""
        if isinstance(self.instance, PBOInstance):
            return pbo_to_wbo(self.instance)
        return self.instance

    def as_maxsat(self) -> WBOFormula:
        """Clause-only formula whose first ``num_vars`` variables are the
        original ones."""
        if isinstance(self.instance, PBOInstance):
            return pbo_to_maxsat(self.instance)
        if self.instance.is_clausal:
            return self.instance
        return to_clausal(self.instance, VarPool(self.instance.num_vars))


def load(path: str | Path) -> Problem:
    fmt, instance = parse_any(Path(path).read_text())
    return Problem(fmt, instance)


def run_engine(problem: Problem, engine: str, *, card: str = "ladder", equals1: bool = True,
               share: bool = True, seed: int = 0, timeout: float | None = None) -> SolveOutcome:
    """Solve ``problem``; the model is restricted to the original variables."""
    if engine == "wmsu1":
        out = solve_wmsu1(problem.as_maxsat(), card=card, equals1=equals1, seed=seed, timeout=timeout)
    elif engine in ("wbo-native", "wbo-cnf"):
        out = solve_wbo(problem.as_wbo(), engine[4:], share=share, card=card, seed=seed, timeout=timeout)
    elif engine == "linear":
        out = solve_linear_search(problem.as_wbo(), seed=seed, timeout=timeout)
    else:
        raise UsageError(f"unknown engine {engine!r}")
    if out.model is not None:
        out.model = out.model.restrict(problem.num_vars)
    return out


def _fail(message: str) -> int:
    print(f"error: {message}", file=sys.stderr)
    return 2


def cmd_solve(args) -> int:
    problem = load(args.path)
    engine = args.engine or problem.default_engine()
    if args.cardinality is not None and engine != "wmsu1":
        return _fail(f"--{args.cardinality} only applies to --engine wmsu1")
    if args.share is not None and engine not in ("wbo-native", "wbo-cnf"):
        return _fail("--share/--no-share only apply to the wbo engines")
    out = run_engine(problem, engine, card=args.card, equals1=args.cardinality != "atmost1",
                     share=args.share is not False, seed=args.seed, timeout=args.timeout)
    write_solution(out, sys.stdout, problem.offset)
    return EXIT_CODES[out.status]


def cmd_oracle(args) -> int:
    problem = load(args.path)
    out = brute_force(problem.as_wbo(), var_limit=args.var_limit)
    write_solution(out, sys.stdout, problem.offset)
    return EXIT_CODES[out.status]


def cmd_verify(args) -> int:
    problem = load(args.instance)
    model = read_model(Path(args.model).read_text(), problem.num_vars)
    try:
        cost = cost_of(problem.as_wbo(), model)
    except HardViolation as exc:
        print(f"violated: {exc}")
        return 1
    print(f"cost {cost + problem.offset}")
    return 0


def cmd_translate(args) -> int:
    problem = load(args.path)
    inst = problem.instance
    if args.to == "wcnf":
        text = write_wcnf(problem.as_maxsat())
    elif args.to == "wbo":
        text = write_wbo(problem.as_wbo())
    else:
        text = write_opb(inst if isinstance(inst, PBOInstance) else wbo_to_pbo(inst))
    if problem.offset and args.to != "opb":
        print(f"warning: objective offset {problem.offset} is dropped", file=sys.stderr)
    if args.output:
        Path(args.output).write_text(text)
    else:
        sys.stdout.write(text)
    return 0


def bench_one(path: str, engine: str, seed: int, timeout: float | None) -> list[str]:
    """One CSV row; failures become an ``ERROR`` row instead of raising."""
    name = Path(path).name
    start = time.perf_counter()
    try:
        problem = load(path)
        out = run_engine(problem, engine, seed=seed, timeout=timeout)
    except (ParseError, UsageError, OverflowError, EncodingBudgetError, OSError) as exc:
        return [name, engine, "ERROR", "", f"{time.perf_counter() - start:.3f}", "", str(exc)]
    elapsed = time.perf_counter() - start
    cost = "" if out.cost is None else str(out.cost + problem.offset)
    return [name, engine, out.status.value, cost, f"{elapsed:.3f}", str(out.stats.iterations),
            " ".join(map(str, out.stats.core_sizes))]


def _bench_task(task):
    return bench_one(*task)


def cmd_bench(args) -> int:
    directory = Path(args.dir)
    if not directory.is_dir():
        return _fail(f"{directory} is not a directory")
    files = sorted(p for p in directory.iterdir() if p.suffix in INSTANCE_SUFFIXES)
    engines = [e.strip() for e in args.engines.split(",") if e.strip()]
    unknown = [e for e in engines if e not in ENGINES]
    if unknown:
        return _fail(f"unknown engine(s): {', '.join(unknown)}")
    tasks = [(str(p), e, args.seed, args.timeout) for e in engines for p in files]
    if args.jobs > 1:
        with ProcessPoolExecutor(args.jobs) as pool:
            rows = list(pool.map(_bench_task, tasks))
    else:
        rows = [_bench_task(t) for t in tasks]
    if args.no_timing:
        for row in rows:
            row[4] = ""
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(BENCH_HEADER)
    writer.writerows(rows)
    for e in engines:
        solved = sum(1 for r in rows if r[1] == e and r[2] in (Status.OPTIMUM.value, Status.HARD_INFEASIBLE.value))
        writer.writerow(["TOTAL", e, "solved", f"{solved}/{len(files)}", "", "", ""])
    if args.output:
        Path(args.output).write_text(buf.getvalue(), encoding="utf-8")
    else:
        sys.stdout.write(buf.getvalue())
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="wbo", description="Weighted Boolean Optimization solvers.")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("solve", help="solve a WCNF, OPB or WBO-OPB file")
    p.add_argument("path")
    p.add_argument("--engine", choices=ENGINES, help="default: wmsu1 for WCNF, wbo-native otherwise")
    p.add_argument("--card", choices=SCHEMES, default="ladder", help="CNF cardinality encoding")
    group = p.add_mutually_exclusive_group()
    group.add_argument("--atmost1", dest="cardinality", action="store_const", const="atmost1")
    group.add_argument("--equals1", dest="cardinality", action="store_const", const="equals1")
    p.add_argument("--timeout", type=float, default=None, help="wall-clock limit in seconds")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--share", action=argparse.BooleanOptionalAction, default=None,
                   help="share relaxation variables between core constraints (wbo engines; default on)")
    p.set_defaults(func=cmd_solve)

    p = sub.add_parser("oracle", help="solve by exhaustive enumeration")
    p.add_argument("path")
    p.add_argument("--var-limit", type=int, default=20)
    p.set_defaults(func=cmd_oracle)

    p = sub.add_parser("verify", help="check a v-line model against an instance")
    p.add_argument("instance")
    p.add_argument("model")
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("translate", help="convert between formats")
    p.add_argument("path")
    p.add_argument("--to", choices=("wcnf", "opb", "wbo"), required=True)
    p.add_argument("-o", "--output")
    p.set_defaults(func=cmd_translate)

    p = sub.add_parser("bench", help="run engines over a directory, CSV report")
    p.add_argument("dir")
    p.add_argument("--engines", default=",".join(ENGINES))
    p.add_argument("--timeout", type=float, default=60.0)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--jobs", type=int, default=1)
    p.add_argument("--no-timing", action="store_true", help="leave the time column empty")
    p.add_argument("-o", "--output")
    p.set_defaults(func=cmd_bench)
    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except (ParseError, UsageError, OverflowError, EncodingBudgetError) as exc:
        return _fail(str(exc))
    except OSError as exc:
        return _fail(str(exc))


if __name__ == "__main__":
    sys.exit(main())
