"""Command-line front end.

Subcommands: ``solve`` (approximation pipeline), ``exact`` (brute-force
oracle), ``validate`` (schema + metric checks), ``gen`` (seeded random
instances), ``bench`` (sweep seeded families, compare against the oracle, and
assert the approximation bounds).

Exit codes: 0 success; 1 usage/IO/schema errors; 2 "no feasible solution"
(solve/exact) or "some approximation bound violated" (bench).

``FAIRMSR_THREADS`` caps bench worker threads (default 1); results are
ordered by instance id either way, so output bytes do not depend on it.
"""

from __future__ import annotations

import argparse
import csv
import io
import os
import sys
import time
from concurrent.futures import ThreadPoolExecutor

from .assign import MODES
from .generate import generate_instance
from .instance import (
    Instance,
    SchemaError,
    SolutionMeta,
    instance_to_json,
    read_instance,
    solution_to_json,
    validate_metric,
    write_instance,
    write_solution,
)
from .oracle import OracleLimitError, exact_msr
from .search import solve

import json

__all__ = ["main"]


def _fail(message: str) -> int:
    print(f"error: {message}", file=sys.stderr)
    return 1


def _parse_ratio(text: str) -> tuple[int, ...]:
    try:
        parts = tuple(int(x) for x in text.split(":"))
    except ValueError:
        raise ValueError(f"expected a colon-separated integer ratio, got {text!r}") from None
    if not parts:
        raise ValueError("empty ratio")
    return parts


def _emit_json(doc: dict, out: str | None) -> None:
    text = json.dumps(doc, indent=2, allow_nan=False) + "\n"
    if out is None:
        sys.stdout.write(text)
    else:
        with open(out, "w", encoding="utf-8") as fh:
            fh.write(text)


def _load_checked(path: str) -> Instance:
    inst = read_instance(path)
    violation = validate_metric(inst.dist)
    if violation is not None:
        raise SchemaError(f"distance_matrix: not a metric: {violation.message}")
    return inst


def cmd_solve(args: argparse.Namespace) -> int:
    try:
        inst = _load_checked(args.infile)
        result = solve(
            inst, eps=args.eps, mode=args.mode, timing=args.timing, seed=args.seed
        )
    except (SchemaError, ValueError, OSError) as exc:
        return _fail(str(exc))
    _emit_json(solution_to_json(result.clustering, result.feasible, result.meta), args.out)
    return 0 if result.feasible else 2


def cmd_exact(args: argparse.Namespace) -> int:
    try:
        inst = _load_checked(args.infile)
        solution = exact_msr(inst, max_n=args.max_exact_n)
    except (SchemaError, OracleLimitError, ValueError, OSError) as exc:
        return _fail(str(exc))
    meta = SolutionMeta(seed=args.seed)
    if solution is None:
        _emit_json(solution_to_json(None, False, meta), args.out)
        return 2
    _emit_json(solution_to_json(solution.clustering, True, meta), args.out)
    return 0


def cmd_validate(args: argparse.Namespace) -> int:
    try:
        inst = read_instance(args.infile)
    except (SchemaError, OSError) as exc:
        return _fail(str(exc))
    violation = validate_metric(inst.dist)
    if violation is not None:
        return _fail(f"distance_matrix: {violation.message}")
    print(
        f"ok: n={inst.n} k={inst.k} colors={inst.n_colors} "
        f"constraint={inst.constraint.kind} epsilon={inst.epsilon}"
    )
    return 0


def cmd_gen(args: argparse.Namespace) -> int:
    ratio = None
    try:
        if args.ratio is not None:
            ratio = _parse_ratio(args.ratio)
        b = _parse_ratio(args.b) if args.b is not None else None
        if b is not None and len(b) != 2:
            raise ValueError(f"balance must be a p:q pair, got {args.b!r}")
        kind = args.constraint
        if kind is None:
            kind = "exact_fairness" if ratio is not None else "none"
        inst = generate_instance(
            n=args.n,
            k=args.k,
            kind=kind,
            n_colors=args.colors,
            ratio=ratio,
            b=b,
            ell=args.ell,
            eps=args.eps if args.eps is not None else 0.5,
            geometry=args.geometry,
            seed=args.seed,
        )
    except ValueError as exc:
        return _fail(str(exc))
    if args.out is None:
        _emit_json(instance_to_json(inst), None)
    else:
        try:
            write_instance(args.out, inst)
        except OSError as exc:
            return _fail(str(exc))
    return 0


_BENCH_SUITES = ("general", "one_one", "lower_bound")
_GENERAL_KINDS = ("exact_fairness", "exact_balance", "ratio_balance", "lu_fairness")


def _bench_tasks(suite: str, count: int, seed: int, eps: float) -> list[dict]:
    tasks = []
    if suite == "general":
        for i in range(count):
            kind = _GENERAL_KINDS[i % 4]
            n = (6, 8)[(i // 4) % 2]
            k = (2, 3)[(i // 8) % 2]
            geometry = ("euclidean", "graph")[(i // 2) % 2]
            ratio: tuple[int, ...] | None = None
            b: tuple[int, int] | None = None
            if kind == "exact_fairness":
                ratio = (1, 1, 2) if n % 4 == 0 else (1, 1, 1)
            elif kind == "ratio_balance":
                # b must admit the global histogram the ratio produces.
                ratio = (1, 2) if n % 3 == 0 else (1, 3)
                b = ratio
            tasks.append(
                dict(
                    instance_id=f"general-{i:03d}",
                    kind=kind,
                    n=n,
                    k=k,
                    ratio=ratio,
                    b=b,
                    geometry=geometry,
                    seed=seed + i,
                    bound=6.0 - 3.0 / k + eps,
                )
            )
    elif suite == "one_one":
        for i in range(count):
            n = (4, 6, 8)[i % 3]
            k = (2, 3)[(i // 3) % 2]
            geometry = ("euclidean", "graph")[(i // 6) % 2]
            tasks.append(
                dict(
                    instance_id=f"one_one-{i:03d}",
                    kind="exact_fairness",
                    n=n,
                    k=k,
                    ratio=(1, 1),
                    geometry=geometry,
                    seed=seed + 10000 + i,
                    bound=3.0 * (1.0 + eps),
                )
            )
    elif suite == "lower_bound":
        for i in range(count):
            n = (6, 7, 8)[i % 3]
            k = (2, 3)[(i // 3) % 2]
            geometry = ("euclidean", "graph")[(i // 6) % 2]
            tasks.append(
                dict(
                    instance_id=f"lower_bound-{i:03d}",
                    kind="lower_bound",
                    n=n,
                    k=k,
                    ratio=None,
                    geometry=geometry,
                    seed=seed + 20000 + i,
                    bound=3.0 * (1.0 + eps),
                )
            )
    else:
        raise ValueError(f"unknown suite {suite!r}")
    return tasks


def _bench_row(task: dict, eps: float, timing: bool) -> dict:
    inst = generate_instance(
        n=task["n"],
        k=task["k"],
        kind=task["kind"],
        ratio=task["ratio"],
        b=task.get("b"),
        eps=eps,
        geometry=task["geometry"],
        seed=task["seed"],
    )
    t0 = time.perf_counter()
    result = solve(inst, seed=task["seed"])
    elapsed = int(round((time.perf_counter() - t0) * 1000.0)) if timing else 0
    oracle = exact_msr(inst)
    if oracle is None or result.clustering is None:
        raise RuntimeError(f"{task['instance_id']}: expected a feasible instance")
    cost = result.clustering.cost
    opt = oracle.opt_cost
    return dict(
        instance_id=task["instance_id"],
        n=task["n"],
        k=task["k"],
        constraint=task["kind"],
        eps=eps,
        opt=opt,
        cost=cost,
        ratio=cost / opt,
        bound=task["bound"],
        elapsed_ms=elapsed,
    )


def cmd_bench(args: argparse.Namespace) -> int:
    eps = args.eps if args.eps is not None else 0.5
    suites = _BENCH_SUITES if args.suite == "all" else (args.suite,)
    try:
        tasks = [t for s in suites for t in _bench_tasks(s, args.count, args.seed, eps)]
    except ValueError as exc:
        return _fail(str(exc))

    threads = int(os.environ.get("FAIRMSR_THREADS", "1") or "1")
    try:
        if threads > 1:
            with ThreadPoolExecutor(max_workers=threads) as pool:
                rows = list(pool.map(lambda t: _bench_row(t, eps, args.timing), tasks))
        else:
            rows = [_bench_row(t, eps, args.timing) for t in tasks]
    except (ValueError, RuntimeError, OracleLimitError) as exc:
        return _fail(str(exc))

    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(
        ["instance_id", "n", "k", "constraint", "eps", "opt", "cost", "ratio", "bound", "elapsed_ms"]
    )
    violations = 0
    for row in rows:
        if row["ratio"] > row["bound"] + 1e-9:
            violations += 1
        writer.writerow([row[c] for c in (
            "instance_id", "n", "k", "constraint", "eps", "opt", "cost", "ratio", "bound", "elapsed_ms"
        )])
    text = buf.getvalue()
    if args.out is None:
        sys.stdout.write(text)
    else:
        try:
            with open(args.out, "w", encoding="utf-8") as fh:
                fh.write(text)
        except OSError as exc:
            return _fail(str(exc))
    worst = max((r["ratio"] / r["bound"] for r in rows), default=0.0)
    print(
        f"bench: {len(rows)} instances, {violations} bound violations, "
        f"worst ratio/bound = {worst:.4f}",
        file=sys.stderr,
    )
    return 2 if violations else 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="fairmsr",
        description="Min-sum-radii clustering under mergeable fairness constraints.",
        epilog="Environment: FAIRMSR_THREADS caps bench worker threads.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p_solve = sub.add_parser("solve", help="run the approximation pipeline on an instance")
    p_solve.add_argument("--in", dest="infile", required=True, help="instance JSON path")
    p_solve.add_argument("--out", default=None, help="solution JSON path (default stdout)")
    p_solve.add_argument("--eps", type=float, default=None, help="override instance epsilon")
    p_solve.add_argument("--mode", choices=MODES, default="auto", help="assignment strategy")
    p_solve.add_argument("--seed", type=int, default=0, help="seed recorded in the output meta")
    p_solve.add_argument("--timing", action="store_true", help="record real elapsed_ms (breaks byte-identical reruns)")
    p_solve.set_defaults(func=cmd_solve)

    p_exact = sub.add_parser("exact", help="brute-force optimal solution (small n only)")
    p_exact.add_argument("--in", dest="infile", required=True)
    p_exact.add_argument("--out", default=None)
    p_exact.add_argument("--max-exact-n", type=int, default=12, help="enumeration guard")
    p_exact.add_argument("--seed", type=int, default=0)
    p_exact.set_defaults(func=cmd_exact)

    p_val = sub.add_parser("validate", help="check an instance file (schema, metric, colors)")
    p_val.add_argument("--in", dest="infile", required=True)
    p_val.set_defaults(func=cmd_validate)

    p_gen = sub.add_parser("gen", help="generate a seeded random instance")
    p_gen.add_argument("--n", type=int, required=True)
    p_gen.add_argument("--k", type=int, required=True)
    p_gen.add_argument("--colors", type=int, default=None, help="number of colors")
    p_gen.add_argument("--constraint", choices=("none", "exact_fairness", "ratio_balance", "exact_balance", "lu_fairness", "lower_bound"), default=None, help="constraint kind (default: exact_fairness when --ratio is given, else none)")
    p_gen.add_argument("--ratio", default=None, help="global color counts as a ratio, e.g. 1:1 or 1:1:2")
    p_gen.add_argument("--b", default=None, help="ratio_balance parameter p:q")
    p_gen.add_argument("--ell", type=int, default=None, help="lower_bound cluster size")
    p_gen.add_argument("--geometry", choices=("euclidean", "graph"), default="euclidean")
    p_gen.add_argument("--eps", type=float, default=None, help="epsilon stored in the instance (default 0.5)")
    p_gen.add_argument("--seed", type=int, default=0)
    p_gen.add_argument("--out", default=None, help="instance JSON path (default stdout)")
    p_gen.set_defaults(func=cmd_gen)

    p_bench = sub.add_parser("bench", help="sweep seeded families and assert the approximation bounds")
    p_bench.add_argument("--suite", choices=_BENCH_SUITES + ("all",), default="all")
    p_bench.add_argument("--count", type=int, default=12, help="instances per suite")
    p_bench.add_argument("--seed", type=int, default=0)
    p_bench.add_argument("--eps", type=float, default=None, help="epsilon for all instances (default 0.5)")
    p_bench.add_argument("--out", default=None, help="CSV path (default stdout)")
    p_bench.add_argument("--timing", action="store_true", help="record real per-instance elapsed_ms")
    p_bench.set_defaults(func=cmd_bench)
    return parser


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    return args.func(args)


if __name__ == "__main__":
    sys.exit(main())
