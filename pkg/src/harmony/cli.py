"""Command-line front end.

Machine-readable key=value lines go to stdout, diagnostics and repro
material to stderr. Exit codes: 0 ok, 1 verification failure or mismatch,
2 unusable input, 3 height condition unmet, 4 search budget exhausted.
"""

from __future__ import annotations

import argparse
import hashlib
import os
import random
import sys
import time
from collections import Counter
from dataclasses import dataclass, field

from .coloring import (
    TheoremPreconditionError,
    emit_coloring,
    is_harmonious,
    parse_coloring,
    predict_h,
)
from .construct import ConstructionDefect, GreedyConfig, harmonious_color
from .exact import SearchBudgetExceeded, exact_h
from .forest import Forest, GraphInputError, emit_edge_list, parse_edge_list
from .instances import (
    build_double_broom,
    build_t_delta,
    enumerate_trees,
    prufer_decode,
    prufer_encode,
    random_theorem_instance,
)

EXIT_OK = 0
EXIT_MISMATCH = 1
EXIT_INPUT = 2
EXIT_PRECONDITION = 3
EXIT_TIMEOUT = 4


@dataclass
class RunReport:
    command: str
    digest: str = "none"
    seed: int | None = None
    summary: dict = field(default_factory=dict)
    seconds: float = 0.0

    def emit(self, stream=None):
        out = stream or sys.stdout
        print(f"command={self.command}", file=out)
        print(f"digest={self.digest}", file=out)
        print(f"seed={'none' if self.seed is None else self.seed}", file=out)
        for key, val in self.summary.items():
            print(f"{key}={_fmt(val)}", file=out)
        print(f"seconds={self.seconds:.6f}", file=out)


def _fmt(val):
    if isinstance(val, bool):
        return "true" if val else "false"
    if val is None:
        return "none"
    if isinstance(val, float):
        return f"{val:.6f}"
    if isinstance(val, (list, tuple)):
        return ",".join(_fmt(v) for v in val)
    return str(val)


def _read_bytes(path: str) -> bytes:
    if path == "-":
        return sys.stdin.buffer.read()
    with open(path, "rb") as fh:
        return fh.read()


def _read_graph(path: str):
    data = _read_bytes(path)
    return parse_edge_list(data), hashlib.sha256(data).hexdigest()


def _write_text(path: str | None, text: str):
    if path is None or path == "-":
        sys.stdout.write(text)
    else:
        with open(path, "w") as fh:
            fh.write(text)


def _ceil_div(a, b):
    return -(-a // b)


def cmd_color(args) -> int:
    t0 = time.perf_counter()
    f, digest = _read_graph(args.graph)
    cfg = GreedyConfig(seed=args.seed, max_retries=args.max_retries)
    try:
        res = harmonious_color(f, cfg)
    except TheoremPreconditionError as exc:
        print("error=precondition", file=sys.stdout)
        print(f"slack={exc.slack}", file=sys.stdout)
        print(str(exc), file=sys.stderr)
        return EXIT_PRECONDITION
    text = emit_coloring(res.coloring)
    report = RunReport(
        command="color",
        digest=digest,
        seed=args.seed,
        summary={
            "n": f.n,
            "m": f.edge_count,
            "delta": f.max_degree(),
            "colors": res.colors_used,
            "case_trace": [tag.value for tag in res.case_trace],
            "verified": res.verified,
            "fallbacks": res.fallbacks,
        },
        seconds=time.perf_counter() - t0,
    )
    if args.out:
        _write_text(args.out, text)
        report.emit(sys.stdout)
    else:
        sys.stdout.write(text)
        report.emit(sys.stderr)
    return EXIT_OK if res.verified else EXIT_MISMATCH


def cmd_exact(args) -> int:
    t0 = time.perf_counter()
    f, digest = _read_graph(args.graph)
    res = exact_h(f, budget=args.budget)
    report = RunReport(
        command="exact",
        digest=digest,
        summary={
            "h": res.h,
            "lower_bound": res.lower_bound,
            "nodes": res.nodes_explored,
            "timed_out": res.timed_out,
        },
        seconds=time.perf_counter() - t0,
    )
    if res.timed_out:
        report.emit(sys.stdout)
        return EXIT_TIMEOUT
    if args.out and res.witness is not None:
        _write_text(args.out, emit_coloring(res.witness))
    report.emit(sys.stdout)
    return EXIT_OK


def cmd_verify(args) -> int:
    t0 = time.perf_counter()
    f, digest = _read_graph(args.graph)
    coloring = parse_coloring(_read_bytes(args.coloring))
    if coloring.n != f.n:
        raise GraphInputError(
            f"coloring describes {coloring.n} vertices, graph has {f.n}")
    ok = is_harmonious(f, coloring)
    report = RunReport(
        command="verify",
        digest=digest,
        summary={
            "verified": ok,
            "colors": coloring.distinct_colors(),
            "k": coloring.k,
        },
        seconds=time.perf_counter() - t0,
    )
    report.emit(sys.stdout)
    return EXIT_OK if ok else EXIT_MISMATCH


def cmd_predict(args) -> int:
    t0 = time.perf_counter()
    f, digest = _read_graph(args.graph)
    try:
        h = predict_h(f)
    except TheoremPreconditionError as exc:
        print("error=precondition", file=sys.stdout)
        print(f"slack={exc.slack}", file=sys.stdout)
        print(str(exc), file=sys.stderr)
        return EXIT_PRECONDITION
    report = RunReport(
        command="predict",
        digest=digest,
        summary={
            "h": h,
            "n": f.n,
            "delta": f.max_degree(),
            "slack": 3 * f.max_degree() - (f.n + 2),
        },
        seconds=time.perf_counter() - t0,
    )
    report.emit(sys.stdout)
    return EXIT_OK


def cmd_gen(args) -> int:
    if args.kind == "t-delta":
        f = build_t_delta(args.delta)
        label = f"t-delta delta={args.delta}"
    elif args.kind == "double-broom":
        f = build_double_broom(args.q, args.d1, args.d2)
        label = f"double-broom q={args.q} d1={args.d1} d2={args.d2}"
    else:
        f = random_theorem_instance(
            args.n, args.delta, args.nonadjacent, args.seed)
        label = (f"random n={args.n} delta={args.delta} "
                 f"nonadjacent={_fmt(args.nonadjacent)} seed={args.seed}")
    text = f"# {label}\n" + emit_edge_list(f)
    _write_text(args.out, text)
    return EXIT_OK


def _check_one(t: Forest, budget: int):
    """Returns (colors, exact_or_none, fallbacks); raises on defects."""
    res = harmonious_color(t)
    predicted = predict_h(t)
    if res.colors_used != predicted:
        raise AssertionError(
            f"construction used {res.colors_used}, predicted {predicted}")
    er = exact_h(t, budget=budget)
    if er.timed_out:
        return res, None, res.fallbacks
    if er.h != res.colors_used:
        raise AssertionError(
            f"exact optimum {er.h}, construction used {res.colors_used}")
    return res, er.h, res.fallbacks


def _is_bad(t: Forest, budget: int) -> bool:
    try:
        _check_one(t, budget)
    except Exception:
        return True
    return False


def _shrink_repro(t: Forest, budget: int) -> Forest:
    """Smallest failing tree along code prefixes (symbols folded into
    range), or the original if every prefix passes.
    """
    try:
        code = prufer_encode(t)
    except ValueError:
        return t
    for length in range(len(code) + 1):
        folded = tuple(s % (length + 2) for s in code[:length])
        try:
            cand = prufer_decode(folded)
        except (ValueError, GraphInputError):
            continue
        if 3 * cand.max_degree() < cand.n + 2:
            continue
        if _is_bad(cand, budget):
            return cand
    return t


def cmd_theorem_check(args) -> int:
    t0 = time.perf_counter()
    budget = args.budget
    histogram: Counter = Counter()
    mismatches = 0
    fallbacks = 0
    oracle_skipped = 0
    repro: Forest | None = None
    top = args.n_max
    for n in range(2, min(top, 9) + 1):
        qualifying = 0
        before = mismatches
        for t in enumerate_trees(n):
            if 3 * t.max_degree() < t.n + 2:
                continue
            qualifying += 1
            try:
                res, exact, fb = _check_one(t, budget)
            except Exception as exc:
                mismatches += 1
                if repro is None:
                    repro = _shrink_repro(t, budget)
                    print(f"mismatch: n={n}: {exc}", file=sys.stderr)
                continue
            if exact is None:
                oracle_skipped += 1
            fallbacks += fb
            histogram[res.case_trace[-1].value] += 1
        print(f"n={n} mode=exhaustive qualifying={qualifying} "
              f"mismatches={mismatches - before}")
    for n in range(10, min(top, 14) + 1):
        qualifying = 0
        before = mismatches
        for i in range(args.sample):
            rng = random.Random(f"check:{n}:{i}")
            lo = _ceil_div(n + 2, 3)
            delta = rng.randint(max(lo, 3), n - 1)
            want = n >= 2 * delta + 1 and rng.random() < 0.5
            t = random_theorem_instance(n, delta, want, seed=i)
            qualifying += 1
            try:
                res, exact, fb = _check_one(t, budget)
            except Exception as exc:
                mismatches += 1
                if repro is None:
                    repro = _shrink_repro(t, budget)
                    print(f"mismatch: n={n} seed={i}: {exc}", file=sys.stderr)
                continue
            if exact is None:
                oracle_skipped += 1
            fallbacks += fb
            histogram[res.case_trace[-1].value] += 1
        print(f"n={n} mode=sample qualifying={qualifying} "
              f"mismatches={mismatches - before}")
    for tag in sorted(histogram):
        print(f"case.{tag}={histogram[tag]}")
    print(f"mismatches={mismatches}")
    print(f"fallbacks={fallbacks}")
    print(f"oracle_skipped={oracle_skipped}")
    print(f"seconds={time.perf_counter() - t0:.3f}")
    if repro is not None:
        print("minimal repro edge list:", file=sys.stderr)
        sys.stderr.write(emit_edge_list(repro))
    return EXIT_OK if mismatches == 0 and fallbacks == 0 else EXIT_MISMATCH


def _build_star(n):
    if n < 5:
        raise ValueError("star family needs n >= 5")
    return Forest(n, [(0, v) for v in range(1, n)])


def _build_spider(n):
    # legs of length 2 from a center (one short leg when n is even)
    if n < 7:
        raise ValueError("spider family needs n >= 7")
    long_legs, short_legs = divmod(n - 1, 2)
    edges = []
    nxt = 1
    for _ in range(long_legs):
        edges.append((0, nxt))
        edges.append((nxt, nxt + 1))
        nxt += 2
    for _ in range(short_legs):
        edges.append((0, nxt))
        nxt += 1
    return Forest(n, edges)


def _build_caterpillar(n):
    # shortest spine whose vertices can absorb the leaves at degree <= delta
    if n < 7:
        raise ValueError("caterpillar family needs n >= 7")
    delta = _ceil_div(n + 2, 3)
    spine = max(2, _ceil_div(n, delta - 1))
    edges = [(i, i + 1) for i in range(spine - 1)]
    nxt = spine
    budget = n - spine
    for i in range(spine):
        cap = delta - (1 if i in (0, spine - 1) else 2)
        take = min(budget, cap)
        for _ in range(take):
            edges.append((i, nxt))
            nxt += 1
        budget -= take
    if budget:
        raise ValueError("spine cannot absorb the leaves")
    return Forest(n, edges)


def cmd_bench(args) -> int:
    n = args.n
    if args.family == "star":
        f = _build_star(n)
    elif args.family == "spider":
        f = _build_spider(n)
    elif args.family == "caterpillar":
        f = _build_caterpillar(n)
    else:
        delta = args.delta if args.delta else _ceil_div(n + 2, 3)
        f = random_theorem_instance(n, delta, False, seed=args.seed or 0)
    times = []
    colors = 0
    fallbacks = 0
    for _ in range(args.repeat):
        t0 = time.perf_counter()
        res = harmonious_color(f)
        times.append(time.perf_counter() - t0)
        colors = res.colors_used
        fallbacks += res.fallbacks
    mean = sum(times) / len(times)
    report = RunReport(
        command="bench",
        seed=args.seed,
        summary={
            "family": args.family,
            "n": n,
            "delta": f.max_degree(),
            "repeat": args.repeat,
            "colors": colors,
            "verified": True,
            "fallbacks": fallbacks,
            "seconds_mean": mean,
            "seconds_min": min(times),
            "per_vertex": mean / n,
        },
        seconds=sum(times),
    )
    report.emit(sys.stdout)
    return EXIT_OK


def _parser() -> argparse.ArgumentParser:
    top = argparse.ArgumentParser(
        prog="harmony",
        description="Optimal harmonious coloring of tall forests.")
    sub = top.add_subparsers(dest="command", required=True)

    p = sub.add_parser("color", help="color a forest optimally")
    p.add_argument("graph", help="edge list file, or - for stdin")
    p.add_argument("--seed", type=int, default=None)
    p.add_argument("--max-retries", type=int, default=8, dest="max_retries")
    p.add_argument("--out", default=None, help="coloring file destination")
    p.set_defaults(func=cmd_color)

    p = sub.add_parser("exact", help="exact optimum by backtracking")
    p.add_argument("graph")
    p.add_argument("--budget", type=int, default=10 ** 8)
    p.add_argument("--out", default=None, help="witness coloring destination")
    p.set_defaults(func=cmd_exact)

    p = sub.add_parser("verify", help="check a coloring file against a graph")
    p.add_argument("graph")
    p.add_argument("coloring")
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("predict", help="closed-form optimum for tall forests")
    p.add_argument("graph")
    p.set_defaults(func=cmd_predict)

    p = sub.add_parser("gen", help="emit example instances")
    gsub = p.add_subparsers(dest="kind", required=True)
    g = gsub.add_parser("t-delta", help="the sharpness family")
    g.add_argument("--delta", type=int, required=True)
    g.add_argument("--out", default=None)
    g.set_defaults(func=cmd_gen)
    g = gsub.add_parser("double-broom", help="two stars joined by a path")
    g.add_argument("--q", type=int, required=True)
    g.add_argument("--d1", type=int, required=True)
    g.add_argument("--d2", type=int, default=None)
    g.add_argument("--out", default=None)
    g.set_defaults(func=cmd_gen)
    g = gsub.add_parser("random", help="seeded tall tree")
    g.add_argument("--n", type=int, required=True)
    g.add_argument("--delta", type=int, required=True)
    g.add_argument("--nonadjacent", action="store_true")
    g.add_argument("--seed", type=int, default=0)
    g.add_argument("--out", default=None)
    g.set_defaults(func=cmd_gen)

    p = sub.add_parser("theorem-check",
                       help="construction vs exact optimum over small trees")
    p.add_argument("--n-max", type=int, default=7, dest="n_max")
    p.add_argument("--budget", type=int, default=10 ** 6)
    p.add_argument("--sample", type=int, default=200,
                   help="instances per order in sampling mode (n >= 10)")
    p.set_defaults(func=cmd_theorem_check)

    p = sub.add_parser("bench", help="time the construction on a family")
    p.add_argument("--family", required=True,
                   choices=["star", "spider", "caterpillar", "random-theorem"])
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--delta", type=int, default=None)
    p.add_argument("--repeat", type=int, default=3)
    p.add_argument("--seed", type=int, default=None)
    p.set_defaults(func=cmd_bench)
    return top


def entry(argv=None) -> int:
    args = _parser().parse_args(argv)
    env_seed = os.environ.get("HARMONY_SEED")
    if env_seed is not None and hasattr(args, "seed"):
        try:
            args.seed = int(env_seed)
        except ValueError:
            print(f"HARMONY_SEED is not an integer: {env_seed!r}",
                  file=sys.stderr)
            return EXIT_INPUT
    try:
        return args.func(args)
    except (GraphInputError, FileNotFoundError, IsADirectoryError,
            PermissionError) as exc:
        print(f"input error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    except TheoremPreconditionError as exc:
        print(f"precondition: {exc}", file=sys.stderr)
        return EXIT_PRECONDITION
    except SearchBudgetExceeded as exc:
        print(f"timeout: {exc}", file=sys.stderr)
        return EXIT_TIMEOUT
    except ConstructionDefect as exc:
        print(f"defect: {exc}", file=sys.stderr)
        return EXIT_MISMATCH
    except ValueError as exc:
        print(f"input error: {exc}", file=sys.stderr)
        return EXIT_INPUT


def main():
    sys.exit(entry())


if __name__ == "__main__":
    main()
