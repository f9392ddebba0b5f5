"""Command-line front end: ``slicecomp <command> ...``.

Exit codes: 0 success, 1 failed check, 2 usage or input error.
"""
from __future__ import annotations

import argparse
import sys
from pathlib import Path

from . import bench
from .automaton import AutomatonError, prune_dead
from .lasso import check_complement, check_equivalent
from .oaf import OafError, read_oaf, write_oaf
from .parity import complement_via_dpw
from .preopt import maximize_acceptance, simplify_nbw
from .randgen import GenSpec, PRNG_ID, derive_seeds, write_corpus
from .slices import (
    BudgetExceeded, SliceConfig, SliceContext, complement_slice, decorated_trace,
    reduced_split_tree_prefix, slice_label,
)


class UsageError(Exception):
    pass


def _flags(text: str | None, allowed: str) -> set[str]:
    if not text:
        return set()
    flags = {f.strip().upper() for f in text.replace(",", " ").split()}
    flags = {c for f in flags for c in f}
    bad = flags - set(allowed)
    if bad:
        raise UsageError(f"unknown heuristic(s): {', '.join(sorted(bad))} (allowed: {allowed})")
    return flags


def cmd_generate(args) -> int:
    seeds = derive_seeds(args.seed, args.count)
    specs = [GenSpec(args.n, args.sigma, args.r, args.f, s) for s in seeds]
    manifest = write_corpus(specs, args.out)
    print(f"wrote {args.count} automata to {args.out} ({manifest.name}, prng {PRNG_ID})")
    return 0


def cmd_complement(args) -> int:
    a = read_oaf(args.input)
    if args.construction != "slice":
        raise UsageError("only the slice construction complements NBWs; use 'convert' for DPWs")
    flags = _flags(args.heuristics, "PADRM")
    if "P" in flags:
        a = simplify_nbw(a)
    if "A" in flags:
        a = maximize_acceptance(a)
    c = complement_slice(a, SliceConfig.parse(flags), max_states=args.max_states)
    if args.prune:
        c = prune_dead(c)
    _output(c, args)
    return 0


def cmd_convert(args) -> int:
    dpw = read_oaf(args.input)
    flags = _flags(args.heuristics, "SE")
    c = complement_via_dpw(dpw, simplify="S" in flags, improved="E" in flags)
    _output(c, args)
    return 0


def _output(c, args) -> None:
    if args.out:
        write_oaf(c, args.out, with_labels=args.labels)
        print(f"{c.num_states} states, {c.num_transitions} transitions -> {args.out}")
    else:
        from .oaf import emit_oaf
        sys.stdout.write(emit_oaf(c, with_labels=args.labels))


def cmd_check(args) -> int:
    a, b = read_oaf(args.a), read_oaf(args.b)
    check = check_complement if args.mode == "complement" else check_equivalent
    verdict = check(a, b, args.max_u, args.max_v)
    print(f"{args.mode}: {verdict.describe()}")
    return 0 if verdict else 1


def _trace_levels(a, word, decorated, start):
    if decorated:
        return decorated_trace(a, word, start=start)
    return reduced_split_tree_prefix(a, word)


def _dot(a, word, levels) -> str:
    ctx = SliceContext(a)
    out = ["digraph trace {", "  node [shape=plaintext];"]
    names = a.labels
    for k, s in enumerate(levels):
        for j, node in enumerate(s):
            out.append(f'  n{k}_{j} [label="{slice_label((node,), names)}"];')
    for k, sym in enumerate(word):
        child = 0
        for j, (left, right) in enumerate(ctx.split(levels[k], ctx.sym(sym))):
            for part in (left, right):
                if part:
                    out.append(f'  n{k}_{j} -> n{k + 1}_{child} [label="{sym}"];')
                    child += 1
    out.append("}")
    return "\n".join(out) + "\n"


def cmd_trace(args) -> int:
    a = read_oaf(args.input)
    word = [s for s in args.word.split(",") if s] if args.word else []
    levels = _trace_levels(a, word, args.decorated, args.start)
    if args.format == "dot":
        sys.stdout.write(_dot(a, word, levels))
        return 0
    for k, s in enumerate(levels):
        sym = word[k - 1] if k else "-"
        print(f"{k:>3}  {sym:<6} {slice_label(s, a.labels)}")
    return 0


def _load_corpus(path: Path):
    manifest = path / "manifest.txt"
    if manifest.exists():
        names = []
        for line in manifest.read_text(encoding="utf-8").splitlines():
            if line.strip() and not line.startswith("#"):
                parts = line.split()
                names.append((parts[0], path / parts[-1]))
    else:
        names = [(p.stem, p) for p in sorted(path.glob("*.oaf"))]
    if not names:
        raise UsageError(f"no automata found in {path}")
    return [(tid, read_oaf(p)) for tid, p in names]


def cmd_bench(args) -> int:
    tasks = _load_corpus(Path(args.corpus))
    try:
        pipelines = [bench.Pipeline.parse(p) for p in args.pipelines.split(",") if p.strip()]
    except ValueError as e:
        raise UsageError(str(e)) from e
    records = bench.run_bench(tasks, pipelines, args.timeout_ms, args.state_budget, args.jobs)
    if args.csv:
        bench.write_csv(records, args.csv)
    stats = bench.aggregate_stats(records)
    print(bench.format_table(stats))
    universal = sum(1 for r in records if r.universal)
    done = sum(1 for r in records if r.outcome == bench.DONE)
    if done:
        print(f"universal inputs among finished tasks: {universal}/{done}")
    return 0


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="slicecomp", description=__doc__.splitlines()[0])
    sub = p.add_subparsers(dest="command", required=True)

    g = sub.add_parser("generate", help="random NBW corpus (Tabakov-Vardi model)")
    g.add_argument("--n", type=int, required=True)
    g.add_argument("--sigma", type=int, default=2)
    g.add_argument("--r", type=str, required=True, help="transition density")
    g.add_argument("--f", type=str, required=True, help="acceptance density")
    g.add_argument("--count", type=int, default=1)
    g.add_argument("--seed", type=int, default=0)
    g.add_argument("--out", required=True)
    g.set_defaults(func=cmd_generate)

    c = sub.add_parser("complement", help="complement an NBW")
    c.add_argument("--in", dest="input", required=True)
    c.add_argument("--construction", default="slice")
    c.add_argument("--heuristics", default="")
    c.add_argument("--out")
    c.add_argument("--prune", action="store_true", help="drop dead states")
    c.add_argument("--labels", action="store_true", help="emit slice labels as comments")
    c.add_argument("--max-states", type=int, default=10**6)
    c.set_defaults(func=cmd_complement)

    v = sub.add_parser("convert", help="complement a DPW into an NBW")
    v.add_argument("--in", dest="input", required=True)
    v.add_argument("--heuristics", default="")
    v.add_argument("--out")
    v.add_argument("--labels", action="store_true")
    v.set_defaults(func=cmd_convert)

    k = sub.add_parser("check", help="bounded lasso comparison of two automata")
    k.add_argument("--a", required=True)
    k.add_argument("--b", required=True)
    k.add_argument("--mode", choices=("complement", "equivalent"), default="complement")
    k.add_argument("--max-u", type=int, default=3)
    k.add_argument("--max-v", type=int, default=4)
    k.set_defaults(func=cmd_check)

    t = sub.add_parser("trace", help="reduced split tree slices on a finite word")
    t.add_argument("--in", dest="input", required=True)
    t.add_argument("--word", default="", help="comma-separated symbols")
    t.add_argument("--decorated", action="store_true")
    t.add_argument("--start", type=int, default=1, help="level of the decoration guess")
    t.add_argument("--format", choices=("text", "dot"), default="text")
    t.set_defaults(func=cmd_trace)

    b = sub.add_parser("bench", help="run pipelines over a corpus")
    b.add_argument("--corpus", required=True)
    b.add_argument("--pipelines", default="slice,slice+ADRM")
    b.add_argument("--timeout-ms", type=float, default=600_000)
    b.add_argument("--state-budget", type=int, default=10**6)
    b.add_argument("--jobs", type=int, default=1)
    b.add_argument("--csv")
    b.set_defaults(func=cmd_bench)
    return p


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except (UsageError, OafError, AutomatonError, OSError, ValueError) as e:
        print(f"error: {e}", file=sys.stderr)
        return 2
    except BudgetExceeded as e:
        print(f"error: {e}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
