"""Benchmark harness: run complementation pipelines on a corpus and summarise.

A pipeline is written ``slice``, ``slice+ADRM``, ``slice+PADRM``,
``parity+SE`` and so on.  For ``slice`` the letters P (preminimize), A
(maximize acceptance), D, R, M (slice heuristics) may appear in any order;
for ``parity`` the letters are S (simplify) and E (improved conversion) and
the input must be a DPW.
"""
from __future__ import annotations

import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Optional, Sequence

from .automaton import Automaton, live, reachable
from .parity import complement_via_dpw
from .preopt import maximize_acceptance, simplify_nbw
from .slices import BudgetExceeded, DeadlineExceeded, SliceConfig, complement_slice

DONE, TIMEOUT, BUDGET = "done", "timeout", "budget"


@dataclass(frozen=True)
class Pipeline:
    construction: str = "slice"
    preminimize: bool = False
    maximize: bool = False
    slice_cfg: SliceConfig = SliceConfig()
    simplify: bool = False
    improved: bool = False

    @classmethod
    def parse(cls, text: str) -> "Pipeline":
        base, _, flags = text.strip().partition("+")
        flags = flags.upper()
        if base == "slice":
            bad = set(flags) - set("PADRM")
            if bad:
                raise ValueError(f"unknown slice heuristic(s) {''.join(sorted(bad))}")
            return cls("slice", "P" in flags, "A" in flags, SliceConfig.parse(flags))
        if base == "parity":
            bad = set(flags) - set("SE")
            if bad:
                raise ValueError(f"unknown parity heuristic(s) {''.join(sorted(bad))}")
            return cls("parity", simplify="S" in flags, improved="E" in flags)
        raise ValueError(f"unknown construction {base!r}")

    @property
    def name(self) -> str:
        if self.construction == "slice":
            flags = ("P" if self.preminimize else "") + ("A" if self.maximize else "") \
                + self.slice_cfg.name
        else:
            flags = ("S" if self.simplify else "") + ("E" if self.improved else "")
        return self.construction + ("+" + flags if flags else "")

    def __str__(self):
        return self.name


@dataclass(frozen=True)
class BenchRecord:
    task_id: str
    pipeline: str
    outcome: str
    wall_millis: float
    s_r: Optional[int] = None
    s_l: Optional[int] = None
    universal: Optional[bool] = None

    def __post_init__(self):
        if (self.outcome == DONE) != (self.s_r is not None and self.s_l is not None):
            raise ValueError("state counts are present exactly for finished tasks")


class _Deadline:
    def __init__(self, timeout_ms: Optional[float]):
        self.at = None if timeout_ms is None else time.monotonic() + timeout_ms / 1000.0

    def check(self):
        if self.at is not None and time.monotonic() >= self.at:
            raise DeadlineExceeded()


def build_complement(a: Automaton, pipeline: Pipeline, state_budget: int = 10**6,
                     deadline: Optional[float] = None) -> Automaton:
    if pipeline.construction == "parity":
        return complement_via_dpw(a, simplify=pipeline.simplify, improved=pipeline.improved)
    if pipeline.preminimize:
        a = simplify_nbw(a)
    if pipeline.maximize:
        a = maximize_acceptance(a)
    return complement_slice(a, pipeline.slice_cfg, max_states=state_budget, deadline=deadline)


def run_task(a: Automaton, pipeline: Pipeline | str, timeout_ms: Optional[float] = 600_000,
             state_budget: int = 10**6, task_id: str = "task") -> BenchRecord:
    if isinstance(pipeline, str):
        pipeline = Pipeline.parse(pipeline)
    start = time.monotonic()
    dl = _Deadline(timeout_ms)

    def elapsed():
        return (time.monotonic() - start) * 1000.0

    try:
        dl.check()
        c = build_complement(a, pipeline, state_budget, dl.at)
        dl.check()
        if c.num_states > state_budget:
            raise BudgetExceeded(c.num_states)
        s_r, s_l = len(reachable(c)), len(live(c))
    except DeadlineExceeded:
        return BenchRecord(task_id, pipeline.name, TIMEOUT, elapsed())
    except BudgetExceeded:
        return BenchRecord(task_id, pipeline.name, BUDGET, elapsed())
    return BenchRecord(task_id, pipeline.name, DONE, elapsed(), s_r, s_l, s_l == 0)


def _run_one(args):
    a, pipeline, timeout_ms, budget, task_id = args
    return run_task(a, pipeline, timeout_ms, budget, task_id)


def run_bench(tasks: Sequence[tuple[str, Automaton]], pipelines: Sequence[Pipeline | str],
              timeout_ms: Optional[float] = 600_000, state_budget: int = 10**6,
              jobs: int = 1) -> list[BenchRecord]:
    """Every pipeline on every task.  With ``jobs > 1`` each task runs in a
    worker process; results come back in task-major order either way."""
    pipelines = [Pipeline.parse(p) if isinstance(p, str) else p for p in pipelines]
    work = [(a, p, timeout_ms, state_budget, tid) for tid, a in tasks for p in pipelines]
    if jobs <= 1:
        return [_run_one(w) for w in work]
    with ProcessPoolExecutor(max_workers=jobs) as pool:
        return list(pool.map(_run_one, work, chunksize=1))


# -- statistics ------------------------------------------------------------------

@dataclass(frozen=True)
class StatsSummary:
    pipeline: str
    timeouts: int
    memouts: int
    effective_samples: int
    mean_s_r: Optional[Fraction]
    mean_s_l: Optional[Fraction]
    win_s_r: Fraction
    win_s_l: Fraction
    finished: int

    @property
    def ratio(self) -> Optional[Fraction]:
        if not self.mean_s_r:
            return None
        return self.mean_s_l / self.mean_s_r


class InconsistentRecords(ValueError):
    pass


def aggregate_stats(records: Iterable[BenchRecord]) -> dict[str, StatsSummary]:
    """T, M, effective samples, mean sizes and 1/k win shares per pipeline."""
    by_task: dict[str, dict[str, BenchRecord]] = {}
    pipelines: list[str] = []
    for rec in records:
        if rec.pipeline not in pipelines:
            pipelines.append(rec.pipeline)
        row = by_task.setdefault(rec.task_id, {})
        if rec.pipeline in row:
            raise InconsistentRecords(f"task {rec.task_id} has two records for {rec.pipeline}")
        row[rec.pipeline] = rec
    for tid, row in by_task.items():
        if set(row) != set(pipelines):
            raise InconsistentRecords(f"task {tid} was not attempted by every pipeline")

    effective = [row for row in by_task.values()
                 if all(r.outcome == DONE for r in row.values())]
    wins = {p: {"r": Fraction(0), "l": Fraction(0)} for p in pipelines}
    for row in effective:
        for key, attr in (("r", "s_r"), ("l", "s_l")):
            best = min(getattr(r, attr) for r in row.values())
            winners = [p for p, r in row.items() if getattr(r, attr) == best]
            for p in winners:
                wins[p][key] += Fraction(1, len(winners))

    out = {}
    k = len(effective)
    for p in pipelines:
        recs = [row[p] for row in by_task.values()]
        out[p] = StatsSummary(
            pipeline=p,
            timeouts=sum(r.outcome == TIMEOUT for r in recs),
            memouts=sum(r.outcome == BUDGET for r in recs),
            effective_samples=k,
            mean_s_r=Fraction(sum(row[p].s_r for row in effective), k) if k else None,
            mean_s_l=Fraction(sum(row[p].s_l for row in effective), k) if k else None,
            win_s_r=wins[p]["r"],
            win_s_l=wins[p]["l"],
            finished=sum(r.outcome == DONE for r in recs),
        )
    return out


def format_table(stats: dict[str, StatsSummary]) -> str:
    def num(x):
        return "-" if x is None else f"{float(x):.2f}"

    head = f"{'pipeline':<16}{'T':>6}{'M':>6}{'eff':>6}{'S_R':>10}{'(win)':>10}{'S_L':>10}{'(win)':>10}{'S_L/S_R':>9}"
    rows = [head]
    for s in stats.values():
        rows.append(f"{s.pipeline:<16}{s.timeouts:>6}{s.memouts:>6}{s.effective_samples:>6}"
                    f"{num(s.mean_s_r):>10}{num(s.win_s_r):>10}{num(s.mean_s_l):>10}"
                    f"{num(s.win_s_l):>10}{num(s.ratio):>9}")
    return "\n".join(rows)


CSV_COLUMNS = ("taskId", "pipeline", "outcome", "wallMillis", "sR", "sL", "universal")


def write_csv(records: Iterable[BenchRecord], path) -> None:
    import csv

    with open(path, "w", newline="", encoding="utf-8") as fh:
        w = csv.writer(fh)
        w.writerow(CSV_COLUMNS)
        for r in records:
            w.writerow([r.task_id, r.pipeline, r.outcome, f"{r.wall_millis:.1f}",
                        "" if r.s_r is None else r.s_r, "" if r.s_l is None else r.s_l,
                        "" if r.universal is None else str(r.universal).lower()])
