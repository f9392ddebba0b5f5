from fractions import Fraction

import pytest

from conftest import make_u1
from slicecomp.bench import (
    BUDGET, DONE, TIMEOUT, BenchRecord, InconsistentRecords, Pipeline, aggregate_stats,
    format_table, run_bench, run_task, write_csv,
)
from slicecomp.lasso import enumerate_lassos, member
from slicecomp.randgen import GenSpec, generate, random_dpw


def rec(task, pipe, s_r=None, s_l=None, outcome=DONE):
    return BenchRecord(task, pipe, outcome, 1.0, s_r, s_l, None if s_l is None else s_l == 0)


def test_pipeline_parsing():
    p = Pipeline.parse("slice+PADRM")
    assert p.preminimize and p.maximize and p.slice_cfg.use_d and p.slice_cfg.use_m
    assert p.name == "slice+PADRM"
    assert Pipeline.parse("slice+mrd").name == "slice+DRM"
    assert Pipeline.parse("slice").name == "slice"
    assert Pipeline.parse("parity+SE").name == "parity+SE"
    for bad in ("slice+X", "parity+D", "rank"):
        with pytest.raises(ValueError):
            Pipeline.parse(bad)


def test_run_task_done(fig1):
    r = run_task(fig1, "slice+DRM", 60_000, 10**6, "fig1")
    assert r.outcome == DONE and r.s_r >= 1 and r.s_l >= 1 and r.universal is False


def test_run_task_timeout(fig1):
    assert run_task(fig1, "slice", timeout_ms=0).outcome == TIMEOUT


def test_run_task_budget(fig1):
    r = run_task(fig1, "slice", state_budget=1)
    assert r.outcome == BUDGET and r.s_r is None


def test_parity_pipeline_task():
    r = run_task(random_dpw(4, 2, 3, seed=1), "parity+SE")
    assert r.outcome == DONE


def test_record_invariant():
    with pytest.raises(ValueError):
        BenchRecord("t", "slice", DONE, 1.0)
    with pytest.raises(ValueError):
        BenchRecord("t", "slice", TIMEOUT, 1.0, 3, 2)


def test_three_way_tie_splits_in_thirds():
    recs = [rec("t", p, 5, 2) for p in ("a", "b", "c")]
    stats = aggregate_stats(recs)
    assert all(s.win_s_r == Fraction(1, 3) and s.win_s_l == Fraction(1, 3) for s in stats.values())


def test_timeout_excludes_task():
    recs = [rec("t1", "a", 4, 2), rec("t1", "b", outcome=TIMEOUT),
            rec("t2", "a", 6, 3), rec("t2", "b", 8, 1)]
    stats = aggregate_stats(recs)
    assert stats["a"].effective_samples == 1
    assert stats["a"].mean_s_r == 6 and stats["b"].mean_s_r == 8
    assert stats["b"].timeouts == 1 and stats["b"].memouts == 0
    assert stats["a"].win_s_r == 1 and stats["b"].win_s_l == 1
    assert stats["a"].finished == 2 and stats["b"].finished == 1


def test_single_pipeline_single_task():
    s = aggregate_stats([rec("t", "a", 7, 3)])["a"]
    assert s.win_s_r == s.win_s_l == 1
    assert s.mean_s_r == 7 and s.mean_s_l == 3 and s.ratio == Fraction(3, 7)


def test_inconsistent_records():
    with pytest.raises(InconsistentRecords):
        aggregate_stats([rec("t1", "a", 1, 1), rec("t2", "b", 1, 1)])
    with pytest.raises(InconsistentRecords):
        aggregate_stats([rec("t1", "a", 1, 1), rec("t1", "a", 2, 1)])


def test_no_effective_samples():
    s = aggregate_stats([rec("t", "a", outcome=BUDGET)])["a"]
    assert s.effective_samples == 0 and s.mean_s_r is None and s.ratio is None
    assert "-" in format_table({"a": s})


def test_win_shares_sum_to_effective_samples():
    tasks = [(f"t{k}", generate(GenSpec(5, 2, "2.0", "0.4", k))) for k in range(6)]
    records = run_bench(tasks, ["slice", "slice+DRM", "slice+ADRM"], 60_000, 10**6)
    stats = aggregate_stats(records)
    k = next(iter(stats.values())).effective_samples
    assert sum(s.win_s_r for s in stats.values()) == k
    assert sum(s.win_s_l for s in stats.values()) == k


def test_universal_classification_spot_check():
    tasks = [("u1", make_u1())] + [(f"t{k}", generate(GenSpec(4, 2, "2.5", "0.8", k)))
                                   for k in range(10)]
    records = run_bench(tasks, ["slice+ADRM"], 60_000, 10**6)
    assert records[0].universal
    for (tid, a), r in zip(tasks, records):
        if r.universal:
            assert all(member(a, w) for w in enumerate_lassos(a.alphabet, 2, 3)), tid


def test_parallel_matches_inline():
    tasks = [(f"t{k}", generate(GenSpec(4, 2, "1.5", "0.5", k))) for k in range(3)]
    inline = run_bench(tasks, ["slice", "slice+DRM"], 60_000, 10**6, jobs=1)
    par = run_bench(tasks, ["slice", "slice+DRM"], 60_000, 10**6, jobs=2)
    key = lambda r: (r.task_id, r.pipeline, r.outcome, r.s_r, r.s_l)
    assert [key(r) for r in inline] == [key(r) for r in par]


def test_csv(tmp_path):
    path = tmp_path / "out.csv"
    write_csv([rec("t", "slice", 3, 0), rec("u", "slice", outcome=TIMEOUT)], path)
    lines = path.read_text().splitlines()
    assert lines[0] == "taskId,pipeline,outcome,wallMillis,sR,sL,universal"
    assert lines[1] == "t,slice,done,1.0,3,0,true"
    assert lines[2] == "u,slice,timeout,1.0,,,"
