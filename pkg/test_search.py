import json

import pytest
from pydantic import ValidationError

import settings
from classify import is_gbent
from errors import InfeasibleSearch, PreconditionError
from gbf import GbfTable
from search import (SearchSpec, check_feasible, chunk_ranges, evaluate, exhaustive_tables, load_results, read_sink,
                    resume_point, run_search)


@pytest.fixture
def small_chunks(monkeypatch):
    monkeypatch.setattr(settings, "GBENT_CHUNK_SIZE", 32)


def test_exhaustive_order_is_lexicographic():
    tables = [f.values.tolist() for f in exhaustive_tables(2, 2, 0, 5)]
    assert tables == [[0, 0, 0, 0], [0, 0, 0, 1], [0, 0, 0, 2], [0, 0, 0, 3], [0, 0, 1, 0]]
    assert next(exhaustive_tables(2, 2, 255, 256)).values.tolist() == [3, 3, 3, 3]


def test_chunk_ranges():
    assert list(chunk_ranges(0, 10, 4)) == [(0, 4), (4, 8), (8, 10)]
    assert list(chunk_ranges(5, 5, 4)) == []


def test_spec_validation():
    with pytest.raises(ValidationError):
        SearchSpec(n=2, k=2, predicate="bent-ish")
    with pytest.raises(ValidationError):
        SearchSpec(n=2, k=7)
    with pytest.raises(ValidationError):
        SearchSpec(n=25, k=2)
    with pytest.raises(ValidationError):
        SearchSpec(n=2, k=2, mode="construct", family="kerdock")
    assert SearchSpec(n=2, k=2, predicate="plateaued:3").predicate == "plateaued:3"


def test_feasibility_guard():
    with pytest.raises(InfeasibleSearch):
        check_feasible(SearchSpec(n=3, k=4))
    with pytest.raises(PreconditionError):
        check_feasible(SearchSpec(n=4, k=4, mode="construct"))
    check_feasible(SearchSpec(n=2, k=4))
    check_feasible(SearchSpec(n=10, k=4, mode="random"))


def test_exhaustive_level_4_gbent(tmp_path):
    out = tmp_path / "g.jsonl"
    summary = run_search(SearchSpec(n=2, k=2, output=str(out)))
    assert summary["tested"] == 256
    assert summary["matched"] == summary["written"] == 64
    assert summary["by_class"] == {"plateaued(0)": 64}
    df = load_results(out)
    assert len(df) == 64
    for values in df["values"]:
        assert is_gbent(GbfTable(2, 2, values))


def test_records_carry_verdicts_and_dual(tmp_path):
    out = tmp_path / "g.jsonl"
    run_search(SearchSpec(n=2, k=2, output=str(out)))
    records = [json.loads(line) for line in out.read_text().splitlines()]
    record = next(r for r in records if "index" in r)
    assert set(record) >= {"index", "n", "k", "values", "classification", "theorem_verdicts", "dual"}
    assert record["theorem_verdicts"]["k2"] is True
    assert {"chunk_end": 256} in records


def test_exhaustive_runs_are_byte_identical(tmp_path, small_chunks):
    first, second = tmp_path / "a.jsonl", tmp_path / "b.jsonl"
    run_search(SearchSpec(n=2, k=3, output=str(first)))
    run_search(SearchSpec(n=2, k=3, output=str(second)))
    assert first.read_bytes() == second.read_bytes()


def test_parallel_matches_serial(tmp_path, small_chunks, monkeypatch):
    serial, parallel = tmp_path / "s.jsonl", tmp_path / "p.jsonl"
    run_search(SearchSpec(n=2, k=2, output=str(serial)))
    monkeypatch.setattr(settings, "GBENT_THREADS", 2)
    run_search(SearchSpec(n=2, k=2, output=str(parallel)))
    assert serial.read_bytes() == parallel.read_bytes()


def test_resume_after_partial_run(tmp_path, small_chunks):
    full, partial = tmp_path / "full.jsonl", tmp_path / "partial.jsonl"
    run_search(SearchSpec(n=2, k=3, output=str(full)))
    first = run_search(SearchSpec(n=2, k=3, output=str(partial), stop=100))
    assert first["tested"] == 100
    assert resume_point(partial) == 100
    second = run_search(SearchSpec(n=2, k=3, output=str(partial), resume=True))
    assert second["tested"] == 4096 - 100
    assert load_results(partial)["index"].tolist() == load_results(full)["index"].tolist()


def test_resume_drops_records_after_last_checkpoint(tmp_path, small_chunks):
    full, partial = tmp_path / "full.jsonl", tmp_path / "partial.jsonl"
    run_search(SearchSpec(n=2, k=2, output=str(full)))
    run_search(SearchSpec(n=2, k=2, output=str(partial), stop=64))
    # an interrupted chunk: records flushed, checkpoint never written, last line torn
    with partial.open("a", encoding="utf-8") as out:
        for index in (70, 71, 75):
            out.write(json.dumps({"index": index, "n": 2, "k": 2, "values": [0, 0, 0, 2]}) + "\n")
        out.write('{"index": 80, "n": 2, "val')
    assert resume_point(partial) == 64
    summary = run_search(SearchSpec(n=2, k=2, output=str(partial), resume=True))
    assert summary["tested"] == 256 - 64
    got = load_results(partial)["index"].tolist()
    assert got == load_results(full)["index"].tolist()
    assert len(got) == len(set(got)) == 64


def test_resume_without_checkpoint_starts_over(tmp_path, small_chunks):
    sink = tmp_path / "g.jsonl"
    sink.write_text(json.dumps({"index": 3, "n": 2, "k": 2, "values": [0, 0, 0, 3]}) + "\n")
    summary = run_search(SearchSpec(n=2, k=2, output=str(sink), resume=True))
    assert summary["tested"] == 256
    assert len(load_results(sink)) == 64


def test_resume_after_checkpoint_without_newline(tmp_path, small_chunks):
    full, partial = tmp_path / "full.jsonl", tmp_path / "partial.jsonl"
    run_search(SearchSpec(n=2, k=2, output=str(full)))
    run_search(SearchSpec(n=2, k=2, output=str(partial), stop=32))
    partial.write_bytes(partial.read_bytes().rstrip(b"\n"))
    run_search(SearchSpec(n=2, k=2, output=str(partial), resume=True))
    assert load_results(partial)["index"].tolist() == load_results(full)["index"].tolist()


def test_torn_final_line_is_skipped(tmp_path):
    sink = tmp_path / "g.jsonl"
    run_search(SearchSpec(n=2, k=2, output=str(sink)))
    with sink.open("a", encoding="utf-8") as out:
        out.write('{"index": 300, "n": 2, "k"')
    df = load_results(sink)
    assert len(df) == 64
    assert df["index"].dtype.kind == "i"
    assert resume_point(sink) == 256
    assert read_sink(sink)[-1][1] == {"chunk_end": 256}


def test_resume_on_missing_file(tmp_path):
    assert resume_point(tmp_path / "none.jsonl") is None
    assert load_results(tmp_path / "none.jsonl").empty


@pytest.mark.parametrize("k", [2, 3])
def test_no_theorem_discrepancies(k):
    summary = run_search(SearchSpec(n=2, k=k, predicate="theorem-discrepancy"))
    assert summary["tested"] == 1 << (k << 2)
    assert summary["matched"] == 0


@pytest.mark.slow
def test_no_theorem_discrepancies_level_16():
    summary = run_search(SearchSpec(n=2, k=4, predicate="theorem-discrepancy"))
    assert summary == {"tested": 65536, "matched": 0, "written": 0, "by_class": {}}


def test_plateau_predicate_matches_gbent_count():
    summary = run_search(SearchSpec(n=2, k=2, predicate="plateaued:0"))
    assert summary["matched"] == 64


def test_construct_sparse_all_gbent():
    summary = run_search(SearchSpec(n=4, k=4, mode="construct", family="sparse", count=50))
    assert summary["tested"] == summary["matched"] == 50


def test_random_mode_is_seeded(tmp_path):
    a, b = tmp_path / "a.jsonl", tmp_path / "b.jsonl"
    spec = dict(n=3, k=3, mode="random", predicate="plateaued:1", count=300, seed=9)
    run_search(SearchSpec(output=str(a), **spec))
    run_search(SearchSpec(output=str(b), **spec))
    assert a.read_bytes() == b.read_bytes()


def test_evaluate_gsemibent():
    f = GbfTable(1, 3, [0, 4])
    record = evaluate(f, "gsemibent", index=7)
    assert record["index"] == 7
    assert record["classification"] == {"gbent": False, "plateau": "plateaued(1)"}
    assert evaluate(f, "gbent") is None


def test_unwritable_sink(tmp_path):
    with pytest.raises(OSError):
        run_search(SearchSpec(n=1, k=2, output=str(tmp_path / "missing" / "out.jsonl")))
