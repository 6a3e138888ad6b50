# search.py
"""
Exhaustive, random and constructive searches over generalized Boolean
functions, streamed through a named predicate into a JSONL sink.

Predicates: gbent, gsemibent, plateaued:<s>, theorem-discrepancy.

The candidate index space is cut into chunks of GBENT_CHUNK_SIZE. Chunks are
scanned in order (in worker processes when GBENT_THREADS > 1) and only the
parent writes to the sink, one record per match plus a checkpoint line
{"chunk_end": ...} after every chunk; `resume` restarts after the last
checkpoint. Exhaustive order is lexicographic by value vector, v0 most
significant.
"""

import json
import logging
from concurrent.futures import ProcessPoolExecutor
from pathlib import Path
from typing import Literal, Optional

import numpy as np
import pandas as pd
from pydantic import BaseModel, field_validator
from tqdm import tqdm

import settings
from classify import is_gbent, plateau_level, regular_dual
from construct import FAMILIES, family_member, random_gbf
from errors import InfeasibleSearch, InvariantViolation, PreconditionError
from gbf import GbfTable
from theorems import theorem_discrepancies, theorem_verdicts
from transform import gwht

logger = logging.getLogger("gbent.search")

PREDICATES = ("gbent", "gsemibent", "plateaued:<s>", "theorem-discrepancy")


class SearchSpec(BaseModel):
    n: int
    k: int
    mode: Literal["exhaustive", "random", "construct"] = "exhaustive"
    predicate: str = "gbent"
    count: int = 1000
    seed: int = 0
    family: Optional[str] = None
    output: Optional[str] = None
    start: int = 0
    stop: Optional[int] = None
    resume: bool = False

    @field_validator("n")
    @classmethod
    def _n_range(cls, v):
        if not 0 <= v <= settings.MAX_N:
            raise ValueError(f"n must be in [0, {settings.MAX_N}]")
        return v

    @field_validator("k")
    @classmethod
    def _k_range(cls, v):
        if not 1 <= v <= settings.MAX_K:
            raise ValueError(f"k must be in [1, {settings.MAX_K}]")
        return v

    @field_validator("predicate")
    @classmethod
    def _known_predicate(cls, v):
        if v in ("gbent", "gsemibent", "theorem-discrepancy"):
            return v
        if v.startswith("plateaued:") and v.split(":", 1)[1].isdigit():
            return v
        raise ValueError(f"unknown predicate {v!r}; choose from {', '.join(PREDICATES)}")

    @field_validator("family")
    @classmethod
    def _known_family(cls, v):
        if v is not None and v not in FAMILIES:
            raise ValueError(f"unknown family {v!r}; choose from {', '.join(sorted(FAMILIES))}")
        return v

    def total(self):
        if self.mode == "exhaustive":
            return 1 << (self.k << self.n)
        return self.count


def check_feasible(spec: SearchSpec):
    if spec.mode == "exhaustive" and spec.k * (1 << spec.n) > settings.GBENT_EXHAUSTIVE_LIMIT:
        raise InfeasibleSearch(
            f"exhaustive span 2^{spec.k * (1 << spec.n)} at n={spec.n}, k={spec.k} is over the "
            f"guard k*2^n <= {settings.GBENT_EXHAUSTIVE_LIMIT}; use random or construct mode"
        )
    if spec.mode == "construct" and spec.family is None:
        raise PreconditionError("construct mode needs a family")


def exhaustive_tables(n, k, start, stop):
    """Tables number start..stop-1 in lexicographic order of their value vectors."""
    size = 1 << n
    shifts = k * np.arange(size - 1, -1, -1, dtype=np.int64)
    idx = np.arange(start, stop, dtype=np.int64)
    rows = (idx[:, None] >> shifts[None, :]) & ((1 << k) - 1)
    for row in rows:
        yield GbfTable(n, k, row)


def candidates(spec: SearchSpec, start, stop):
    if spec.mode == "exhaustive":
        yield from zip(range(start, stop), exhaustive_tables(spec.n, spec.k, start, stop))
    elif spec.mode == "random":
        for index in range(start, stop):
            yield index, random_gbf(spec.n, spec.k, [spec.seed, index])
    else:
        for index in range(start, stop):
            yield index, family_member(spec.family, spec.n, spec.k, spec.seed, index)


def _matches(predicate, gbent, plateau, problems):
    if predicate == "gbent":
        return gbent
    if predicate == "gsemibent":
        return plateau.is_plateaued and plateau.s == 1
    if predicate == "theorem-discrepancy":
        return bool(problems)
    return plateau.is_plateaued and plateau.s == int(predicate.split(":", 1)[1])


def evaluate(f: GbfTable, predicate, index=None):
    """The JSONL record for f if it satisfies predicate, else None."""
    spectrum = gwht(f)
    gbent = is_gbent(f, spectrum)
    plateau = plateau_level(f, spectrum)
    verdicts, problems = {}, []
    if predicate == "theorem-discrepancy":
        try:
            verdicts = theorem_verdicts(f)
            problems = theorem_discrepancies(f, verdicts, gbent, plateau)
        except InvariantViolation as exc:
            problems = [f"invariant: {exc}"]
    if not _matches(predicate, gbent, plateau, problems):
        return None
    if not verdicts:
        verdicts = theorem_verdicts(f)
    record = {
        "index": index,
        "n": f.n,
        "k": f.k,
        "values": f.values.tolist(),
        "classification": {"gbent": gbent, "plateau": plateau.label},
        "theorem_verdicts": {name: v.holds for name, v in verdicts.items()},
    }
    if gbent:
        dual = regular_dual(f, spectrum)
        if dual.is_regular:
            record["dual"] = dual.dual.values.tolist()
    if problems:
        record["discrepancies"] = problems
    return record


def scan_chunk(spec: SearchSpec, start, stop):
    """(tested, records) for candidates start..stop-1."""
    records = []
    for index, f in candidates(spec, start, stop):
        record = evaluate(f, spec.predicate, index)
        if record is not None:
            records.append(record)
    return stop - start, records


def _scan_chunk_job(args):
    spec_json, start, stop = args
    return scan_chunk(SearchSpec.model_validate_json(spec_json), start, stop)


def chunk_ranges(start, stop, size):
    for lo in range(start, stop, size):
        yield lo, min(lo + size, stop)


def read_sink(path):
    """(end_offset, obj) for every parseable line of a JSONL sink.

    Unparseable lines, such as a final line torn by a crash, are skipped with a
    warning.
    """
    path = Path(path)
    if not path.exists():
        return []
    entries = []
    offset = 0
    with path.open("rb") as fh:
        for number, raw in enumerate(fh, start=1):
            offset += len(raw)
            line = raw.strip()
            if not line:
                continue
            try:
                obj = json.loads(line)
            except (json.JSONDecodeError, UnicodeDecodeError) as exc:
                logger.warning("Skipping unreadable line %d of %s: %s", number, path, exc)
                continue
            if isinstance(obj, dict):
                entries.append((offset, obj))
    return entries


def load_results(path) -> pd.DataFrame:
    """Match records of a JSONL sink (checkpoint lines dropped)."""
    records = [obj for _, obj in read_sink(path) if "index" in obj]
    if not records:
        return pd.DataFrame()
    return pd.DataFrame.from_records(records)


def last_checkpoint(path):
    """(chunk_end, byte offset just after that line) of the last checkpoint, or None."""
    found = None
    for offset, obj in read_sink(path):
        if "chunk_end" in obj:
            found = (int(obj["chunk_end"]), offset)
    return found


def resume_point(path):
    """Index after the last completed chunk recorded in the sink, or None."""
    found = last_checkpoint(path)
    return None if found is None else found[0]


def _rewind(sink):
    """Cut the sink back to its last checkpoint; returns the index to resume from."""
    found = last_checkpoint(sink)
    done, offset = found if found is not None else (None, 0)
    if sink.exists() and sink.stat().st_size > offset:
        logger.warning("Dropping %d bytes written after the last checkpoint of %s",
                       sink.stat().st_size - offset, sink)
        with sink.open("r+b") as fh:
            fh.truncate(offset)
    if offset:
        with sink.open("r+b") as fh:
            fh.seek(offset - 1)
            if fh.read(1) != b"\n":
                fh.seek(offset)
                fh.write(b"\n")
    return done


def _dump(obj):
    return json.dumps(obj, sort_keys=True)


def run_search(spec: SearchSpec):
    check_feasible(spec)
    start = spec.start
    stop = spec.total() if spec.stop is None else min(spec.stop, spec.total())
    sink = Path(spec.output) if spec.output else None
    mode = "w"
    if spec.resume and sink is not None:
        done = _rewind(sink)
        if done is not None and done > start:
            logger.info("Resuming %s after index %d", sink, done)
            start = done
        mode = "a"
    chunks = list(chunk_ranges(start, stop, settings.GBENT_CHUNK_SIZE))
    logger.info("Search %s n=%d k=%d predicate=%s over [%d, %d) in %d chunks",
                spec.mode, spec.n, spec.k, spec.predicate, start, stop, len(chunks))

    totals = {"tested": 0, "matched": 0, "written": 0}
    tally = []

    def consume(results, out):
        bar = tqdm(zip(chunks, results), total=len(chunks), desc="Search", disable=not settings.progress_enabled())
        for (lo, hi), (count, records) in bar:
            totals["tested"] += count
            totals["matched"] += len(records)
            tally.extend(r["classification"]["plateau"] for r in records)
            if out is not None:
                for record in records:
                    out.write(_dump(record) + "\n")
                out.write(_dump({"chunk_end": hi}) + "\n")
                out.flush()
                totals["written"] += len(records)
            logger.debug("chunk [%d, %d): %d matches", lo, hi, len(records))

    out = sink.open(mode, encoding="utf-8") if sink is not None else None
    try:
        if settings.GBENT_THREADS > 1 and len(chunks) > 1:
            payload = spec.model_dump_json()
            with ProcessPoolExecutor(max_workers=settings.GBENT_THREADS) as executor:
                consume(executor.map(_scan_chunk_job, [(payload, lo, hi) for lo, hi in chunks]), out)
        else:
            consume((scan_chunk(spec, lo, hi) for lo, hi in chunks), out)
    finally:
        if out is not None:
            out.close()

    by_class = pd.Series(tally, dtype=object).value_counts().to_dict() if tally else {}
    summary = dict(totals)
    summary["by_class"] = {str(key): int(val) for key, val in by_class.items()}
    logger.info("Search done: tested=%d matched=%d written=%d", totals["tested"], totals["matched"], totals["written"])
    return summary
