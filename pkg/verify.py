# verify.py
"""
Verification suites behind `cli verify`.

Each suite streams candidate tables through one family of checks and counts
every case where a characterization disagrees with the spectral definition.
Candidates are every table at (n, k) when k*2^n is within
GBENT_EXHAUSTIVE_LIMIT, otherwise `samples` random tables plus `samples`
members of every construct family defined at (n, k), followed by the whole
Gray slice where one is defined (odd n <= 3).

  identities   Walsh decomposition, recursive split, Gray-image WHT (k = 2, 3, 4)
  k2 k3 k4     component criteria against is_gbent, with harvested tuples
  k4-z4        the Z_4 criterion against is_gbent
  gsemibent    the level-16 plateau criterion against plateau_level
  inductive    the recursive criterion against is_gbent
  gray         plateau level of the Gray image of every gbent candidate
  regularity   dual of every gbent candidate is gbent and involutive
"""

import logging
from collections import Counter
from typing import Any, Dict, Optional

from pydantic import BaseModel
from tqdm import tqdm

import settings
from classify import expected_gray_plateau, is_gbent, plateau_level, regular_dual
from construct import family_member, gray_slice, random_gbf, slice_size
from errors import InvariantViolation, PreconditionError
from gbf import gbf_serialize
from search import exhaustive_tables
from theorems import (K3_EVEN, K3_ODD, K4_EVEN, K4_ODD, Z4_EVEN, Z4_ODD, check_inductive, check_k2,
                      check_k3, check_k4_gbent, check_k4_gsemibent, check_k4_z4,
                      components_bent_necessary, gray_classify, verify_gray_wht,
                      verify_recursive_split, verify_walsh_decomposition)
from transform import gwht

logger = logging.getLogger("gbent.verify")

DEFAULT_K = {"k2": 2, "k3": 3, "k4": 4, "k4-z4": 4, "gsemibent": 4}


class SuiteSummary(BaseModel):
    suite: str
    n: int
    k: int
    source: str
    tested: int = 0
    discrepancies: int = 0
    first_witness: Optional[Dict[str, Any]] = None
    counts: Dict[str, int] = {}
    tuples_seen: Optional[int] = None
    tuples_expected: Optional[int] = None

    @property
    def ok(self):
        return self.discrepancies == 0


class SuiteRun:
    """Mutable tallies of one suite run."""

    def __init__(self, suite, n, k):
        self.suite, self.n, self.k = suite, n, k
        self.counts = Counter()
        self.tuples = set()
        self.tested = 0
        self.discrepancies = 0
        self.first_witness = None

    def fail(self, f, reason, **extra):
        self.discrepancies += 1
        if self.first_witness is None:
            self.first_witness = {"table": gbf_serialize(f), "reason": reason, **extra}
            logger.warning("%s: first discrepancy on %s: %s", self.suite, gbf_serialize(f), reason)


def _families(n, k):
    if k < 2:
        return []
    return ["mm", "sparse"] if n % 2 == 0 else ["gray"]


def is_exhaustive(n, k):
    return k * (1 << n) <= settings.GBENT_EXHAUSTIVE_LIMIT


def candidate_tables(n, k, samples, seed=0):
    """(source, total, iterator) over the candidates of a suite."""
    if is_exhaustive(n, k):
        total = 1 << (k << n)
        return "exhaustive", total, exhaustive_tables(n, k, 0, total)
    families = _families(n, k)
    structured = slice_size(n, k)

    def sampled():
        for index in range(samples):
            yield random_gbf(n, k, [seed, index])
        for name in families:
            for index in range(samples):
                yield family_member(name, n, k, seed, index)
        if structured:
            yield from gray_slice(n, k)

    source = "+".join(["random"] + families + (["slice"] if structured else []))
    return source, samples * (1 + len(families)) + structured, sampled()


# per-table checks

def _identities(run, f):
    for name, check in (("walsh-decomposition", verify_walsh_decomposition),
                        ("recursive-split", verify_recursive_split),
                        ("gray-wht", verify_gray_wht)):
        if check(f):
            run.counts[name] += 1
        else:
            run.fail(f, f"{name} identity fails")


def _components_bent(run, f, gbent):
    if f.n % 2 == 0 and gbent and not components_bent_necessary(f).holds:
        run.fail(f, "gbent with a non-bent component")


def _against_gbent(checker):
    def check(run, f):
        gbent = is_gbent(f)
        verdict = checker(f)
        run.counts["gbent"] += gbent
        run.counts["holds"] += verdict.holds
        if verdict.holds:
            run.tuples.update(verdict.detail.values())
        if verdict.holds != gbent:
            run.fail(f, f"{verdict.name} gives {verdict.holds}, is_gbent gives {gbent}",
                     failure_witness=verdict.failure_witness)
        _components_bent(run, f, gbent)
    return check


def _gsemibent(run, f):
    plateau = plateau_level(f)
    level = 1 if f.n % 2 else 2
    expected = plateau.is_plateaued and plateau.s == level
    verdict = check_k4_gsemibent(f)
    run.counts["plateaued"] += expected
    run.counts["holds"] += verdict.holds
    if verdict.holds != expected:
        run.fail(f, f"gsemibent gives {verdict.holds}, plateau level is {plateau.label}")


def _inductive(run, f):
    gbent = is_gbent(f)
    holds = check_inductive(f).holds
    run.counts["gbent"] += gbent
    run.counts["holds"] += holds
    if holds and not gbent:
        run.fail(f, "inductive condition holds for a function that is not gbent")
    elif f.n % 2 == 0 and gbent and not holds:
        run.fail(f, "inductive condition fails for a gbent function")


def _gray(run, f):
    if not is_gbent(f):
        return
    image = gray_classify(f)
    label = image.label if image.kind != "plateaued" else f"plateaued({image.s})"
    run.counts[label] += 1
    if image.kind == "not_plateaued" or image.s != expected_gray_plateau(f.n, f.k):
        run.fail(f, f"Gray image is {label}, expected plateaued({expected_gray_plateau(f.n, f.k)})")


def _regularity(run, f):
    spectrum = gwht(f)
    if not is_gbent(f, spectrum):
        return
    result = regular_dual(f, spectrum)
    if not result.is_regular:
        run.counts["not_representable"] += 1
        return
    run.counts["regular"] += 1
    dual = result.dual
    if not is_gbent(dual):
        run.fail(f, "dual is not gbent", dual=dual.values.tolist())
    elif regular_dual(dual).dual != f:
        run.fail(f, "dual of the dual differs", dual=dual.values.tolist())


SUITES = {
    "identities": (_identities, {2, 3, 4}),
    "k2": (_against_gbent(check_k2), {2}),
    "k3": (_against_gbent(check_k3), {3}),
    "k4": (_against_gbent(check_k4_gbent), {4}),
    "k4-z4": (_against_gbent(check_k4_z4), {4}),
    "gsemibent": (_gsemibent, {4}),
    "inductive": (_inductive, set(range(2, settings.MAX_K + 1))),
    "gray": (_gray, {2, 3, 4}),
    "regularity": (_regularity, set(range(1, settings.MAX_K + 1))),
}


def _expected_tuples(suite, n):
    tables = {
        ("k3", 0): K3_EVEN, ("k3", 1): K3_ODD,
        ("k4", 0): K4_EVEN, ("k4", 1): K4_ODD,
        ("k4-z4", 0): Z4_EVEN, ("k4-z4", 1): Z4_ODD,
    }
    return tables.get((suite, n % 2))


def _compare_tuples(run, summary, suite, n, source):
    expected = _expected_tuples(suite, n)
    if expected is None:
        return
    expected = set(expected)
    summary.tuples_seen = len(run.tuples)
    summary.tuples_expected = len(expected)
    extra = run.tuples - expected
    if extra:
        run.discrepancies += 1
        run.first_witness = run.first_witness or {"reason": "tuple outside the table", "tuple": list(min(extra))}
    # the full table is re-derived from exhaustive even-n runs on k3 and k4 and from the Gray slice
    even_run = source == "exhaustive" and n > 0 and n % 2 == 0 and suite in ("k3", "k4")
    if even_run or "slice" in source.split("+"):
        missing = expected - run.tuples
        if missing:
            run.discrepancies += 1
            run.first_witness = run.first_witness or {"reason": "table row never observed", "tuple": list(min(missing))}


def run_suite(suite, n, k=None, samples=1000, seed=0) -> SuiteSummary:
    if suite not in SUITES:
        raise PreconditionError(f"unknown suite {suite!r}; choose from {', '.join(SUITES)}")
    check, levels = SUITES[suite]
    k = DEFAULT_K.get(suite, 4) if k is None else k
    if k not in levels:
        raise PreconditionError(f"suite {suite} runs at k in {sorted(levels)}, got k={k}")
    if not 0 <= n <= settings.MAX_N:
        raise PreconditionError(f"n must be in [0, {settings.MAX_N}], got {n}")
    source, total, tables = candidate_tables(n, k, samples, seed)
    logger.info("Suite %s at n=%d k=%d over %d %s candidates", suite, n, k, total, source)

    run = SuiteRun(suite, n, k)
    for f in tqdm(tables, total=total, desc=f"Verify {suite}", disable=not settings.progress_enabled()):
        run.tested += 1
        try:
            check(run, f)
        except InvariantViolation as exc:
            run.fail(f, f"invariant: {exc}")

    summary = SuiteSummary(suite=suite, n=n, k=k, source=source)
    if suite in ("k3", "k4", "k4-z4"):
        _compare_tuples(run, summary, suite, n, source)
    summary.tested = run.tested
    summary.discrepancies = run.discrepancies
    summary.first_witness = run.first_witness
    summary.counts = dict(run.counts)
    logger.info("Suite %s done: tested=%d discrepancies=%d", suite, run.tested, run.discrepancies)
    return summary


