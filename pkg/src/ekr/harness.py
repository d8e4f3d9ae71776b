"""Batch verification: the exhaustive corpus and the seeded random campaigns.

Campaign functions return plain dicts ready for JSON. Per-instance work
runs in a process pool; records are sorted before they are emitted so the
output does not depend on the number of workers.
"""
from __future__ import annotations

import json
import logging
import os
import time
from concurrent.futures import ProcessPoolExecutor
from math import comb
from pathlib import Path
from typing import Callable, Iterable

from .engine import UNDECIDED, ekr_report, structure_holds
from .enumeration import (
    SamplerConfig,
    canonical_form,
    enumerate_downsets,
    rng_for,
    sample_random_downset,
)
from .family import (
    SetFamily,
    downward_closure,
    format_fam,
    ground_mask,
    head,
    is_star,
    k_subsets,
    popcount,
    star_size_max,
)
from .solver import has_nonstar_maximum, max_intersecting
from .sunflower import find_k_flower, find_sunflower, threshold_bounds, verify_certificate
from .theorem4 import MIN_SIZE, ContradictionWithPaper, theorem4_pipeline

log = logging.getLogger(__name__)


def default_jobs() -> int:
    try:
        return max(1, int(os.environ.get("EKR_JOBS", "1")))
    except ValueError:
        return 1


def pmap(fn: Callable, items: Iterable, jobs: int) -> list:
    items = list(items)
    if jobs <= 1 or len(items) < 2:
        return [fn(x) for x in items]
    with ProcessPoolExecutor(max_workers=jobs) as pool:
        return list(pool.map(fn, items, chunksize=max(1, len(items) // (4 * jobs))))


# --- exhaustive corpus ------------------------------------------------------

def corpus_record(F: SetFamily, timings: bool = False) -> dict:
    t0 = time.perf_counter()
    rep = ekr_report(F)
    counterexample = not rep.is_ekr
    if rep.is_strict is False:
        counterexample |= rep.classification.kind == "NONE"
        counterexample |= not structure_holds(F, rep.classification)
    rec = {
        "key": canonical_form(F).hex(),
        "family": F.labels(),
        "i": rep.i,
        "s": rep.s,
        "is_ekr": rep.is_ekr,
        "is_strict": rep.is_strict,
        "classification": rep.classification.kind,
        "classification_data": rep.classification.to_json(),
        "seed": None,
        "counterexample": counterexample,
    }
    if timings:
        rec["runtime"] = round(time.perf_counter() - t0, 6)
    return rec


def _record_id(rec: dict) -> str:
    return rec["key"] + ":" + json.dumps(rec["family"])


def _corpus_worker(args):
    n, members, timings = args
    return corpus_record(SetFamily(n, members), timings)


def verify_corpus(
    n: int,
    iso: bool = True,
    jobs: int = 1,
    resume: str | Path | None = None,
    timings: bool = False,
    guard: int = 5,
) -> dict:
    """Check i = s and the non-strict classification on every downset of
    ([n] choose <= 3). ``resume`` names a JSON-lines file of finished records
    that is read first and appended to as work completes."""
    t0 = time.perf_counter()
    done: dict[str, dict] = {}
    if resume is not None and Path(resume).exists():
        for line in Path(resume).read_text().splitlines():
            if line.strip():
                rec = json.loads(line)
                done[_record_id(rec)] = rec
    todo = []
    for F in enumerate_downsets(n, 3, iso, guard=guard):
        rid = canonical_form(F).hex() + ":" + json.dumps(F.labels())
        if rid not in done:
            todo.append((n, F.members, timings))
    fresh = pmap(_corpus_worker, todo, jobs)
    if resume is not None and fresh:
        with open(resume, "a") as fh:
            for rec in fresh:
                fh.write(json.dumps(rec, sort_keys=True) + "\n")
    records = sorted([*done.values(), *fresh], key=_record_id)
    summary = {
        "n": n,
        "iso": iso,
        "instances": len(records),
        "counterexamples": sum(r["counterexample"] for r in records),
        "undecided": sum(r["is_strict"] == UNDECIDED for r in records),
        "nonstrict": sum(r["is_strict"] is False for r in records),
    }
    if timings:
        summary["wall_time"] = round(time.perf_counter() - t0, 3)
    return {"summary": summary, "records": records}


# --- large-family randomized campaign ---------------------------------------

def t4_instance(seed: int, trial: int, n_max: int = 12) -> tuple[SetFamily, dict]:
    """A seeded downset on n <= n_max with s(H) >= 31 (so i(H) >= 31).

    Even trials are star-seeded, odd trials uniform; a draw with a small
    largest star is redrawn from the next sub-stream.
    """
    for attempt in range(1000):
        rng = rng_for(seed, trial, attempt)
        n = int(rng.integers(max(8, n_max - 4), n_max + 1))
        if trial % 2 == 0:
            through = (n - 1) * (n - 2) // 2
            cfg = SamplerConfig(
                n, p3=float(rng.uniform(0.0, 0.35)), extra2=float(rng.uniform(0, 0.5)),
                extra1=float(rng.uniform(0, 1)), seed=seed,
                star_center=int(rng.integers(n)), star_triples=int(rng.integers(through // 2, through + 1)),
            )
            mode = "star-seeded"
        else:
            cfg = SamplerConfig(
                n, p3=float(rng.uniform(0.3, 0.95)), extra2=float(rng.uniform(0, 0.5)),
                extra1=float(rng.uniform(0, 1)), seed=seed,
            )
            mode = "uniform"
        H = sample_random_downset(cfg, rng)
        if star_size_max(H)[0] >= MIN_SIZE:
            return H, {"mode": mode, "n": n, "attempt": attempt}
    raise RuntimeError(f"no instance with s >= {MIN_SIZE} for trial {trial}")


def t4_trial(args) -> dict:
    seed, trial, n_max = args
    H, meta = t4_instance(seed, trial, n_max)
    res = max_intersecting(H)
    rec = {"trial": trial, "seed": seed, **meta, "size": len(H), "i": res.size, "s": star_size_max(H)[0]}
    violations = []
    if res.size < MIN_SIZE:
        violations.append("i < 31")
    nonstar, witness = has_nonstar_maximum(H, res.size)
    if nonstar:
        violations.append("non-star maximum")
    reproducer = None
    try:
        t4 = theorem4_pipeline(H, res.witness, check_maximum=False, deep=True)
        rec["verdict"] = t4.verdict
        rec["center"] = t4.center + 1
        rec["route"] = t4.route
        rec["claims_applicable"] = sum(c.applicable for c in t4.claims.values())
        if not is_star(res.witness) or not head(res.witness) >> t4.center & 1:
            violations.append("verdict center not in head")
    except ContradictionWithPaper as exc:
        violations.append(f"pipeline: {exc.step}")
        reproducer = exc.reproducer()
    if nonstar and reproducer is None:
        reproducer = format_fam(H, comment="downset with a non-star maximum") + "\n" + format_fam(witness)
    rec["violations"] = violations
    if reproducer:
        rec["reproducer"] = reproducer
    return rec


def campaign_t4(trials: int, seed: int, n_max: int = 12, jobs: int = 1) -> dict:
    records = pmap(t4_trial, [(seed, t, n_max) for t in range(trials)], jobs)
    records.sort(key=lambda r: r["trial"])
    routes: dict[str, int] = {}
    for r in records:
        routes[r.get("route", "-")] = routes.get(r.get("route", "-"), 0) + 1
    return {
        "summary": {
            "seed": seed,
            "trials": trials,
            "n_max": n_max,
            "counterexamples": sum(bool(r["violations"]) for r in records),
            "min_i": min((r["i"] for r in records), default=None),
            "routes": dict(sorted(routes.items())),
        },
        "records": records,
    }


# --- pigeonhole corollary ---------------------------------------------------

def pigeonhole_trial(args) -> dict:
    """Downset with more than 10n 3-sets; its largest star must reach 31."""
    seed, trial = args
    rng = rng_for(seed, trial)
    n = int(rng.integers(10, 17))
    lo = 10 * n + 1
    count = int(rng.integers(lo, min(comb(n, 3), 3 * lo) + 1))
    triples = k_subsets(ground_mask(n), 3)
    idx = rng.choice(len(triples), size=count, replace=False)
    H = downward_closure(SetFamily(n, tuple(triples[i] for i in sorted(idx))))
    h3 = sum(1 for m in H.members if popcount(m) == 3)
    s, _ = star_size_max(H)
    return {"trial": trial, "n": n, "h3": h3, "s": s, "ok": h3 > 10 * n and s >= MIN_SIZE}


def campaign_pigeonhole(trials: int, seed: int, jobs: int = 1) -> dict:
    recs = pmap(pigeonhole_trial, [(seed, t) for t in range(trials)], jobs)
    return {"failures": sum(not r["ok"] for r in recs), "min_s": min(r["s"] for r in recs), "records": recs}


# --- sunflower / flower thresholds ------------------------------------------

def _uniform_family(rng, r: int, size: int, extra_n: int) -> SetFamily:
    n = r
    while comb(n, r) < size:
        n += 1
    n += int(rng.integers(0, extra_n + 1))
    pool = k_subsets(ground_mask(n), r)
    idx = rng.choice(len(pool), size=size, replace=False)
    return SetFamily(n, tuple(pool[i] for i in idx))


def threshold_instance(kind: str, r: int, k: int, seed: int, trial: int) -> SetFamily:
    """r-uniform family just above the sunflower or flower threshold for k."""
    rng = rng_for(seed, r, k, trial, 0 if kind == "sunflower" else 1)
    er, hastad = threshold_bounds(r, k)
    size = (er if kind == "sunflower" else hastad) + 1 + int(rng.integers(0, 3))
    return _uniform_family(rng, r, size, extra_n=3)


def threshold_trial(args) -> dict:
    kind, r, k, seed, trial = args
    F = threshold_instance(kind, r, k, seed, trial)
    size = len(F)
    cert = find_sunflower(F, k) if kind == "sunflower" else find_k_flower(F, k)
    ok = cert is not None and verify_certificate(cert, F)
    return {"kind": kind, "r": r, "k": k, "trial": trial, "size": size, "n": F.n, "ok": ok}


SUNFLOWER_CASES = [(2, 2), (2, 3), (3, 2), (3, 3), (3, 4)]
FLOWER_CASES = [(3, 2), (3, 3), (3, 4)]


def campaign_thresholds(trials: int, seed: int, jobs: int = 1) -> dict:
    tasks = [("sunflower", r, k, seed, t) for r, k in SUNFLOWER_CASES for t in range(trials)]
    tasks += [("flower", r, k, seed, t) for r, k in FLOWER_CASES for t in range(trials)]
    recs = pmap(threshold_trial, tasks, jobs)
    by_case: dict[str, dict] = {}
    for rec in recs:
        name = f"{rec['kind']}(r={rec['r']},k={rec['k']})"
        c = by_case.setdefault(name, {"trials": 0, "failures": 0})
        c["trials"] += 1
        c["failures"] += not rec["ok"]
    return {"cases": by_case, "failures": sum(c["failures"] for c in by_case.values())}
