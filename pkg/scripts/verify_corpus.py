#!/usr/bin/env python3
"""Exhaustive EKR check on every downset of ([n] choose <=3) for n = 1..N.

Writes one JSON report per n plus a summary table to stdout.
"""
import argparse
import json
import time
from dataclasses import asdict, dataclass
from pathlib import Path

from ekr.harness import default_jobs, verify_corpus


@dataclass
class CorpusConfig:
    n_max: int = 5
    iso: bool = True
    jobs: int = 1
    out_dir: str = "results/corpus"


def main():
    p = argparse.ArgumentParser(description=__doc__)
    p.add_argument("--n-max", type=int, default=5)
    p.add_argument("--labeled", action="store_true", help="do not reduce up to relabeling")
    p.add_argument("--jobs", type=int, default=default_jobs())
    p.add_argument("--out-dir", default="results/corpus")
    a = p.parse_args()
    cfg = CorpusConfig(a.n_max, not a.labeled, a.jobs, a.out_dir)
    out = Path(cfg.out_dir)
    out.mkdir(parents=True, exist_ok=True)
    print(f"{'n':>2} {'instances':>9} {'nonstrict':>9} {'cex':>4} {'secs':>7}")
    for n in range(1, cfg.n_max + 1):
        t0 = time.perf_counter()
        rep = verify_corpus(n, cfg.iso, cfg.jobs, resume=out / f"n{n}.jsonl")
        s = rep["summary"]
        (out / f"n{n}.json").write_text(json.dumps(rep, indent=1, sort_keys=True) + "\n")
        print(f"{n:>2} {s['instances']:>9} {s['nonstrict']:>9} {s['counterexamples']:>4} "
              f"{time.perf_counter() - t0:>7.2f}")
    (out / "config.json").write_text(json.dumps(asdict(cfg), indent=1) + "\n")


if __name__ == "__main__":
    main()
