#!/usr/bin/env python3
"""Randomized campaign for downsets whose largest intersecting family has
at least 31 members, plus the |H^3| > 10n pigeonhole check."""
import argparse
import json
from dataclasses import asdict, dataclass
from pathlib import Path

from ekr.harness import campaign_pigeonhole, campaign_t4, default_jobs


@dataclass
class CampaignConfig:
    trials: int = 1000
    seed: int = 2024
    n_max: int = 12
    jobs: int = 1
    out: str = "results/t4.json"


def main():
    p = argparse.ArgumentParser(description=__doc__)
    p.add_argument("--trials", type=int, default=1000)
    p.add_argument("--seed", type=int, default=2024)
    p.add_argument("--n-max", type=int, default=12)
    p.add_argument("--jobs", type=int, default=default_jobs())
    p.add_argument("--out", default="results/t4.json")
    a = p.parse_args()
    cfg = CampaignConfig(a.trials, a.seed, a.n_max, a.jobs, a.out)

    rep = campaign_t4(cfg.trials, cfg.seed, cfg.n_max, cfg.jobs)
    pig = campaign_pigeonhole(cfg.trials, cfg.seed, cfg.jobs)
    rep["config"] = asdict(cfg)
    rep["pigeonhole"] = {"failures": pig["failures"], "min_s": pig["min_s"], "trials": cfg.trials}
    Path(cfg.out).parent.mkdir(parents=True, exist_ok=True)
    Path(cfg.out).write_text(json.dumps(rep, indent=1, sort_keys=True) + "\n")

    s = rep["summary"]
    print(f"large-family campaign: {s['trials']} trials, {s['counterexamples']} violations, min i = {s['min_i']}")
    for route, count in s["routes"].items():
        print(f"  {route:<28} {count}")
    print(f"pigeonhole: {pig['failures']} failures, min s = {pig['min_s']}")
    for r in rep["records"]:
        if r["violations"]:
            print(f"trial {r['trial']}: {r['violations']}")
            print(r.get("reproducer", ""))


if __name__ == "__main__":
    main()
