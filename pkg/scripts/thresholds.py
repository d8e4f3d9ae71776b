#!/usr/bin/env python3
"""Sunflower and k-flower thresholds on random uniform families just above
the bound. Prints failures per (kind, r, k)."""
import argparse
import json

from ekr.harness import campaign_thresholds, default_jobs
from ekr.sunflower import threshold_bounds


def main():
    p = argparse.ArgumentParser(description=__doc__)
    p.add_argument("--trials", type=int, default=1000)
    p.add_argument("--seed", type=int, default=2024)
    p.add_argument("--jobs", type=int, default=default_jobs())
    p.add_argument("--json", action="store_true")
    a = p.parse_args()
    rep = campaign_thresholds(a.trials, a.seed, a.jobs)
    if a.json:
        print(json.dumps(rep, indent=1, sort_keys=True))
        return
    for name, c in rep["cases"].items():
        r = int(name.split("r=")[1].split(",")[0])
        k = int(name.split("k=")[1].rstrip(")"))
        er, hastad = threshold_bounds(r, k)
        bound = er if name.startswith("sunflower") else hastad
        print(f"{name:<22} size > {bound:<4} trials {c['trials']:<5} failures {c['failures']}")


if __name__ == "__main__":
    main()
