"""Command-line entry point: ``ekr <subcommand> ...``.

Exit codes: 0 success, 1 counterexample found, 2 malformed input,
3 resource cap exceeded.
"""
from __future__ import annotations

import argparse
import json
import logging
import sys
from pathlib import Path

from .engine import NotADownset, classify_nonstrict, ekr_report, require_small_downset
from .enumeration import ResourceGuard, enumerate_downsets
from .family import MalformedFamily, SetFamily, format_fam, parse_fam, to_labels
from .harness import campaign_t4, default_jobs, verify_corpus
from .repair import PreconditionViolated, star_repair
from .solver import DEFAULT_BUDGET, BudgetExceeded, CapExceeded, max_intersecting
from .sunflower import FlowerCertificate, find_k_flower, find_sunflower
from .theorem4 import ContradictionWithPaper

EXIT_OK, EXIT_COUNTEREXAMPLE, EXIT_MALFORMED, EXIT_RESOURCE = 0, 1, 2, 3


def _dump(obj) -> str:
    return json.dumps(obj, separators=(",", ":")) + "\n"


def _read(path: str) -> SetFamily:
    text = sys.stdin.read() if path == "-" else Path(path).read_text()
    return parse_fam(text)


def cmd_solve(args, out):
    H = _read(args.file)
    res = max_intersecting(H, args.budget)
    out.write(_dump({
        "i": res.size,
        "size": res.size,
        "witness": res.witness.labels(),
        "nodes_explored": res.nodes_explored,
        "optimality_proved": res.optimality_proved,
    }))
    return EXIT_OK


def cmd_check(args, out):
    H = _read(args.file)
    rep = ekr_report(H, args.budget, classify=not args.no_classify)
    out.write(_dump(rep.to_json()))
    return EXIT_OK


def cmd_classify(args, out):
    H = _read(args.file)
    require_small_downset(H)
    out.write(_dump(classify_nonstrict(H).to_json()))
    return EXIT_OK


def _cert_json(cert) -> dict:
    if isinstance(cert, FlowerCertificate):
        tau = cert.tau_link
        return {"core": to_labels(cert.core), "tau_link": "UNBOUNDED" if tau == float("inf") else tau, "k": cert.k}
    return {"core": to_labels(cert.core), "petals": [to_labels(p) for p in cert.petals], "k": cert.k}


def cmd_sunflower(args, out):
    cert = find_sunflower(_read(args.file), args.k)
    out.write("none\n" if cert is None else _dump(_cert_json(cert)))
    return EXIT_OK


def cmd_flower(args, out):
    cert = find_k_flower(_read(args.file), args.k, allow_member_core=args.allow_member_core)
    out.write("none\n" if cert is None else _dump(_cert_json(cert)))
    return EXIT_OK


def cmd_repair(args, out):
    H = _read(args.file)
    I = _read(args.intersecting)
    if I.n != H.n:
        raise MalformedFamily("ground sets differ")
    out.write(format_fam(star_repair(H, I, budget=args.budget)))
    return EXIT_OK


def cmd_enumerate(args, out):
    first = True
    for F in enumerate_downsets(args.n, args.max_size, args.iso, guard=args.guard):
        if not first:
            out.write("\n")
        first = False
        out.write(format_fam(F))
    return EXIT_OK


def cmd_verify(args, out):
    rep = verify_corpus(args.n, args.iso, args.jobs, args.resume, args.timings, args.guard)
    out.write(json.dumps(rep, indent=1, sort_keys=True) + "\n")
    return EXIT_COUNTEREXAMPLE if rep["summary"]["counterexamples"] else EXIT_OK


def cmd_campaign_t4(args, out):
    rep = campaign_t4(args.trials, args.seed, args.n, args.jobs)
    bad = [r for r in rep["records"] if r["violations"]]
    if args.repro_dir and bad:
        d = Path(args.repro_dir)
        d.mkdir(parents=True, exist_ok=True)
        for r in bad:
            (d / f"t4_seed{args.seed}_trial{r['trial']}.fam").write_text(r.get("reproducer", ""))
    if not args.full:
        rep = {"summary": rep["summary"], "violations": [r for r in bad]}
    out.write(json.dumps(rep, indent=1, sort_keys=True) + "\n")
    return EXIT_COUNTEREXAMPLE if bad else EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="ekr", description="EKR property of downsets of small sets")
    p.add_argument("-v", "--verbose", action="store_true")
    sub = p.add_subparsers(dest="command", required=True)

    def with_budget(sp):
        sp.add_argument("--budget", type=int, default=DEFAULT_BUDGET, help="search node limit")
        return sp

    sp = with_budget(sub.add_parser("solve", help="maximum intersecting subfamily"))
    sp.add_argument("file")
    sp.set_defaults(func=cmd_solve)

    sp = with_budget(sub.add_parser("check", help="EKR report"))
    sp.add_argument("file")
    sp.add_argument("--no-classify", action="store_true", help="skip classification (any family)")
    sp.set_defaults(func=cmd_check)

    sp = sub.add_parser("classify", help="match the non-strict structures")
    sp.add_argument("file")
    sp.set_defaults(func=cmd_classify)

    for name, fn in (("sunflower", cmd_sunflower), ("flower", cmd_flower)):
        sp = sub.add_parser(name, help=f"find a {name} certificate")
        sp.add_argument("file")
        sp.add_argument("--k", type=int, required=True)
        if name == "flower":
            sp.add_argument("--allow-member-core", action="store_true")
        sp.set_defaults(func=fn)

    sp = with_budget(sub.add_parser("repair", help="star at least as large as a maximum family"))
    sp.add_argument("file")
    sp.add_argument("--intersecting", required=True)
    sp.set_defaults(func=cmd_repair)

    sp = sub.add_parser("enumerate", help="stream downsets as .fam blocks")
    sp.add_argument("--n", type=int, required=True)
    sp.add_argument("--iso", action="store_true")
    sp.add_argument("--max-size", type=int, default=3)
    sp.add_argument("--guard", type=int, default=5)
    sp.set_defaults(func=cmd_enumerate)

    sp = sub.add_parser("verify", help="exhaustive corpus check")
    sp.add_argument("--n", type=int, required=True)
    sp.add_argument("--iso", action="store_true")
    sp.add_argument("--jobs", type=int, default=default_jobs())
    sp.add_argument("--resume", help="JSON-lines file of finished records")
    sp.add_argument("--timings", action="store_true", help="add runtimes (output no longer reproducible)")
    sp.add_argument("--guard", type=int, default=5)
    sp.set_defaults(func=cmd_verify)

    sp = sub.add_parser("campaign-t4", help="randomized large-family campaign")
    sp.add_argument("--n", type=int, default=12, help="largest ground set")
    sp.add_argument("--trials", type=int, default=1000)
    sp.add_argument("--seed", type=int, required=True)
    sp.add_argument("--jobs", type=int, default=default_jobs())
    sp.add_argument("--repro-dir", help="write reproducers of violations here")
    sp.add_argument("--full", action="store_true", help="emit every record")
    sp.set_defaults(func=cmd_campaign_t4)
    return p


def main(argv=None, out=None) -> int:
    out = out or sys.stdout
    parser = build_parser()
    args = parser.parse_args(argv)
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING)
    try:
        return args.func(args, out)
    except (MalformedFamily, NotADownset, PreconditionViolated, OSError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_MALFORMED
    except (BudgetExceeded, CapExceeded, ResourceGuard) as exc:
        print(f"resource limit: {exc}", file=sys.stderr)
        return EXIT_RESOURCE
    except ContradictionWithPaper as exc:
        print(f"counterexample: {exc.step}", file=sys.stderr)
        sys.stdout.write(exc.reproducer())
        return EXIT_COUNTEREXAMPLE


if __name__ == "__main__":
    sys.exit(main())
