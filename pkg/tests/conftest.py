"""Brute-force oracles and hypothesis strategies shared by the suite.

The oracles deliberately avoid the package's search code: they walk all
subfamilies, all subsets or all k-tuples directly.
"""
from itertools import combinations

import numpy as np
import pytest
from hypothesis import strategies as st

from ekr.family import SetFamily


def brute_intersecting_table(members):
    """Boolean array over all 2^m subfamilies: is the subfamily intersecting?"""
    m = len(members)
    ok = np.ones(1 << m, dtype=bool)
    masks = np.arange(1 << m, dtype=np.int64)
    # compat[j]: bitmask of earlier members that meet member j
    for top in range(m):
        lo, hi = 1 << top, 1 << (top + 1)
        rest = masks[lo:hi] ^ lo
        compat = 0
        for j in range(top):
            if members[j] & members[top]:
                compat |= 1 << j
        ok[lo:hi] = ok[rest] & ((rest & ~compat) == 0)
    return ok


def popcounts(m):
    masks = np.arange(1 << m, dtype=np.int64)
    pc = np.zeros(1 << m, dtype=np.int64)
    for b in range(m):
        pc += (masks >> b) & 1
    return pc


def brute_max_intersecting(F: SetFamily):
    """(i, list of all maximum subfamilies as member tuples)."""
    members = list(F.members)
    m = len(members)
    ok = brute_intersecting_table(members)
    pc = popcounts(m)
    best = int(pc[ok].max()) if m else 0
    winners = np.nonzero(ok & (pc == best))[0]
    fams = [tuple(members[j] for j in range(m) if w >> j & 1) for w in winners.tolist()]
    return best, fams


def brute_closure(F: SetFamily) -> set:
    out = set()
    for m in F.members:
        pos = [p for p in range(F.n) if m >> p & 1]
        for r in range(1, len(pos) + 1):
            for c in combinations(pos, r):
                out.add(sum(1 << p for p in c))
    return out


def brute_covering_number(F: SetFamily):
    if F.has_empty:
        return float("inf")
    if not F.members:
        return 0
    for r in range(F.n + 1):
        for c in combinations(range(F.n), r):
            S = sum(1 << p for p in c)
            if all(m & S for m in F.members):
                return r
    raise AssertionError("unreachable")


def brute_has_sunflower(F: SetFamily, k: int) -> bool:
    for combo in combinations(F.members, k):
        if k == 1:
            return True
        core = combo[0] & combo[1]
        if all(a & b == core for a, b in combinations(combo, 2)) and all(x != core for x in combo):
            return True
    return False


@st.composite
def families(draw, max_n=8, max_members=12, max_size=None):
    n = draw(st.integers(1, max_n))
    top = (1 << n) - 1
    raw = draw(st.lists(st.integers(1, top), max_size=max_members))
    if max_size is not None:
        raw = [x for x in raw if x.bit_count() <= max_size]
    return SetFamily(n, tuple(raw))


@st.composite
def uniform_families(draw, r=3, max_n=9, max_members=12):
    n = draw(st.integers(r, max_n))
    pool = [sum(1 << p for p in c) for c in combinations(range(n), r)]
    picked = draw(st.lists(st.sampled_from(pool), max_size=max_members, unique=True))
    return SetFamily(n, tuple(picked))


def fam(n, *sets):
    return SetFamily.from_labels(n, sets)


@pytest.fixture
def case1_downset():
    return fam(4, [1, 2, 3], [1, 2, 4], [1, 3, 4], [2, 3, 4])


# --- acceptance summary -----------------------------------------------------

_ACCEPTANCE: dict = {}


def pytest_runtest_logreport(report):
    if "test_acceptance" not in report.nodeid or report.when != "call" and report.passed:
        return
    name = report.nodeid.split("::")[-1]
    if not name.startswith("test_criterion_"):
        return
    detail = dict(report.user_properties).get("detail", "")
    if report.failed or name not in _ACCEPTANCE:
        _ACCEPTANCE[name] = ("PASS" if report.passed else "FAIL", detail)


def pytest_terminal_summary(terminalreporter):
    if not _ACCEPTANCE:
        return
    terminalreporter.section("acceptance criteria")
    for name in sorted(_ACCEPTANCE):
        status, detail = _ACCEPTANCE[name]
        num = int(name.split("_")[2])
        terminalreporter.write_line(f"criterion {num:2d}: {status}  {detail}")
