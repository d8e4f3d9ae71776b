"""Exact maximum intersecting subfamilies.

Members are vertices; two members conflict when they are disjoint. An
intersecting subfamily is an independent set of the conflict graph. The
search is a depth-first branch and bound over vertices in ascending member
order, so the first family of a given size that it meets is the
lexicographically smallest one. Two prunes do the work:

* a greedy partition of the candidates into classes of pairwise disjoint
  members (at most one member per class can be kept);
* when only families with empty head are wanted, a branch dies as soon as
  some element lies in every chosen member and every remaining candidate.

Any intersecting family larger than ``s(H)`` has empty head, so the
optimality proof for ``i(H) = s(H)`` is a head-constrained search.
"""
from __future__ import annotations

import logging
from dataclasses import dataclass
from typing import Iterator

from .family import SetFamily, bits, head, star_size_max

log = logging.getLogger(__name__)

DEFAULT_BUDGET = 10**8
DEFAULT_CAP = 10**6


class BudgetExceeded(RuntimeError):
    def __init__(self, msg: str, result: "SolveResult | None" = None):
        super().__init__(msg)
        self.result = result


class CapExceeded(RuntimeError):
    pass


@dataclass(frozen=True)
class SolveResult:
    size: int
    witness: SetFamily
    nodes_explored: int
    optimality_proved: bool


class _Search:
    def __init__(self, H: SetFamily, budget: int):
        self.H = H
        self.members = H.members
        m = len(self.members)
        self.all = (1 << m) - 1
        self.conflict = [0] * m
        for i, a in enumerate(self.members):
            c = 0
            for j, b in enumerate(self.members):
                if not a & b:
                    c |= 1 << j
            self.conflict[i] = c
        # vertices whose member contains element x
        self.containing = [0] * H.n
        for i, a in enumerate(self.members):
            for p in bits(a):
                self.containing[p] |= 1 << i
        self.budget = budget
        self.nodes = 0

    def family(self, verts: list[int]) -> SetFamily:
        return SetFamily(self.H.n, tuple(self.members[v] for v in verts))

    def _classes_at_least(self, cand: int, need: int) -> bool:
        """Greedy partition of ``cand`` into pairwise-disjoint classes; True
        iff it uses at least ``need`` classes."""
        conflict = self.conflict
        k = 0
        left = cand
        while left:
            k += 1
            if k >= need:
                return True
            q = left
            while q:
                low = q & -q
                left ^= low
                q &= conflict[low.bit_length() - 1]
        return k >= need

    def _heads_escapable(self, hd: int, cand: int) -> bool:
        """Every element of ``hd`` is avoided by some candidate."""
        containing = self.containing
        while hd:
            low = hd & -hd
            hd ^= low
            if not cand & ~containing[low.bit_length() - 1]:
                return False
        return True

    def run(self, target: int, exact: bool, empty_head: bool) -> Iterator[list[int]]:
        """Yield vertex lists of cliques in lexicographic order.

        exact: yield families of size exactly ``target`` (``target`` must be
        the maximum so such families are maximal); otherwise stop growing at
        the first family of size >= ``target``.
        """
        full_head = (1 << self.H.n) - 1
        yield from self._go([], full_head, self.all, target, exact, empty_head)

    def _go(self, cur, hd, cand, target, exact, empty_head):
        self.nodes += 1
        if self.nodes > self.budget:
            raise BudgetExceeded(f"node budget {self.budget} exhausted")
        conflict = self.conflict
        # members compatible with every other candidate belong to every
        # maximal extension
        forced = 0
        q = cand
        while q:
            low = q & -q
            q ^= low
            if not conflict[low.bit_length() - 1] & cand:
                forced |= low
        if forced:
            cur = cur + list(bits(forced))
            for v in bits(forced):
                hd &= self.members[v]
            cand &= ~forced
        size = len(cur)
        if empty_head and hd and not self._heads_escapable(hd, cand):
            return
        if size >= target and (not exact or not cand):
            if not exact or size == target:
                yield sorted(cur)
            return
        need = target - size
        if cand.bit_count() < need or not self._classes_at_least(cand, need):
            return
        rest = cand
        while rest:
            if rest.bit_count() < need:
                return
            low = rest & -rest
            rest ^= low
            v = low.bit_length() - 1
            sub = rest & ~conflict[v]
            yield from self._go(cur + [v], hd & self.members[v], sub, target, exact, empty_head)
            if empty_head and hd and not self._heads_escapable(hd, rest):
                return


def _compute_max(search: _Search) -> tuple[int, list[int] | None]:
    """Return (i, None) when a star is optimal, else (i, some optimum)."""
    s, _ = star_size_max(search.H)
    best = s
    found = None
    while True:
        hit = next(search.run(best + 1, exact=False, empty_head=True), None)
        if hit is None:
            return best, found
        best, found = len(hit), hit


def max_intersecting(H: SetFamily, budget: int = DEFAULT_BUDGET) -> SolveResult:
    """i(H) with the lexicographically smallest maximum subfamily as witness."""
    search = _Search(H, budget)
    if not H.members:
        return SolveResult(0, SetFamily(H.n), 1, True)
    s, center = star_size_max(H)
    best_verts = None
    try:
        size, _ = _compute_max(search)
        best_verts = next(search.run(size, exact=True, empty_head=False))
    except BudgetExceeded as exc:
        star_verts = [i for i, m in enumerate(H.members) if m >> center & 1]
        partial = SolveResult(s, search.family(star_verts), search.nodes, False)
        raise BudgetExceeded(str(exc), partial) from None
    return SolveResult(size, search.family(best_verts), search.nodes, True)


def intersecting_number(H: SetFamily, budget: int = DEFAULT_BUDGET) -> int:
    """i(H) without constructing the lexicographic witness."""
    if not H.members:
        return 0
    return _compute_max(_Search(H, budget))[0]


def enumerate_maximum_intersecting(
    H: SetFamily,
    cap: int = DEFAULT_CAP,
    size: int | None = None,
    budget: int = DEFAULT_BUDGET,
) -> Iterator[SetFamily]:
    """Every maximum intersecting subfamily, in lexicographic order."""
    if not H.members:
        yield SetFamily(H.n)
        return
    if size is None:
        size = intersecting_number(H, budget)
    search = _Search(H, budget)
    for count, verts in enumerate(search.run(size, exact=True, empty_head=False), 1):
        if count > cap:
            raise CapExceeded(f"more than {cap} maximum intersecting subfamilies")
        yield search.family(verts)


def has_nonstar_maximum(
    H: SetFamily, size: int | None = None, budget: int = DEFAULT_BUDGET
) -> tuple[bool, SetFamily | None]:
    """Whether some maximum intersecting subfamily has empty head.

    Runs the head-constrained search directly rather than enumerating all
    maxima; the witness is the lexicographically smallest such family.
    """
    if not H.members:
        return False, None
    if size is None:
        size = intersecting_number(H, budget)
    search = _Search(H, budget)
    hit = next(search.run(size, exact=True, empty_head=True), None)
    if hit is None:
        return False, None
    fam = search.family(hit)
    assert head(fam) == 0
    return True, fam
