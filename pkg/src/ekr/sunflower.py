"""Sunflowers, k-flowers and the Erdos-Rado / Hastad thresholds."""
from __future__ import annotations

from dataclasses import dataclass
from math import factorial

from .family import (
    UNBOUNDED,
    SetFamily,
    covering_number,
    link,
    popcount,
    subsets,
)


@dataclass(frozen=True)
class SunflowerCertificate:
    core: int
    petals: tuple[int, ...]

    @property
    def k(self) -> int:
        return len(self.petals)


@dataclass(frozen=True)
class FlowerCertificate:
    core: int
    tau_link: float | int
    k: int


def threshold_bounds(r: int, k: int) -> tuple[int, int]:
    """``(r! (k-1)^r, (k-1)^r)``: sizes above which a sunflower, resp. a
    k-flower, is forced in an r-uniform family."""
    if r < 1 or k < 1:
        raise ValueError("r and k must be positive")
    if r > 64 or k > 2**32:
        raise OverflowError(f"threshold out of range for r={r}, k={k}")
    hastad = (k - 1) ** r
    return factorial(r) * hastad, hastad


def _pack(link_sets: list[int], k: int) -> list[int] | None:
    """k pairwise-disjoint sets from ``link_sets`` (ascending-index order), or None."""
    m = len(link_sets)
    if not m:
        return None if k else []
    smallest = min(popcount(s) for s in link_sets)
    # suffix[j]: points still available among sets j.. ; each further petal needs >= smallest of them
    suffix = [0] * (m + 1)
    for j in range(m - 1, -1, -1):
        suffix[j] = suffix[j + 1] | link_sets[j]

    def go(start: int, used: int, chosen: list[int]):
        if len(chosen) == k:
            return chosen
        if popcount(suffix[start] & ~used) < (k - len(chosen)) * smallest:
            return None
        for j in range(start, m - (k - len(chosen)) + 1):
            s = link_sets[j]
            if not s & used:
                got = go(j + 1, used | s, chosen + [j])
                if got is not None:
                    return got
        return None

    return go(0, 0, [])


def _candidate_cores(F: SetFamily) -> list[int]:
    cores = {0}
    ms = F.members
    for i, a in enumerate(ms):
        for b in ms[i + 1:]:
            cores.add(a & b)
    return sorted(cores, key=lambda c: (popcount(c), c))


def find_sunflower(F: SetFamily, k: int) -> SunflowerCertificate | None:
    """First k-petal sunflower in ``F`` by (core size, core bitmask, petal order).

    For ``k = 1`` the core is the empty set and the petal is the smallest member.
    """
    if k < 1:
        raise ValueError("k must be positive")
    if k == 1:
        return SunflowerCertificate(0, (F.members[0],)) if F.members else None
    for core in _candidate_cores(F):
        sets = [m for m in F.members if m & core == core and m != core]
        if len(sets) < k:
            continue
        picked = _pack([m & ~core for m in sets], k)
        if picked is not None:
            return SunflowerCertificate(core, tuple(sets[j] for j in picked))
    return None


def flower_cores(F: SetFamily, allow_member_core: bool = False) -> list[int]:
    """Subsets of members in (size, bitmask) order.

    Unless ``allow_member_core`` is set, cores that are themselves members are
    skipped: for those the link contains the empty set and every threshold
    holds vacuously.
    """
    cores = set()
    for m in F.members:
        cores.update(subsets(m))
    if not allow_member_core:
        cores.difference_update(F.members)
    return sorted(cores, key=lambda c: (popcount(c), c))


def find_k_flower(F: SetFamily, k: int, allow_member_core: bool = False) -> FlowerCertificate | None:
    if k < 1:
        raise ValueError("k must be positive")
    for core in flower_cores(F, allow_member_core):
        L = link(F, core)
        # tau(L) <= |L|, and tau is unbounded iff L contains the empty set
        if not L.has_empty and len(L) < k:
            continue
        tau = covering_number(L).value
        if tau >= k:
            return FlowerCertificate(core, tau, k)
    return None


def max_flower(F: SetFamily, start: int = 1) -> FlowerCertificate | None:
    """Largest k such that ``F`` is a k-flower over some proper core.

    Same answer as raising k from ``start`` until :func:`find_k_flower` fails:
    the core is the first one in (size, bitmask) order attaining the largest
    covering number. Covering numbers are computed once per core.
    """
    best_core, best_tau = None, start - 1
    for core in flower_cores(F):
        L = link(F, core)
        if len(L) <= best_tau:
            continue
        tau = covering_number(L).value
        if tau > best_tau:
            best_core, best_tau = core, tau
    if best_core is None:
        return None
    return FlowerCertificate(best_core, best_tau, best_tau)


def verify_certificate(cert: SunflowerCertificate | FlowerCertificate, F: SetFamily) -> bool:
    """Re-check a certificate against ``F`` without using the finders."""
    if isinstance(cert, SunflowerCertificate):
        petals = cert.petals
        if not petals or len(set(petals)) != len(petals):
            return False
        if any(p not in F for p in petals):
            return False
        if len(petals) == 1:
            p = petals[0]
            return cert.core & p == cert.core and cert.core != p
        for i, a in enumerate(petals):
            if a & cert.core != cert.core or a == cert.core:
                return False
            for b in petals[i + 1:]:
                if a & b != cert.core:
                    return False
        return True
    if isinstance(cert, FlowerCertificate):
        tau = covering_number(link(F, cert.core)).value
        if tau != cert.tau_link:
            return False
        return tau == UNBOUNDED or tau >= cert.k
    return False
