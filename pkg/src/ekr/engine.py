"""EKR verdicts and the two non-strict structures for downsets of <=3-sets."""
from __future__ import annotations

from dataclasses import dataclass

from .family import (
    SetFamily,
    bits,
    downward_closure,
    ground_mask,
    head,
    is_downset,
    is_intersecting,
    k_subsets,
    popcount,
    star_size_max,
    to_labels,
)
from .solver import (
    DEFAULT_BUDGET,
    BudgetExceeded,
    CapExceeded,
    has_nonstar_maximum,
    intersecting_number,
)

UNDECIDED = "UNDECIDED"


class NotADownset(ValueError):
    pass


class SideConditionViolated(ValueError):
    pass


@dataclass(frozen=True)
class Classification:
    kind: str  # "NONE", "CASE1" or "CASE2"
    K: int | None = None
    M: int | None = None
    k_in_H: bool | None = None

    def to_json(self) -> dict:
        out: dict = {"kind": self.kind}
        if self.K is not None:
            out["K"] = to_labels(self.K)
        if self.M is not None:
            out["M"] = to_labels(self.M)
        if self.k_in_H is not None:
            out["k_in_H"] = self.k_in_H
        return out


NONE = Classification("NONE")


@dataclass(frozen=True)
class EkrReport:
    i: int
    s: int
    star_center: int  # 0-based position
    is_ekr: bool
    is_strict: bool | str  # True, False or UNDECIDED
    nonstar_witness: SetFamily | None
    classification: Classification

    def to_json(self) -> dict:
        return {
            "i": self.i,
            "s": self.s,
            "star_center": self.star_center + 1,
            "is_ekr": self.is_ekr,
            "is_strict": self.is_strict,
            "nonstar_witness": None if self.nonstar_witness is None else self.nonstar_witness.labels(),
            "classification": self.classification.kind,
            "classification_data": self.classification.to_json(),
        }


def require_small_downset(H: SetFamily) -> None:
    if any(popcount(m) > 3 for m in H.members):
        raise NotADownset("members of size > 3")
    if not is_downset(H):
        raise NotADownset("family is not closed under subsets")


def ekr_report(H: SetFamily, budget: int = DEFAULT_BUDGET, classify: bool = True) -> EkrReport:
    """i, s and strictness; non-strict downsets are classified.

    Hitting the node budget in the strictness search yields
    ``is_strict == UNDECIDED``; a budget overrun while computing i propagates.
    """
    s, center = star_size_max(H)
    i = intersecting_number(H, budget)
    try:
        nonstar, witness = has_nonstar_maximum(H, i, budget)
        strict: bool | str = not nonstar
    except (BudgetExceeded, CapExceeded):
        strict, witness = UNDECIDED, None
    cls = NONE
    if strict is False and classify:
        require_small_downset(H)
        cls = classify_nonstrict(H)
    return EkrReport(i, s, center, i == s, strict, witness, cls)


# --- the two structures -----------------------------------------------------

def case2_core_family(K: int, M: int) -> list[int]:
    """Pairs of K together with the 3-sets meeting K in two points inside K u M."""
    pairs = k_subsets(K, 2)
    triples = [p | (1 << m) for p in pairs for m in bits(M)]
    return sorted(pairs + triples)


def classify_nonstrict(H: SetFamily) -> Classification:
    """Match H against the two non-strict structures (first K by bitmask)."""
    s, _ = star_size_max(H)
    members = set(H.members)
    full = ground_mask(H.n)
    for K in k_subsets(full, 4):
        if not all(t in members for t in k_subsets(K, 3)):
            continue
        if all(m & K in (0, m) for m in H.members) and s == 7:
            return Classification("CASE1", K)
    pair_union = 0
    for m in H.members:
        if popcount(m) == 2:
            pair_union |= m
    for K in k_subsets(pair_union, 3):
        if not all(p in members for p in k_subsets(K, 2)):
            continue
        # largest admissible M: every m whose three triples with K's pairs lie in H
        M = 0
        for p in bits(full & ~K):
            if all(q | (1 << p) in members for q in k_subsets(K, 2)):
                M |= 1 << p
        k_in = K in members
        if s == 3 * popcount(M) + (4 if k_in else 3):
            return Classification("CASE2", K, M, k_in)
    return NONE


def structure_holds(H: SetFamily, cls: Classification) -> bool:
    """Re-check a classification's defining conditions directly."""
    s, _ = star_size_max(H)
    members = set(H.members)
    if cls.kind == "CASE1":
        K = cls.K
        return (
            popcount(K) == 4
            and all(t in members for t in k_subsets(K, 3))
            and all(m & K in (0, m) for m in H.members)
            and s == 7
        )
    if cls.kind == "CASE2":
        K, M = cls.K, cls.M
        if popcount(K) != 3 or M & K or not all(z in members for z in case2_core_family(K, M)):
            return False
        if (K in members) != cls.k_in_H:
            return False
        return s == 3 * popcount(M) + (4 if cls.k_in_H else 3)
    return False


def construct_case1(n: int) -> SetFamily:
    """All nonempty subsets of size <= 3 of {1,2,3,4}, over ground set [n]."""
    if n < 4:
        raise ValueError("case 1 needs n >= 4")
    H = downward_closure(SetFamily(n, tuple(k_subsets(0b1111, 3))))
    if star_size_max(H)[0] != 7:
        raise SideConditionViolated("largest star is not 7")
    return H


def construct_case2(n: int, K: int, M: int, include_K: bool) -> SetFamily:
    if popcount(K) != 3:
        raise ValueError("K must be a 3-set")
    if K & M:
        raise ValueError("M must avoid K")
    if (K | M) >> n:
        raise ValueError("K u M must lie in [n]")
    Z = case2_core_family(K, M)
    if include_K:
        Z.append(K)
    H = downward_closure(SetFamily(n, tuple(Z)))
    want = 3 * popcount(M) + (4 if include_K else 3)
    s, _ = star_size_max(H)
    if s != want:
        raise SideConditionViolated(f"largest star is {s}, structure needs {want}")
    return H


def case2_parameters(n: int, max_m: int = 2):
    """All (K, M, include_K) with |M| <= max_m over [n], in a fixed order."""
    full = ground_mask(n)
    for K in k_subsets(full, 3):
        rest = full & ~K
        for size in range(max_m + 1):
            for M in ([0] if size == 0 else k_subsets(rest, size)):
                for include in (False, True):
                    yield K, M, include


def nonstar_witness_ok(H: SetFamily, W: SetFamily, size: int) -> bool:
    return len(W) == size and W.is_subfamily_of(H) and is_intersecting(W) and head(W) == 0
