"""Turn a non-star maximum intersecting family into a star at least as large.

Covers maximum families ``I`` with no singletons and one to three 2-sets.
The 2-sets span a small set ``U``; 3-sets are grouped by their trace on
``U`` (``A(J)``), and ``C(J)`` collects what those 3-sets contain outside
``J``. Each case swaps a few groups for pairs through a chosen center.
"""
from __future__ import annotations

from dataclasses import dataclass
from itertools import permutations

from .family import (
    SetFamily,
    bits,
    head,
    is_intersecting,
    is_star,
    popcount,
    to_labels,
)
from .solver import DEFAULT_BUDGET, intersecting_number


class PreconditionViolated(ValueError):
    pass


@dataclass(frozen=True)
class StarRepairContext:
    I2: SetFamily
    m: int
    A_of_J: dict  # trace J (bitmask inside U) -> 3-sets of I with that trace
    C_of_J: dict  # trace J -> union of A(J) minus J
    U: int = 0


def repair_context(I: SetFamily) -> StarRepairContext:
    I2 = [x for x in I.members if popcount(x) == 2]
    U = 0
    for p in I2:
        U |= p
    groups: dict[int, list[int]] = {}
    for x in I.members:
        if popcount(x) == 3:
            groups.setdefault(x & U, []).append(x)
    A = {J: SetFamily(I.n, tuple(v)) for J, v in groups.items()}
    C = {}
    for J, fam in A.items():
        u = 0
        for x in fam.members:
            u |= x
        C[J] = u & ~J
    return StarRepairContext(SetFamily(I.n, tuple(I2)), popcount(U), A, C, U)


def _A(ctx: StarRepairContext, J: int) -> list[int]:
    fam = ctx.A_of_J.get(J)
    return list(fam.members) if fam else []


def _C(ctx: StarRepairContext, J: int) -> int:
    return ctx.C_of_J.get(J, 0)


def _star_from(I: SetFamily, drop: list[int], add: list[int]) -> SetFamily:
    dropped = set(drop)
    return SetFamily(I.n, tuple(set(x for x in I.members if x not in dropped) | set(add)))


def star_repair(
    H: SetFamily, I: SetFamily, check_maximum: bool = True, budget: int = DEFAULT_BUDGET
) -> SetFamily:
    """Star subfamily of ``H`` with at least ``|I|`` members.

    ``I`` must be a maximum intersecting subfamily of the downset ``H`` (of
    sets of size <= 3) with no singletons and one to three 2-sets, unless it
    is already a star, in which case it is returned unchanged.
    """
    if not I.is_subfamily_of(H):
        raise PreconditionViolated("I is not a subfamily of H")
    if not is_intersecting(I):
        raise PreconditionViolated("I is not intersecting")
    if check_maximum and I.members and len(I) != intersecting_number(H, budget):
        raise PreconditionViolated("I is not a maximum intersecting subfamily")
    if not I.members or is_star(I):
        return I
    if any(popcount(x) == 1 for x in I.members):
        raise PreconditionViolated("I has a singleton but is not a star")
    if any(popcount(x) > 3 for x in I.members):
        raise PreconditionViolated("I has members of size > 3")
    ctx = repair_context(I)
    k = len(ctx.I2)
    if k == 0:
        raise PreconditionViolated("no 2-sets in I; outside the constructive cases")
    if k == 1:
        out = _one_pair(I, ctx)
    elif k == 2:
        out = _two_pairs(I, ctx)
    elif k == 3:
        out = _three_pairs(I, ctx)
    else:
        raise PreconditionViolated(f"{k} pairwise intersecting 2-sets but I is not a star")
    if not (out.is_subfamily_of(H) and is_star(out)):
        raise AssertionError(f"repair produced an invalid family {out}")
    return out


def _three_pairs(I: SetFamily, ctx: StarRepairContext) -> SetFamily:
    pairs = ctx.I2.members
    c = head(pairs)
    if c:
        # 2-sets {c,x},{c,y},{c,z}: the only 3-set avoiding c is {x,y,z}
        centre = c & -c
        through = [x for x in I.members if x & centre]
        span = 0
        for x in through:
            if popcount(x) == 3:
                span |= x
        add = [centre] + [centre | (1 << p) for p in bits(span & ~centre)]
        return _star_from(I, [x for x in I.members if not x & centre], add)
    # triangle on U = {u1,u2,u3}; label so that |C(1bar)| <= |C(2bar)| <= |C(3bar)|
    verts = [1 << p for p in bits(ctx.U)]
    for order in permutations(verts):
        one, two, three = order
        sizes = [popcount(_C(ctx, ctx.U & ~v)) for v in order]
        if sizes[0] <= sizes[1] <= sizes[2]:
            break
    drop = _A(ctx, two | three) + [two | three]
    add = [one] + [one | (1 << p) for p in bits(_C(ctx, one | two))]
    return _star_from(I, drop, add)


def _two_pairs(I: SetFamily, ctx: StarRepairContext) -> SetFamily:
    pairs = ctx.I2.members
    one = head(pairs)
    rest = ctx.U & ~one
    # every 3-set has 1 or both of the other two; A(2,3) are those without 1
    drop = _A(ctx, rest)
    add = [one] + [one | (1 << p) for p in bits(_C(ctx, one))]
    return _star_from(I, drop, add)


def _one_pair(I: SetFamily, ctx: StarRepairContext) -> SetFamily:
    lo, hi = [1 << p for p in bits(ctx.U)]
    A12 = _A(ctx, ctx.U)
    for i, j in ((lo, hi), (hi, lo)):
        if len(_A(ctx, i)) <= len(A12):
            # swap A(i) for the 3-sets of A(1,2) with i removed, plus {j}
            add = [x & ~i for x in A12] + [j]
            return _star_from(I, _A(ctx, i), add)
    if len(_A(ctx, lo)) == 1 and len(_A(ctx, hi)) == 1:
        add = [lo] + [lo | (1 << p) for p in bits(_C(ctx, lo))]
        return _star_from(I, _A(ctx, hi), add)
    one, two = (lo, hi) if len(_A(ctx, lo)) >= 2 else (hi, lo)
    for i in (one, two):
        shrunk = [x & ~i for x in _A(ctx, i)]
        if is_intersecting(shrunk):
            bigger = _star_from(I, A12, shrunk)
            raise PreconditionViolated(
                f"I is not maximum: {len(bigger)} > {len(I)} via element {to_labels(i)}"
            )
    shrunk = [x & ~one for x in _A(ctx, one)]
    for a_idx, a in enumerate(shrunk):
        for b in shrunk[a_idx + 1:]:
            if not a & b:
                quad = a | b
                add = [one] + [one | (1 << p) for p in bits(quad)]
                return _star_from(I, _A(ctx, two), add)
    raise AssertionError("non-intersecting family without a disjoint pair")
