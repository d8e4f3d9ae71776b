"""Replay of the large-family argument: a maximum intersecting family of a
downset of <=3-sets with at least 31 members is a star.

The replay checks every step on the concrete input. A failed step raises
:class:`ContradictionWithPaper` carrying a reproducer, never a silent pass.
"""
from __future__ import annotations

import logging
from dataclasses import dataclass, field

from .engine import require_small_downset
from .family import (
    SetFamily,
    bits,
    cross_intersecting,
    format_fam,
    head,
    is_intersecting,
    popcount,
    star_sizes,
    to_labels,
)
from .repair import PreconditionViolated
from .solver import DEFAULT_BUDGET, intersecting_number
from .sunflower import max_flower

log = logging.getLogger(__name__)

MIN_SIZE = 31
FLOWER_K = 4
FLOWER_THRESHOLD = (FLOWER_K - 1) ** 3 + 1  # 28


class ContradictionWithPaper(RuntimeError):
    """A step of the argument failed on a real input."""

    def __init__(self, step: str, H: SetFamily, I: SetFamily):
        super().__init__(step)
        self.step = step
        self.H = H
        self.I = I

    def reproducer(self) -> str:
        return (
            format_fam(self.H, comment=f"downset H\nfailed step: {self.step}")
            + "\n"
            + format_fam(self.I, comment="maximum intersecting family I")
        )


@dataclass(frozen=True)
class Theorem4Decomposition:
    a: int  # 0-based positions, a < b
    b: int
    S: SetFamily  # 3-sets of I containing a and b
    A: SetFamily
    B: SetFamily
    A_prime: SetFamily
    B_prime: SetFamily
    I3: SetFamily

    @property
    def nA(self) -> int:
        return popcount(self.A_prime.union())

    @property
    def nB(self) -> int:
        return popcount(self.B_prime.union())

    def to_json(self) -> dict:
        return {
            "core": [self.a + 1, self.b + 1],
            "S": self.S.labels(),
            "A": self.A.labels(),
            "B": self.B.labels(),
            "A_prime": self.A_prime.labels(),
            "B_prime": self.B_prime.labels(),
            "nA": self.nA,
            "nB": self.nB,
        }


def decompose(I3: SetFamily, a: int, b: int) -> Theorem4Decomposition:
    """Split the 3-sets by their trace on the core {a, b}."""
    if a > b:
        a, b = b, a
    ab = (1 << a) | (1 << b)
    S = [x for x in I3.members if x & ab == ab]
    A = [x for x in I3.members if x & ab == 1 << a]
    B = [x for x in I3.members if x & ab == 1 << b]
    fam = lambda xs: SetFamily(I3.n, tuple(xs))  # noqa: E731
    return Theorem4Decomposition(
        a, b, fam(S), fam(A), fam(B),
        fam(x & ~(1 << a) for x in A), fam(x & ~(1 << b) for x in B), I3,
    )


@dataclass(frozen=True)
class ClaimCheck:
    applicable: bool
    holds: bool
    lhs: int
    rhs: int

    def to_json(self) -> dict:
        return {"applicable": self.applicable, "holds": self.holds, "lhs": self.lhs, "rhs": self.rhs}


def _has_disjoint_pair(F: SetFamily) -> bool:
    return not is_intersecting(F)


def claim_bounds(d: Theorem4Decomposition, H: SetFamily) -> dict[str, ClaimCheck]:
    """Evaluate each bound's hypothesis and inequality on a decomposition.

    shrunk-size    |A'| <= 2 + n_A (and for B'), when A', B' are both
                   intersecting or both have two or more edges
    disjoint-edge  |A'| <= n_A + |S| + 1 when A' has a disjoint pair and |B'| = 1
    star-size      |H_a| >= 1 + (|S| + n_A + 1) + (|S| + |A'|), and for b
    star-sum       |H_a| + |H_b| > 2(|I3| + 3) when |S| > 3 and one of the
                   first two hypotheses holds

    All bounds presuppose that both shrunk families are nonempty; ``holds``
    is reported even when the hypothesis fails, ``applicable`` says whether
    it matters.
    """
    Ap, Bp = d.A_prime, d.B_prime
    s = len(d.S)
    both = bool(Ap.members) and bool(Bp.members)
    stars = star_sizes(H)
    Ha, Hb = stars[d.a], stars[d.b]
    out: dict[str, ClaimCheck] = {}

    hyp1 = both and (
        (is_intersecting(Ap) and is_intersecting(Bp)) or (len(Ap) >= 2 and len(Bp) >= 2)
    )
    out["shrunk-size[A']"] = ClaimCheck(hyp1, len(Ap) <= 2 + d.nA, len(Ap), 2 + d.nA)
    out["shrunk-size[B']"] = ClaimCheck(hyp1, len(Bp) <= 2 + d.nB, len(Bp), 2 + d.nB)

    hyp2a = both and _has_disjoint_pair(Ap) and len(Bp) == 1
    hyp2b = both and _has_disjoint_pair(Bp) and len(Ap) == 1
    out["disjoint-edge[A']"] = ClaimCheck(hyp2a, len(Ap) <= d.nA + s + 1, len(Ap), d.nA + s + 1)
    out["disjoint-edge[B']"] = ClaimCheck(hyp2b, len(Bp) <= d.nB + s + 1, len(Bp), d.nB + s + 1)

    rhs_a = 1 + (s + d.nA + 1) + (s + len(Ap))
    rhs_b = 1 + (s + d.nB + 1) + (s + len(Bp))
    out["star-size[a]"] = ClaimCheck(both, Ha >= rhs_a, Ha, rhs_a)
    out["star-size[b]"] = ClaimCheck(both, Hb >= rhs_b, Hb, rhs_b)

    rhs4 = 2 * (len(d.I3) + 3)
    hyp4 = both and s > 3 and (hyp1 or hyp2a or hyp2b)
    out["star-sum"] = ClaimCheck(hyp4, Ha + Hb > rhs4, Ha + Hb, rhs4)
    return out


@dataclass(frozen=True)
class Theorem4Result:
    verdict: str  # always "STAR" when returned
    center: int  # 0-based
    route: str
    flower_core: int | None = None
    flower_k: int | None = None
    decomposition: Theorem4Decomposition | None = None
    claims: dict = field(default_factory=dict)

    def to_json(self) -> dict:
        return {
            "verdict": self.verdict,
            "center": self.center + 1,
            "route": self.route,
            "flower_core": None if self.flower_core is None else to_labels(self.flower_core),
            "flower_k": self.flower_k,
            "decomposition": None if self.decomposition is None else self.decomposition.to_json(),
            "claims": {k: v.to_json() for k, v in self.claims.items()},
        }


def theorem4_pipeline(
    H: SetFamily,
    I: SetFamily,
    check_maximum: bool = True,
    deep: bool = False,
    budget: int = DEFAULT_BUDGET,
) -> Theorem4Result:
    """Replay the argument on a maximum intersecting family ``I`` of ``H``.

    A maximum star in a downset always contains its center as a singleton,
    so on genuine inputs the singleton shortcut fires. With ``deep`` the
    flower analysis of the 3-sets is replayed as well whenever there are
    enough of them, and its center must agree.
    """
    require_small_downset(H)
    if not I.is_subfamily_of(H) or not is_intersecting(I):
        raise PreconditionViolated("I must be an intersecting subfamily of H")
    if len(I) < MIN_SIZE:
        raise PreconditionViolated(f"|I| = {len(I)} < {MIN_SIZE}")
    if check_maximum and len(I) != intersecting_number(H, budget):
        raise PreconditionViolated("I is not a maximum intersecting subfamily")

    def fail(step: str):
        exc = ContradictionWithPaper(step, H, I)
        log.error("counterexample candidate: %s\n%s", step, exc.reproducer())
        raise exc

    def star_at(x: int, route: str, **kw) -> Theorem4Result:
        if not head(I) >> x & 1:
            fail(f"{route}: I is not a star at {x + 1}")
        return Theorem4Result("STAR", x, route, **kw)

    I1 = [x for x in I.members if popcount(x) == 1]
    I2 = [x for x in I.members if popcount(x) == 2]
    I3 = SetFamily(I.n, tuple(x for x in I.members if popcount(x) == 3))
    shortcut = None
    if I1:
        shortcut = star_at(I1[0].bit_length() - 1, "singleton")
    elif len(I2) >= 4:
        hd = head(I2)
        if not hd:
            fail("four or more pairwise intersecting 2-sets without a common point")
        shortcut = star_at(next(bits(hd)), "pairs")
    if shortcut is not None:
        if not deep or len(I3) < FLOWER_THRESHOLD:
            return shortcut
        res = _flower_steps(H, I3, fail, star_at)
        return Theorem4Result(
            res.verdict, res.center, f"{shortcut.route}+{res.route}",
            res.flower_core, res.flower_k, res.decomposition, res.claims,
        )
    if len(I3) < FLOWER_THRESHOLD:
        fail(f"only {len(I3)} 3-sets")
    return _flower_steps(H, I3, fail, star_at)


def _flower_steps(H, I3, fail, star_at) -> Theorem4Result:
    fl = max_flower(I3, start=FLOWER_K)
    if fl is None:
        fail(f"no {FLOWER_K}-flower among {len(I3)} 3-sets")
    core = fl.core
    if popcount(core) == 0:
        fail("flower with empty core in an intersecting family")
    if popcount(core) == 1:
        return star_at(core.bit_length() - 1, "flower-core-1", flower_core=core, flower_k=fl.k)
    a, b = list(bits(core))
    d = decompose(I3, a, b)
    if len(d.S) < FLOWER_K:
        fail(f"sunflower through the core has {len(d.S)} < {FLOWER_K} petals")
    if any(not x & core for x in I3.members):
        fail("a 3-set misses the core")
    if not cross_intersecting(d.A_prime, d.B_prime):
        fail("shrunk families are not cross-intersecting")
    claims = claim_bounds(d, H)
    for name, c in claims.items():
        if c.applicable and not c.holds:
            fail(f"claim {name} fails: {c.lhs} vs {c.rhs}")
    kw = dict(flower_core=core, flower_k=fl.k, decomposition=d, claims=claims)
    if not d.B.members:
        return star_at(a, "flower-core-2", **kw)
    if not d.A.members:
        return star_at(b, "flower-core-2", **kw)
    fail("both shrunk families nonempty: a star larger than I would exist")
