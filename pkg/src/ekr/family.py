"""Ground sets, set families and the elementary operations on them.

Sets are plain ``int`` bitmasks: bit ``i`` stands for element ``i + 1``.
Labels are 1-based only at the text boundary (``parse_fam`` / ``format_fam``
and ``to_labels``).
"""
from __future__ import annotations

from dataclasses import dataclass, field
from itertools import combinations
from typing import Iterable, Iterator, Sequence

MAX_N = 64

ElementSet = int


class EmptyFamily(ValueError):
    pass


class MalformedFamily(ValueError):
    pass


UNBOUNDED = float("inf")


def popcount(x: int) -> int:
    return x.bit_count()


def bits(x: int) -> Iterator[int]:
    """Yield the 0-based positions set in ``x``, ascending."""
    while x:
        low = x & -x
        yield low.bit_length() - 1
        x ^= low


def make_set(labels: Iterable[int]) -> ElementSet:
    """Bitmask of a collection of 1-based labels."""
    out = 0
    for v in labels:
        if v < 1 or v > MAX_N:
            raise MalformedFamily(f"label {v} outside 1..{MAX_N}")
        out |= 1 << (v - 1)
    return out


def to_labels(x: ElementSet) -> list[int]:
    return [p + 1 for p in bits(x)]


def subsets(x: ElementSet) -> Iterator[int]:
    """All subsets of ``x`` (including 0 and ``x``), in no particular order."""
    sub = x
    while True:
        yield sub
        if sub == 0:
            return
        sub = (sub - 1) & x


@dataclass(frozen=True)
class SetFamily:
    """A duplicate-free family of nonempty subsets of ``[n]``.

    ``members`` is kept sorted ascending by bitmask value. ``has_empty`` is
    only ever set on results of :func:`link` where some member equalled the
    link set.
    """

    n: int
    members: tuple[int, ...] = ()
    has_empty: bool = False
    _index: dict = field(default=None, init=False, repr=False, compare=False, hash=False)

    def __post_init__(self):
        if not 0 <= self.n <= MAX_N:
            raise MalformedFamily(f"ground set size {self.n} outside 0..{MAX_N}")
        ms = tuple(sorted(set(self.members)))
        if ms and ms[0] <= 0:
            raise MalformedFamily("the empty set is stored via has_empty, not as a member")
        if ms and ms[-1] >> self.n:
            raise MalformedFamily(f"member outside ground set [{self.n}]")
        object.__setattr__(self, "members", ms)

    @classmethod
    def from_labels(cls, n: int, sets: Iterable[Iterable[int]]) -> "SetFamily":
        return cls(n, tuple(make_set(s) for s in sets))

    def __len__(self) -> int:
        return len(self.members)

    def __iter__(self) -> Iterator[int]:
        return iter(self.members)

    def __contains__(self, x: int) -> bool:
        if self._index is None:
            object.__setattr__(self, "_index", frozenset(self.members))
        return x in self._index

    def index(self, x: int) -> int:
        return self.members.index(x)

    def with_members(self, members: Iterable[int]) -> "SetFamily":
        return SetFamily(self.n, tuple(members))

    def is_subfamily_of(self, other: "SetFamily") -> bool:
        return all(m in other for m in self.members)

    def union(self) -> int:
        out = 0
        for m in self.members:
            out |= m
        return out

    def labels(self) -> list[list[int]]:
        return [to_labels(m) for m in self.members]

    def __str__(self) -> str:
        body = ", ".join("{" + ",".join(map(str, s)) + "}" for s in self.labels())
        return f"[n={self.n}] {{{body}}}"


def ground_mask(n: int) -> int:
    return (1 << n) - 1


def downward_closure(F: SetFamily) -> SetFamily:
    seen = set()
    for m in F.members:
        if m in seen:
            continue
        for sub in subsets(m):
            if sub:
                seen.add(sub)
    return SetFamily(F.n, tuple(seen))


def is_downset(F: SetFamily) -> bool:
    for m in F.members:
        rest = m
        while rest:
            low = rest & -rest
            rest ^= low
            drop = m ^ low
            if drop and drop not in F:
                return False
    return True


def is_intersecting(F: SetFamily | Sequence[int]) -> bool:
    ms = F.members if isinstance(F, SetFamily) else list(F)
    for i, a in enumerate(ms):
        for b in ms[i + 1:]:
            if not a & b:
                return False
    return True


def layer(F: SetFamily, r: int) -> SetFamily:
    return SetFamily(F.n, tuple(m for m in F.members if popcount(m) == r))


def star(F: SetFamily, x: int) -> SetFamily:
    """Members containing the element at 0-based position ``x``."""
    bit = 1 << x
    return SetFamily(F.n, tuple(m for m in F.members if m & bit))


def star_sizes(F: SetFamily) -> list[int]:
    counts = [0] * F.n
    for m in F.members:
        for p in bits(m):
            counts[p] += 1
    return counts


def star_size_max(F: SetFamily) -> tuple[int, int]:
    """Return ``(s(F), center)``; the center is the smallest maximizing position.

    For a family with no members the center is 0 and s is 0.
    """
    counts = star_sizes(F)
    if not counts:
        return 0, 0
    s = max(counts)
    return s, counts.index(s)


def head(F: SetFamily | Sequence[int]) -> ElementSet:
    ms = F.members if isinstance(F, SetFamily) else list(F)
    if not ms:
        raise EmptyFamily("head of an empty family")
    out = ms[0]
    for m in ms[1:]:
        out &= m
    return out


def is_star(F: SetFamily | Sequence[int]) -> bool:
    """True for a nonempty family with nonempty head."""
    ms = F.members if isinstance(F, SetFamily) else list(F)
    return bool(ms) and head(ms) != 0


def link(F: SetFamily, Y: ElementSet) -> SetFamily:
    out = []
    has_empty = False
    for m in F.members:
        if m & Y == Y:
            rest = m & ~Y
            if rest:
                out.append(rest)
            else:
                has_empty = True
    return SetFamily(F.n, tuple(out), has_empty)


@dataclass(frozen=True)
class CoveringResult:
    value: float | int
    witness: int | None = None

    @property
    def unbounded(self) -> bool:
        return self.value == UNBOUNDED


def covering_number(F: SetFamily) -> CoveringResult:
    """Exact transversal number by branching on the elements of a smallest member."""
    if F.has_empty:
        return CoveringResult(UNBOUNDED, None)
    members = list(F.members)
    if not members:
        return CoveringResult(0, 0)

    best = [len(members) + 1, None]
    greedy = _greedy_cover(members)
    best[0], best[1] = popcount(greedy), greedy

    def go(chosen: int, size: int, live: list[int]):
        if not live:
            if size < best[0] or (size == best[0] and chosen < best[1]):
                best[0], best[1] = size, chosen
            return
        if size + 1 > best[0]:
            return
        # pairwise disjoint live members each need their own element
        if size + _disjoint_packing(live) > best[0]:
            return
        pick = min(live, key=lambda m: (popcount(m), m))
        for p in bits(pick):
            b = 1 << p
            go(chosen | b, size + 1, [m for m in live if not m & b])

    go(0, 0, members)
    return CoveringResult(best[0], best[1])


def _greedy_cover(members: list[int]) -> int:
    chosen = 0
    live = members
    while live:
        counts: dict[int, int] = {}
        for m in live:
            for p in bits(m):
                counts[p] = counts.get(p, 0) + 1
        p = max(sorted(counts), key=lambda q: counts[q])
        chosen |= 1 << p
        live = [m for m in live if not m >> p & 1]
    return chosen


def _disjoint_packing(members: list[int]) -> int:
    used = 0
    k = 0
    for m in sorted(members, key=popcount):
        if not m & used:
            used |= m
            k += 1
    return k


def is_covering_set(S: int, F: SetFamily) -> bool:
    return not F.has_empty and all(m & S for m in F.members)


def cross_intersecting(A: SetFamily | Sequence[int], B: SetFamily | Sequence[int]) -> bool:
    a_ms = A.members if isinstance(A, SetFamily) else A
    b_ms = B.members if isinstance(B, SetFamily) else B
    return all(a & b for a in a_ms for b in b_ms)


def shadow(sets: Iterable[int]) -> set[int]:
    """All sets obtained by deleting one element from a member."""
    out = set()
    for m in sets:
        for p in bits(m):
            sub = m & ~(1 << p)
            if sub:
                out.add(sub)
    return out


def k_subsets(ground: int, k: int) -> list[int]:
    """All ``k``-subsets of the bitmask ``ground`` in ascending bitmask order."""
    pos = list(bits(ground))
    return sorted(sum(1 << p for p in c) for c in combinations(pos, k))


def full_layer(n: int, r: int) -> SetFamily:
    """The family ``([n] choose r)``."""
    return SetFamily(n, tuple(k_subsets(ground_mask(n), r)))


# --- .fam text format -------------------------------------------------------

def parse_fam(text: str) -> SetFamily:
    families = list(parse_fam_stream(text))
    if len(families) != 1:
        raise MalformedFamily(f"expected exactly one family, found {len(families)}")
    return families[0]


def parse_fam_stream(text: str) -> Iterator[SetFamily]:
    """Parse one or more ``.fam`` blocks.

    A new block starts at each ``n=`` line, so blank-line separators and the
    empty family (an ``n=`` line with no sets) are both handled.
    """
    n = None
    sets: list[list[int]] = []
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        if line.startswith("n="):
            if n is not None:
                yield _build(n, sets)
            try:
                n = int(line[2:])
            except ValueError:
                raise MalformedFamily(f"line {lineno}: bad header {line!r}") from None
            sets = []
            continue
        if n is None:
            raise MalformedFamily(f"line {lineno}: set before 'n=' header")
        try:
            sets.append([int(tok) for tok in line.split()])
        except ValueError:
            raise MalformedFamily(f"line {lineno}: non-integer label in {line!r}") from None
    if n is not None:
        yield _build(n, sets)


def _build(n: int, sets: list[list[int]]) -> SetFamily:
    if not 1 <= n <= MAX_N:
        raise MalformedFamily(f"n={n} outside 1..{MAX_N}")
    members = []
    for s in sets:
        if any(v < 1 or v > n for v in s):
            raise MalformedFamily(f"set {s} has labels outside 1..{n}")
        members.append(make_set(s))
    if len(set(members)) != len(members):
        raise MalformedFamily("duplicate member")
    return SetFamily(n, tuple(members))


def format_fam(F: SetFamily, comment: str | None = None) -> str:
    lines = []
    if comment:
        lines.extend("# " + c for c in comment.splitlines())
    lines.append(f"n={F.n}")
    lines.extend(" ".join(map(str, s)) for s in F.labels())
    return "\n".join(lines) + "\n"


def format_fam_stream(families: Iterable[SetFamily]) -> Iterator[str]:
    first = True
    for F in families:
        if not first:
            yield "\n"
        first = False
        yield format_fam(F)
