"""Downset enumeration up to relabeling, canonical keys and random downsets.

Randomness comes from numpy's PCG64 seeded through ``SeedSequence``; a
campaign seed and a trial index together determine every sampled family.
"""
from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from itertools import permutations
from typing import Iterator

import numpy as np

from .family import (
    SetFamily,
    bits,
    downward_closure,
    ground_mask,
    k_subsets,
    popcount,
    shadow,
)

MAX_CANONICAL_N = 10
DEFAULT_EXHAUSTIVE_N = 5


class GroundSetTooLarge(ValueError):
    pass


class ResourceGuard(RuntimeError):
    pass


@lru_cache(maxsize=None)
def _perm_tables(n: int) -> tuple[tuple[int, ...], ...]:
    """For every permutation of [n], the image of each bitmask < 2^n."""
    tables = []
    for perm in permutations(range(n)):
        img = [0] * (1 << n)
        for mask in range(1, 1 << n):
            low = mask & -mask
            img[mask] = img[mask ^ low] | (1 << perm[low.bit_length() - 1])
        tables.append(tuple(img))
    return tuple(tables)


def canonical_form(F: SetFamily) -> bytes:
    """Least sorted member serialization over all relabelings of [n].

    The key is ``n`` followed by the relabeled members as big-endian 8-byte
    words, so families over different ground sets never share a key.
    """
    n = F.n
    if n > MAX_CANONICAL_N:
        raise GroundSetTooLarge(f"canonical_form needs n <= {MAX_CANONICAL_N}, got {n}")
    best = min(tuple(sorted(t[m] for m in F.members)) for t in _perm_tables(n))
    out = bytearray([n])
    for m in best:
        out += m.to_bytes(8, "big")
    return bytes(out)


def apply_permutation(F: SetFamily, perm: tuple[int, ...]) -> SetFamily:
    """Relabel position ``p`` as ``perm[p]``."""
    members = []
    for m in F.members:
        img = 0
        for p in bits(m):
            img |= 1 << perm[p]
        members.append(img)
    return SetFamily(F.n, tuple(members))


def enumerate_downsets(
    n: int,
    max_size: int = 3,
    up_to_iso: bool = False,
    guard: int = DEFAULT_EXHAUSTIVE_N,
) -> Iterator[SetFamily]:
    """Every downset of ``([n] choose <= max_size)``, the empty family included.

    Sets are chosen top layer first; each lower layer ranges over supersets of
    the shadow of the layer above. With ``up_to_iso`` only the first family of
    each relabeling class (in generation order) is yielded.
    """
    if n > guard:
        raise ResourceGuard(f"exhaustive enumeration capped at n={guard}; raise guard to override")
    if not 1 <= max_size <= 3:
        raise ValueError("max_size must be 1, 2 or 3")
    if n < 1:
        raise ValueError("n must be positive")
    top = min(max_size, n)
    layers = [k_subsets(ground_mask(n), r) for r in range(top + 1)]
    seen: set[bytes] = set()

    def descend(r: int, above: set[int], acc: list[int]) -> Iterator[list[int]]:
        if r == 0:
            yield acc
            return
        pool = layers[r]
        forced = shadow(above) if r < top else set()
        free = [m for m in pool if m not in forced]
        for pick in range(1 << len(free)):
            chosen = set(forced)
            for j in bits(pick):
                chosen.add(free[j])
            yield from descend(r - 1, chosen, acc + sorted(chosen))

    for members in descend(top, set(), []):
        F = SetFamily(n, tuple(members))
        if up_to_iso:
            key = canonical_form(F)
            if key in seen:
                continue
            seen.add(key)
        yield F


@dataclass(frozen=True)
class SamplerConfig:
    """Parameters of :func:`sample_random_downset`.

    ``star_center`` (0-based) and ``star_triples`` switch on star-seeded mode:
    that many 3-sets through the center are forced in before the independent
    ``p3`` noise.
    """

    n: int
    p3: float = 0.3
    extra2: float = 0.0
    extra1: float = 0.0
    seed: int = 0
    star_center: int | None = None
    star_triples: int = 0

    def __post_init__(self):
        for name in ("p3", "extra2", "extra1"):
            v = getattr(self, name)
            if not 0.0 <= v <= 1.0:
                raise ValueError(f"{name}={v} outside [0, 1]")
        if not 1 <= self.n <= 64:
            raise ValueError(f"n={self.n} outside 1..64")
        if self.star_center is not None:
            if not 0 <= self.star_center < self.n:
                raise ValueError("star_center outside the ground set")
            if not 0 <= self.star_triples <= (self.n - 1) * (self.n - 2) // 2:
                raise ValueError("star_triples exceeds the number of 3-sets through the center")


def rng_for(seed: int, *path: int) -> np.random.Generator:
    """Independent stream for ``(seed, *path)``."""
    return np.random.Generator(np.random.PCG64(np.random.SeedSequence([seed, *path])))


def _pick(rng: np.random.Generator, pool: list[int], p: float) -> list[int]:
    if not pool or p <= 0.0:
        return []
    draws = rng.random(len(pool))
    return [m for m, u in zip(pool, draws) if u < p]


def sample_random_downset(cfg: SamplerConfig, rng: np.random.Generator | None = None) -> SetFamily:
    if rng is None:
        rng = rng_for(cfg.seed)
    n = cfg.n
    full = ground_mask(n)
    triples = k_subsets(full, 3)
    chosen = set()
    if cfg.star_center is not None and cfg.star_triples:
        bit = 1 << cfg.star_center
        through = [t for t in triples if t & bit]
        idx = rng.choice(len(through), size=cfg.star_triples, replace=False)
        chosen.update(through[i] for i in sorted(idx))
    chosen.update(_pick(rng, [t for t in triples if t not in chosen], cfg.p3))
    H = downward_closure(SetFamily(n, tuple(chosen)))
    have = set(H.members)
    extra = _pick(rng, [m for m in k_subsets(full, 2) if m not in have], cfg.extra2)
    extra += _pick(rng, [m for m in k_subsets(full, 1) if m not in have], cfg.extra1)
    if extra:
        H = downward_closure(SetFamily(n, H.members + tuple(extra)))
    return H


def count_downsets_by_recursion(n: int) -> int:
    """Labeled count of downsets of ([n] choose <= 3), the empty family included.

    Independent of :func:`enumerate_downsets`: a downset on [n] splits into
    the part avoiding n (a downset of <=3-sets on [n-1]) and the link at n (a
    downset of <=2-sets on [n-1], contained in the first part).
    """
    if n == 0:
        return 1

    def downsets(m: int, cap: int) -> list[frozenset[int]]:
        # downsets of 2^[m] truncated at size cap, as sets of masks including 0
        if m == 0:
            return [frozenset(), frozenset({0})]
        lower = downsets(m - 1, cap)
        lower_link = downsets(m - 1, cap - 1) if cap >= 1 else [frozenset()]
        top = 1 << (m - 1)
        out = []
        for d0 in lower:
            for d1 in lower_link:
                if d1 <= d0:
                    out.append(d0 | {x | top for x in d1})
        return out

    # every nonempty downset contains the empty set; drop the downset {} since
    # families here never store the empty set ({} and {empty} coincide)
    return sum(1 for d in downsets(n, 3) if d)


def layer_counts(F: SetFamily) -> tuple[int, ...]:
    counts = [0] * (max((popcount(m) for m in F.members), default=0) + 1)
    for m in F.members:
        counts[popcount(m)] += 1
    return tuple(counts[1:])
