"""(r+1)-covers of [n]: validation, connectivity, component profiles, union sizes,
cover reduction to n1 subsets and extraction of a cover from a code.

Elements of [n] are 1-based; positions of sets inside a collection are ordinary
0-based list indices.
"""
from __future__ import annotations

import json
from dataclasses import dataclass
from itertools import combinations
from typing import Iterable, Sequence

from .codes import LinearCode, greedy_cover_sequence
from .params import split_n

__all__ = [
    "CoverError",
    "Cover",
    "ComponentProfile",
    "validate_cover",
    "is_connected",
    "connected_order",
    "connected_components",
    "components_profile",
    "min_union",
    "reduce_cover",
    "union_bound_rhs",
    "cover_from_code",
]


class CoverError(ValueError):
    """A collection violates the (r+1)-cover conditions.

    ``kind`` is one of "size", "range", "union", "redundant", "count".
    """

    def __init__(self, kind: str, message: str):
        super().__init__(message)
        self.kind = kind


@dataclass(frozen=True)
class Cover:
    """Validated (r+1)-cover, stored canonically (sorted members, sorted set list)."""

    n: int
    r: int
    sets: tuple[tuple[int, ...], ...]

    def __len__(self) -> int:
        return len(self.sets)

    def to_dict(self) -> dict:
        return {"n": self.n, "r": self.r, "sets": [list(s) for s in self.sets]}

    def to_json(self, **kwargs) -> str:
        return json.dumps(self.to_dict(), **kwargs)

    @classmethod
    def from_dict(cls, data: dict) -> "Cover":
        return validate_cover(data["n"], data["r"], data["sets"])


def _canonical(sets: Iterable[Iterable[int]]) -> tuple[tuple[int, ...], ...]:
    return tuple(sorted(tuple(sorted(s)) for s in sets))


def _check_members(n: int, r: int, sets: Sequence[frozenset[int]]) -> None:
    for idx, s in enumerate(sets):
        if len(s) != r + 1:
            raise CoverError("size", f"set {idx} has {len(s)} elements, expected {r + 1}")
        if not all(1 <= e <= n for e in s):
            raise CoverError("range", f"set {idx} has elements outside [1, {n}]")


def validate_cover(n: int, r: int, sets: Iterable[Iterable[int]]) -> Cover:
    raw = [list(s) for s in sets]
    fsets = [frozenset(s) for s in raw]
    for idx, (lst, fs) in enumerate(zip(raw, fsets)):
        if len(lst) != len(fs):
            raise CoverError("size", f"set {idx} repeats an element")
    _check_members(n, r, fsets)
    ground = frozenset(range(1, n + 1))
    if frozenset().union(*fsets) != ground:
        raise CoverError("union", "the sets do not cover [n]")
    for j in range(len(fsets)):
        rest = frozenset().union(*(s for i, s in enumerate(fsets) if i != j))
        if rest == ground:
            raise CoverError("redundant", f"set {j} can be removed without losing coverage")
    return Cover(n, r, _canonical(fsets))


class _UnionFind:
    def __init__(self, size: int):
        self.parent = list(range(size))

    def find(self, a: int) -> int:
        while self.parent[a] != a:
            self.parent[a] = self.parent[self.parent[a]]
            a = self.parent[a]
        return a

    def union(self, a: int, b: int) -> None:
        ra, rb = self.find(a), self.find(b)
        if ra != rb:
            self.parent[max(ra, rb)] = min(ra, rb)


def connected_components(sets: Sequence[Iterable[int]]) -> list[tuple[int, ...]]:
    """Index groups of the intersection graph, ordered by smallest index."""
    fsets = [frozenset(s) for s in sets]
    uf = _UnionFind(len(fsets))
    for i, j in combinations(range(len(fsets)), 2):
        if fsets[i] & fsets[j]:
            uf.union(i, j)
    groups: dict[int, list[int]] = {}
    for i in range(len(fsets)):
        groups.setdefault(uf.find(i), []).append(i)
    return sorted(tuple(g) for g in groups.values())


def is_connected(sets: Sequence[Iterable[int]]) -> bool:
    if not sets:
        raise ValueError("connectivity is undefined for an empty collection")
    return len(connected_components(sets)) == 1


def connected_order(sets: Sequence[Iterable[int]]) -> tuple[int, ...]:
    """Permutation (0-based) in which every set meets the union of its predecessors.

    Starts from set 0 and always takes the smallest admissible index.
    """
    fsets = [frozenset(s) for s in sets]
    if not is_connected(fsets):
        raise ValueError("collection is not connected")
    order = [0]
    union = set(fsets[0])
    remaining = list(range(1, len(fsets)))
    while remaining:
        nxt = next(i for i in remaining if fsets[i] & union)
        order.append(nxt)
        union |= fsets[nxt]
        remaining.remove(nxt)
    return tuple(order)


@dataclass(frozen=True)
class ComponentProfile:
    groups: tuple[tuple[int, ...], ...]
    t: tuple[int, ...]
    a: tuple[int, ...]

    @property
    def s(self) -> int:
        return len(self.groups)


def components_profile(cover: Cover) -> ComponentProfile:
    n1, n2 = split_n(cover.n, cover.r)
    if len(cover) != n1:
        raise CoverError("count", f"profile needs exactly n1={n1} sets, got {len(cover)}")
    groups = connected_components(cover.sets)
    t, a = [], []
    for g in groups:
        members = [cover.sets[i] for i in g]
        t.append(len(g))
        a.append(sum(len(s) for s in members) - len(frozenset().union(*members)))
    profile = ComponentProfile(tuple(groups), tuple(t), tuple(a))
    assert sum(profile.t) == n1 and sum(profile.a) == n2
    assert profile.s >= 1 and all(ai >= ti - 1 for ti, ai in zip(profile.t, profile.a))
    return profile


def min_union(cover: Cover | Sequence[Iterable[int]], x: int) -> int:
    """Smallest union of x sets of the collection (exhaustive)."""
    sets = cover.sets if isinstance(cover, Cover) else list(cover)
    if not 1 <= x <= len(sets):
        raise ValueError(f"x={x} outside [1, {len(sets)}]")
    fsets = [frozenset(s) for s in sets]
    return min(len(frozenset().union(*c)) for c in combinations(fsets, x))


def reduce_cover(n: int, r: int, sets: Sequence[Iterable[int]]) -> Cover:
    """Turn a covering collection of t >= n1 sets of size r+1 into an (r+1)-cover with
    exactly n1 sets.

    Keeps the first n1 sets, then repeatedly swaps an element shared with another
    set (smallest set index, then smallest element) for the smallest uncovered
    element until the union is [n].
    """
    n1, _ = split_n(n, r)
    fsets = [frozenset(s) for s in sets]
    _check_members(n, r, fsets)
    ground = frozenset(range(1, n + 1))
    if frozenset().union(*fsets) != ground:
        raise CoverError("union", "input sets do not cover [n]")
    if len(fsets) < n1:
        raise CoverError("count", f"need at least n1={n1} sets, got {len(fsets)}")
    work = [set(s) for s in fsets[:n1]]
    while True:
        union = set().union(*work)
        if len(union) == n:
            break
        uncovered = min(ground - union)
        for j, tj in enumerate(work):
            others = set().union(*(s for i, s in enumerate(work) if i != j))
            shared = tj & others
            if shared:
                tj.remove(min(shared))
                tj.add(uncovered)
                break
    return validate_cover(n, r, work)


def union_bound_rhs(profile: ComponentProfile, x: int, r: int) -> int:
    """min over distinct components h_1..h_l with t_h1+..+t_h(l-1) < x <= t_h1+..+t_hl
    of x*r + 1 - sum_{i<l} (a_hi - t_hi)."""
    t, a = profile.t, profile.a
    if not 1 <= x <= sum(t):
        raise ValueError(f"x={x} outside [1, {sum(t)}]")
    s = len(t)
    best = None
    for size in range(s):
        for prefix in combinations(range(s), size):
            covered = sum(t[i] for i in prefix)
            if covered >= x:
                continue
            rest = [t[i] for i in range(s) if i not in prefix]
            if covered + max(rest) < x:
                continue
            value = x * r + 1 - sum(a[i] - t[i] for i in prefix)
            if best is None or value < best:
                best = value
    assert best is not None
    return best


def cover_from_code(code: LinearCode, r: int | None = None) -> Cover:
    """Greedy regenerating-set sequence with redundant members pruned in order."""
    seq = greedy_cover_sequence(code, r)
    sets = [s.members for s in seq]
    size = len(sets[0])
    ground = frozenset(range(1, code.n + 1))
    i = 0
    while i < len(sets):
        rest = frozenset().union(*(s for j, s in enumerate(sets) if j != i))
        if rest == ground:
            del sets[i]
        else:
            i += 1
    return validate_cover(code.n, size - 1, sets)
