"""Linear codes given by generator matrices, their regenerating sets and brute-force
oracles (Phi, the regenerating-set distance bound, minimum distance, locality).

Coordinates are 1-based throughout, matching the usual [n] = {1, ..., n} labelling.
Internally a set of coordinates is an int bitmask with bit i-1 for coordinate i.
"""
from __future__ import annotations

import json
from dataclasses import dataclass
from functools import cached_property
from itertools import combinations
from typing import Iterator, Sequence

from .field import Field, FieldElement, field_from_dict, rank_values
from .params import ScaleError

__all__ = [
    "LinearCode",
    "RegeneratingSet",
    "CoverSequence",
    "REGEN_MAX_N",
    "DISTANCE_MAX_N",
    "regenerating_sets",
    "locality",
    "phi_oracle",
    "phi_values",
    "rho_bound",
    "min_distance",
    "greedy_cover_sequence",
]

REGEN_MAX_N = 14
DISTANCE_MAX_N = 16


def _mask(coords) -> int:
    m = 0
    for c in coords:
        m |= 1 << (c - 1)
    return m


def _coords(mask: int) -> frozenset[int]:
    out = []
    i = 1
    while mask:
        if mask & 1:
            out.append(i)
        mask >>= 1
        i += 1
    return frozenset(out)


class _ColumnRanks:
    """Memoised echelon bases of column subsets, keyed by bitmask.

    The basis of a mask extends the basis of the mask without its highest bit,
    so every lookup reuses the cached prefix chain.
    """

    def __init__(self, field: Field, columns: Sequence[Sequence[int]]):
        self.field = field
        self.columns = columns
        self._bases: dict[int, tuple[tuple[int, tuple[int, ...]], ...]] = {0: ()}

    def _reduce(self, basis, vec: tuple[int, ...]) -> list[int]:
        f = self.field
        v = list(vec)
        for pivot, b in basis:
            c = v[pivot]
            if c:
                v = [f.sub(x, f.mul(c, y)) for x, y in zip(v, b)]
        return v

    def basis(self, mask: int):
        cached = self._bases.get(mask)
        if cached is not None:
            return cached
        j = mask.bit_length() - 1
        base = self.basis(mask ^ (1 << j))
        v = self._reduce(base, self.columns[j])
        pivot = next((p for p, x in enumerate(v) if x), None)
        if pivot is None:
            out = base
        else:
            inv = self.field.inv(v[pivot])
            out = base + ((pivot, tuple(self.field.mul(inv, x) for x in v)),)
        self._bases[mask] = out
        return out

    def rank(self, mask: int) -> int:
        return len(self.basis(mask))


@dataclass(frozen=True, eq=False)
class LinearCode:
    """[n, k] linear code over ``field`` with a k x n generator of raw field values."""

    field: Field
    rows: tuple[tuple[int, ...], ...]

    def __post_init__(self):
        if not self.rows or not self.rows[0]:
            raise ValueError("empty generator matrix")
        n = len(self.rows[0])
        if any(len(row) != n for row in self.rows):
            raise ValueError("ragged generator matrix")
        if any(not self.field.contains(v) for row in self.rows for v in row):
            raise ValueError("generator entry outside the field")
        if not n > self.k >= 1:
            raise ValueError(f"need n > k >= 1, got n={n}, k={self.k}")
        zero_cols = [j + 1 for j, col in enumerate(self.columns) if not any(col)]
        if zero_cols:
            raise ValueError(f"zero generator columns at coordinates {zero_cols}")
        if rank_values(self.field, self.rows) != self.k:
            raise ValueError("generator matrix does not have full row rank")

    @classmethod
    def from_elements(cls, generator: Sequence[Sequence[FieldElement]]) -> "LinearCode":
        field = generator[0][0].field
        rows = []
        for row in generator:
            if any(e.field != field for e in row):
                raise ValueError("generator entries come from different fields")
            rows.append(tuple(e.value for e in row))
        return cls(field, tuple(rows))

    @property
    def n(self) -> int:
        return len(self.rows[0])

    @property
    def k(self) -> int:
        return len(self.rows)

    @cached_property
    def columns(self) -> tuple[tuple[int, ...], ...]:
        return tuple(zip(*self.rows))

    @property
    def generator(self) -> list[list[FieldElement]]:
        return [[FieldElement(self.field, v) for v in row] for row in self.rows]

    @cached_property
    def _ranks(self) -> _ColumnRanks:
        return _ColumnRanks(self.field, self.columns)

    def rank_of(self, coords) -> int:
        """Rank of the generator columns indexed by the 1-based ``coords``."""
        return self._ranks.rank(_mask(coords))

    def is_regenerating(self, i: int, coords) -> bool:
        """True when i is in coords and g_i lies in the span of the other columns."""
        mask = _mask(coords)
        bit = 1 << (i - 1)
        if not mask & bit:
            return False
        return self._ranks.rank(mask ^ bit) == self._ranks.rank(mask)

    def encode(self, message: Sequence[FieldElement]) -> list[FieldElement]:
        if len(message) != self.k:
            raise ValueError(f"message length {len(message)} != k={self.k}")
        f = self.field
        out = []
        for col in self.columns:
            acc = f.zero
            for m, g in zip(message, col):
                acc = f.add(acc, f.mul(m.value, g))
            out.append(FieldElement(f, acc))
        return out

    def to_dict(self) -> dict:
        return {
            "field": self.field.to_dict(),
            "n": self.n,
            "k": self.k,
            "generator": [[self.field.to_hex(v) for v in row] for row in self.rows],
        }

    def to_json(self, **kwargs) -> str:
        return json.dumps(self.to_dict(), **kwargs)

    @classmethod
    def from_dict(cls, data: dict) -> "LinearCode":
        field = field_from_dict(data["field"])
        rows = tuple(tuple(field.from_hex(h) for h in row) for row in data["generator"])
        code = cls(field, rows)
        if code.n != data["n"] or code.k != data["k"]:
            raise ValueError("declared n, k do not match the generator")
        return code

    @classmethod
    def from_json(cls, text: str) -> "LinearCode":
        return cls.from_dict(json.loads(text))


@dataclass(frozen=True)
class RegeneratingSet:
    coordinate: int
    members: frozenset[int]

    def __post_init__(self):
        if self.coordinate not in self.members:
            raise ValueError("a regenerating set must contain its coordinate")

    def __len__(self) -> int:
        return len(self.members)


@dataclass(frozen=True)
class CoverSequence:
    sets: tuple[RegeneratingSet, ...]

    def __post_init__(self):
        seen: set[int] = set()
        for s in self.sets:
            if s.coordinate in seen:
                raise ValueError(
                    f"coordinate {s.coordinate} already covered; union is not nontrivial"
                )
            seen |= s.members

    @property
    def union(self) -> frozenset[int]:
        return frozenset().union(*(s.members for s in self.sets))

    def __len__(self) -> int:
        return len(self.sets)

    def __iter__(self):
        return iter(self.sets)


def _check_scale(code: LinearCode, limit: int) -> None:
    if code.n > limit:
        raise ScaleError(f"n={code.n} exceeds the oracle limit of {limit}")


def _minimal_masks(code: LinearCode, i: int, size_cap: int) -> list[int]:
    n = code.n
    ranks = code._ranks
    bit = 1 << (i - 1)
    others = [j for j in range(n) if j != i - 1]

    def regen(mask: int) -> bool:
        return ranks.rank(mask ^ bit) == ranks.rank(mask)

    found = []
    for size in range(2, min(size_cap, n) + 1):
        for rest in combinations(others, size - 1):
            mask = bit
            for j in rest:
                mask |= 1 << j
            if not regen(mask):
                continue
            # regenerating sets are closed upwards, so checking the one-smaller
            # subsets suffices for minimality
            if any(regen(mask ^ (1 << j)) for j in rest):
                continue
            found.append(mask)
    return found


def regenerating_sets(
    code: LinearCode, i: int, size_cap: int | None = None
) -> list[RegeneratingSet]:
    """All inclusion-minimal regenerating sets of coordinate ``i`` with at most
    ``size_cap`` members, in increasing size then lexicographic order."""
    _check_scale(code, REGEN_MAX_N)
    if not 1 <= i <= code.n:
        raise ValueError(f"coordinate {i} outside [1, {code.n}]")
    cap = code.n if size_cap is None else size_cap
    if cap > code.n:
        raise ValueError(f"size_cap={cap} exceeds n={code.n}")
    return [RegeneratingSet(i, _coords(m)) for m in _minimal_masks(code, i, cap)]


def locality(code: LinearCode) -> int:
    """Least r such that every coordinate has a regenerating set of size <= r + 1."""
    _check_scale(code, REGEN_MAX_N)
    worst = 0
    for i in range(1, code.n + 1):
        smallest = next(
            (
                size
                for size in range(2, code.n + 1)
                if _minimal_masks_of_size(code, i, size)
            ),
            None,
        )
        if smallest is None:
            raise ValueError(f"coordinate {i} has no regenerating set")
        worst = max(worst, smallest)
    return worst - 1


def _minimal_masks_of_size(code: LinearCode, i: int, size: int) -> bool:
    ranks = code._ranks
    bit = 1 << (i - 1)
    others = [j for j in range(code.n) if j != i - 1]
    for rest in combinations(others, size - 1):
        mask = bit
        for j in rest:
            mask |= 1 << j
        if ranks.rank(mask ^ bit) == ranks.rank(mask):
            return True
    return False


def _phi_levels(code: LinearCode, size_cap: int | None) -> Iterator[int]:
    """Yield Phi(1), Phi(2), ... until no longer nontrivial-union sequence exists.

    Breadth-first over reachable unions: from union U a regenerating set R may be
    appended when one of its target coordinates lies outside U.
    """
    cap = code.n if size_cap is None else size_cap
    targets: dict[int, int] = {}
    for i in range(1, code.n + 1):
        for mask in _minimal_masks(code, i, cap):
            targets[mask] = targets.get(mask, 0) | (1 << (i - 1))
    moves = sorted(targets.items())
    level = {0}
    while True:
        nxt = set()
        for union in level:
            for mask, tgt in moves:
                if tgt & ~union:
                    nxt.add(union | mask)
        if not nxt:
            return
        yield min(u.bit_count() for u in nxt)
        level = nxt


def phi_values(code: LinearCode, x_max: int, size_cap: int | None = None) -> list[int]:
    """[Phi(0), Phi(1), ..., Phi(x_max)].

    ``size_cap`` restricts the regenerating sets to at most that many members;
    the default (None) uses every regenerating set.
    """
    _check_scale(code, REGEN_MAX_N)
    out = [0]
    if x_max <= 0:
        return out
    for value in _phi_levels(code, size_cap):
        out.append(value)
        if len(out) > x_max:
            return out
    raise ValueError(
        f"no nontrivial-union sequence of {x_max} regenerating sets exists "
        f"(longest has {len(out) - 1})"
    )


def phi_oracle(code: LinearCode, x: int, size_cap: int | None = None) -> int:
    """Minimum union size over nontrivial-union sequences of x regenerating sets."""
    if x < 0:
        raise ValueError("x must be non-negative")
    return phi_values(code, x, size_cap)[x]


def rho_bound(code: LinearCode) -> tuple[int, int]:
    """(rho, n - k + 1 - rho) with rho = max{x : Phi(x) - x < k}.

    Phi(x) - x is nondecreasing, so the scan stops at the first failing x.
    """
    _check_scale(code, REGEN_MAX_N)
    rho = 0
    for x, value in enumerate(_phi_levels(code, None), start=1):
        if value - x >= code.k:
            break
        rho = x
    return rho, code.n - code.k + 1 - rho


def min_distance(code: LinearCode) -> int:
    """Exact minimum distance: n minus the largest rank-deficient column set."""
    _check_scale(code, DISTANCE_MAX_N)
    n, k = code.n, code.k
    ranks = code._ranks
    for size in range(n - 1, k - 2, -1):
        for subset in combinations(range(n), size):
            mask = 0
            for j in subset:
                mask |= 1 << j
            if ranks.rank(mask) < k:
                return n - size
    raise AssertionError("unreachable: every (k-1)-subset is rank deficient")  # pragma: no cover


def greedy_cover_sequence(code: LinearCode, r: int | None = None) -> CoverSequence:
    """Sequence of size-(r+1) regenerating sets with nontrivial union covering [n].

    Picks the smallest uncovered coordinate each round and the lexicographically
    smallest candidate set.  Minimal sets smaller than r+1 are padded with the
    smallest coordinates they do not already contain.
    """
    _check_scale(code, REGEN_MAX_N)
    if r is None:
        r = locality(code)
    n = code.n
    covered: set[int] = set()
    chosen = []
    while len(covered) < n:
        i0 = min(set(range(1, n + 1)) - covered)
        candidates = []
        for mask in _minimal_masks(code, i0, r + 1):
            members = set(_coords(mask))
            for c in range(1, n + 1):
                if len(members) == r + 1:
                    break
                members.add(c)
            candidates.append(tuple(sorted(members)))
        if not candidates:
            raise ValueError(f"coordinate {i0} has no regenerating set of size <= {r + 1}")
        best = min(candidates)
        chosen.append(RegeneratingSet(i0, frozenset(best)))
        covered |= set(best)
    return CoverSequence(tuple(chosen))
