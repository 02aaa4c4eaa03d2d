"""Upper bounds on the minimum distance of [n, k] codes with all-symbol locality r.

All bounds return the largest distance they allow, d_upper.  The integer program
behind :func:`ip_bound` is solved exactly by :func:`psi_exhaustive` for small n1 and
in closed form by :func:`psi_closed` when n1 > n2.
"""
from __future__ import annotations

import csv
import io
import warnings
from dataclasses import astuple, dataclass, fields
from functools import lru_cache
from itertools import product
from typing import Iterable, NamedTuple, Sequence

from .params import CodeParams, OutOfScope, ScaleError, ceil_div, split_n

__all__ = [
    "PSI_EXHAUSTIVE_MAX_N1",
    "PrakashWarning",
    "PrakashResult",
    "BoundRow",
    "gopalan_bound",
    "example1_bound",
    "profiles",
    "psi_exhaustive",
    "psi_closed",
    "psi",
    "ip_bound",
    "explicit_bound",
    "prakash_bound",
    "disjoint_group_bound",
    "attainability_grid",
    "comparison_table",
    "rows_to_csv",
    "grid_to_csv",
    "valid_params",
]

PSI_EXHAUSTIVE_MAX_N1 = 12


class PrakashWarning(UserWarning):
    """max{m : e_m - m < k} disagrees with the strict two-sided characterisation."""


def gopalan_bound(p: CodeParams) -> int:
    p.validate()
    return p.n - p.k + 1 - (ceil_div(p.k, p.r) - 1)


def example1_bound(p: CodeParams) -> int:
    """Refinement of the Gopalan bound for (r+1) not dividing n."""
    p.validate()
    if p.n % (p.r + 1) == 0:
        raise OutOfScope(f"(r+1)={p.r + 1} divides n={p.n}")
    return p.n - p.k + 1 - (ceil_div(p.k + 1, p.r) - 1)


def profiles(n1: int, n2: int) -> list[tuple[tuple[int, int], ...]]:
    """All component profiles as non-increasing tuples of (t_i, a_i) pairs with
    sum t = n1, sum a = n2, a_i >= t_i - 1 and t_i >= 1."""
    pairs = sorted(
        ((t, a) for t in range(1, n1 + 1) for a in range(t - 1, n2 + 1)), reverse=True
    )
    out = []

    def extend(prefix, t_left, a_left, start):
        if t_left == 0:
            if a_left == 0:
                out.append(tuple(prefix))
            return
        for idx in range(start, len(pairs)):
            t, a = pairs[idx]
            if t <= t_left and a <= a_left:
                prefix.append((t, a))
                extend(prefix, t_left - t, a_left - a, idx)
                prefix.pop()

    extend([], n1, n2, 0)
    return out


def _inner_minima(profile: Sequence[tuple[int, int]], n1: int) -> list[int]:
    """For x = 1..n1: min over admissible prefixes of 1 - sum(a - t) (x*r excluded).

    The prefix is a sub-multiset of the profile's parts; the last part may be any
    remaining part large enough to reach x.
    """
    kinds: dict[tuple[int, int], int] = {}
    for pair in profile:
        kinds[pair] = kinds.get(pair, 0) + 1
    pairs = list(kinds)
    totals = [kinds[p] for p in pairs]
    best: list[int | None] = [None] * (n1 + 1)
    for counts in product(*(range(c + 1) for c in totals)):
        covered = sum(c * t for (t, _), c in zip(pairs, counts))
        gain = sum(c * (a - t) for (t, a), c in zip(pairs, counts))
        remaining = [t for (t, _), c, total in zip(pairs, counts, totals) if c < total]
        if not remaining:
            continue
        reach = covered + max(remaining)
        for x in range(covered + 1, min(reach, n1) + 1):
            value = 1 - gain
            if best[x] is None or value < best[x]:
                best[x] = value
    return best


@lru_cache(maxsize=None)
def _psi_offsets(n1: int, n2: int) -> tuple[int, ...]:
    """Psi(x) - x*r for x = 0..n1 (index 0 unused), maximised over profiles."""
    out = [0] * (n1 + 1)
    first = True
    for prof in profiles(n1, n2):
        minima = _inner_minima(prof, n1)
        for x in range(1, n1 + 1):
            if first or minima[x] > out[x]:
                out[x] = minima[x]
        first = False
    return tuple(out)


def psi_exhaustive(n: int, r: int, x: int) -> int:
    n1, n2 = split_n(n, r)
    if not 1 <= x <= n1:
        raise ValueError(f"x={x} outside [1, n1={n1}]")
    if n1 > PSI_EXHAUSTIVE_MAX_N1:
        raise ScaleError(f"n1={n1} exceeds the exhaustive limit {PSI_EXHAUSTIVE_MAX_N1}")
    return x * r + _psi_offsets(n1, n2)[x]


def psi_closed(n: int, r: int, x: int) -> int:
    n1, n2 = split_n(n, r)
    if n1 <= n2:
        raise OutOfScope(f"closed form needs n1 > n2, got n1={n1}, n2={n2}")
    if not 1 <= x <= n1:
        raise ValueError(f"x={x} outside [1, n1={n1}]")
    mu = n1 - n2
    lam, nu = divmod(n1, mu)
    return x * r + max(ceil_div(x, lam + 1), ceil_div(x - nu, lam))


def psi(n: int, r: int, x: int, method: str = "auto") -> int:
    """``method`` is "closed", "exhaustive" or "auto" (closed form when n1 > n2)."""
    if method == "closed":
        return psi_closed(n, r, x)
    if method == "exhaustive":
        return psi_exhaustive(n, r, x)
    if method == "auto":
        n1, n2 = split_n(n, r)
        return psi_closed(n, r, x) if n1 > n2 else psi_exhaustive(n, r, x)
    raise ValueError(f"unknown method {method!r}")


def ip_bound(p: CodeParams, method: str = "auto") -> tuple[int, int]:
    """(eta, d_upper) with eta = max{x in [1, n1] : Psi(x) - x < k}, or 0 if none."""
    p.validate()
    eta = 0
    for x in range(1, p.n1 + 1):
        if psi(p.n, p.r, x, method) - x < p.k:
            eta = x
    return eta, p.n - p.k + 1 - eta


def explicit_bound(p: CodeParams) -> tuple[int, int]:
    """(eta_tilde, d_upper) from the closed-form solution; needs n1 > n2."""
    p.validate()
    lam, nu, k, r = p.lam, p.nu, p.k, p.r
    eta = (
        min(
            ceil_div((lam + 1) * (k - 1) + 1, (lam + 1) * (r - 1) + 1),
            ceil_div(lam * (k - 1) + nu + 1, lam * (r - 1) + 1),
        )
        - 1
    )
    return eta, p.n - p.k + 1 - eta


class PrakashResult(NamedTuple):
    e: tuple[int, ...]  # e_1, ..., e_n1
    l: int
    d_upper: int


def prakash_bound(p: CodeParams) -> PrakashResult:
    p.validate()
    n1, n, k, r = p.n1, p.n, p.k, p.r
    e = [0] * (n1 + 1)
    e[n1] = n
    for m in range(n1, 1, -1):
        e[m - 1] = e[m] - ceil_div(2 * e[m], m) + (r + 1)
    seq = tuple(e[1:])
    l = max((m for m in range(1, n1 + 1) if e[m] - m < k), default=0)
    strict = [
        m for m in range(1, n1 + 1)
        if e[m] < k + m and (m == n1 or k + m < e[m + 1])
    ]
    if strict != [l]:
        warnings.warn(
            f"(n={n}, k={k}, r={r}): l={l} but the strict condition "
            f"e_l < k+l < e_(l+1) holds for {strict}",
            PrakashWarning,
            stacklevel=2,
        )
    return PrakashResult(seq, l, n - k + 1 - l)


def disjoint_group_bound(p: CodeParams) -> int:
    """Bound for codes whose local groups are pairwise disjoint."""
    p.validate()
    return p.n - p.k + 1 - (ceil_div(p.k + p.n2, p.r) - 1)


def attainability_grid(
    n: int, ks: Iterable[int], rs: Iterable[int]
) -> dict[tuple[int, int], str]:
    """Verdict per (k, r): "Y" when the Gopalan bound is attained, "N" when the
    closed-form bound is strictly smaller, "OOS" when invalid or n1 <= n2."""
    grid = {}
    for k, r in product(list(ks), list(rs)):
        p = CodeParams(n, k, r)
        if not p.is_valid or not p.wide:
            grid[(k, r)] = "OOS"
            continue
        eta, _ = explicit_bound(p)
        grid[(k, r)] = "Y" if eta == ceil_div(k, r) - 1 else "N"
    return grid


@dataclass(frozen=True)
class BoundRow:
    n: int
    k: int
    r: int
    gopalan: int
    prakash: int
    ip: int | None
    disjoint: int


def comparison_table(n: int, r: int, ks: Iterable[int]) -> list[BoundRow]:
    """One row per valid k; invalid k are skipped.  ``ip`` is None when the
    integer program is beyond the exhaustive limit."""
    rows = []
    for k in ks:
        p = CodeParams(n, k, r)
        if not p.is_valid:
            continue
        try:
            ip = ip_bound(p)[1]
        except ScaleError:
            ip = None
        with warnings.catch_warnings():
            warnings.simplefilter("ignore", PrakashWarning)
            prakash = prakash_bound(p).d_upper
        rows.append(BoundRow(n, k, r, gopalan_bound(p), prakash, ip, disjoint_group_bound(p)))
    return rows


def rows_to_csv(rows: Iterable[BoundRow]) -> str:
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow([f.name for f in fields(BoundRow)])
    for row in rows:
        writer.writerow(["" if v is None else v for v in astuple(row)])
    return buf.getvalue()


def grid_to_csv(grid: dict[tuple[int, int], str]) -> str:
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(["k", "r", "verdict"])
    for (k, r) in sorted(grid):
        writer.writerow([k, r, grid[(k, r)]])
    return buf.getvalue()


def valid_params(n: int) -> list[CodeParams]:
    """Every valid (n, k, r) for this n."""
    return [
        CodeParams(n, k, r)
        for r in range(2, n)
        for k in range(r + 1, n)
        if CodeParams(n, k, r).is_valid
    ]

