"""Distance-optimal LRCs for n1 > n2 from linearized polynomials over GF(2^(n1 r)).

The evaluation points are the columns of a block-diagonal GF(2) matrix W built from
a binary [r+1, r] MDS seed.  Points are grouped into trees; tree l has a root and
branches of r leaves, and every branch (root plus its leaves) is a local repair
group.  Trees 1..nu carry lambda+1 branches, trees nu+1..mu carry lambda.
"""
from __future__ import annotations

import csv
import io
import json
from dataclasses import dataclass, field as dc_field
from typing import Iterable, NamedTuple, Sequence

from .bounds import explicit_bound, psi_closed
from .codes import LinearCode, min_distance, phi_values
from .field import (
    BinaryField,
    BitMatrix,
    FieldElement,
    PrimeField,
    _lp_eval_values,
    gf2_rank,
)
from .params import CodeParams, OutOfScope, ScaleError

__all__ = [
    "MdsSeed",
    "Label",
    "ConstructionLayout",
    "PointSet",
    "ConstructedLRC",
    "SelectionResult",
    "Theorem4Report",
    "mds_seed",
    "build_layout",
    "build_lrc",
    "encode",
    "repair",
    "verify_lemma5",
    "select_independent_subsets",
    "fixture_c1",
    "fixture_c2",
    "verify_theorem4",
    "theorem4_params",
    "reports_to_csv",
]


def _kernel_vector(X: BitMatrix) -> int:
    """A nonzero v with X v = 0 over GF(2), as an int over the columns."""
    rows = list(X.rows)
    pivots: list[int] = []
    top = 0
    for col in range(X.ncols):
        hit = next((i for i in range(top, len(rows)) if (rows[i] >> col) & 1), None)
        if hit is None:
            continue
        rows[top], rows[hit] = rows[hit], rows[top]
        for i in range(len(rows)):
            if i != top and (rows[i] >> col) & 1:
                rows[i] ^= rows[top]
        pivots.append(col)
        top += 1
    free = next(c for c in range(X.ncols) if c not in pivots)
    v = 1 << free
    for row, col in zip(rows, pivots):
        if (row >> free) & 1:
            v |= 1 << col
    return v


@dataclass(frozen=True)
class MdsSeed:
    """Generator X = (x_0, ..., x_r) of a binary [r+1, r] MDS code, a codeword c with
    c_0 = 1, and the dual word e (e . x = 0 columnwise, e . c = 0)."""

    r: int
    X: BitMatrix
    c: tuple[int, ...]
    e: tuple[int, ...]

    @classmethod
    def from_generator(cls, X: BitMatrix, c: Sequence[int]) -> "MdsSeed":
        r = X.nrows
        if r < 2 or X.ncols != r + 1:
            raise ValueError("X must be r x (r+1) with r >= 2")
        cols = X.columns()
        for skip in range(r + 1):
            if gf2_rank([col for j, col in enumerate(cols) if j != skip]) != r:
                raise ValueError("X does not generate an MDS code")
        c = tuple(int(b) & 1 for b in c)
        if len(c) != r + 1 or c[0] != 1:
            raise ValueError("c must have length r+1 and start with 1")
        c_int = sum(b << j for j, b in enumerate(c))
        if gf2_rank(list(X.rows) + [c_int]) != r:
            raise ValueError("c is not a codeword of the code generated by X")
        v = _kernel_vector(X)
        e = tuple((v >> j) & 1 for j in range(r + 1))
        return cls(r, X, c, e)

    def column(self, j: int) -> int:
        return self.X.column(j)


def mds_seed(r: int) -> MdsSeed:
    """X = [I_r | all-ones], c = (1, 0, ..., 0, 1)."""
    if r < 2:
        raise ValueError(f"r must be >= 2, got {r}")
    rows = [[int(i == j) for j in range(r)] + [1] for i in range(r)]
    c = [1] + [0] * (r - 1) + [1]
    return MdsSeed.from_generator(BitMatrix.from_lists(rows), c)


class Label(NamedTuple):
    """Point label: tree l, branch i, position j; the root is (l, 0, 0)."""

    tree: int
    branch: int
    pos: int

    @property
    def is_root(self) -> bool:
        return self.branch == 0

    def __str__(self) -> str:
        if self.is_root:
            return f"{self.tree}/root"
        return f"{self.tree}/{self.branch}/{self.pos}"

    @classmethod
    def parse(cls, text: str) -> "Label":
        parts = text.split("/")
        if len(parts) == 2 and parts[1] == "root":
            return cls(int(parts[0]), 0, 0)
        if len(parts) == 3:
            return cls(int(parts[0]), int(parts[1]), int(parts[2]))
        raise ValueError(f"bad label {text!r}")


def _block_columns(seed: MdsSeed, branches: int) -> dict[tuple[int, int], int]:
    """Columns of A (branches = lambda+1) or B (branches = lambda), keyed by
    (branch, pos) with the shared root at (0, 0)."""
    r = seed.r
    x = [seed.column(j) for j in range(r + 1)]
    root = sum(x[0] << (b * r) for b in range(branches))
    cols = {(0, 0): root}
    for i in range(1, branches + 1):
        for j in range(1, r + 1):
            filler = x[0] if seed.c[j] else 0
            v = 0
            for b in range(branches):
                v |= (x[j] if b == i - 1 else filler) << (b * r)
            cols[(i, j)] = v
    return cols


@dataclass(frozen=True)
class ConstructionLayout:
    params: CodeParams
    seed: MdsSeed
    A: BitMatrix
    B: BitMatrix
    W: BitMatrix
    labels: tuple[Label, ...]
    a_columns: dict = dc_field(repr=False, compare=False)
    b_columns: dict = dc_field(repr=False, compare=False)

    def block(self, kind: str) -> dict[tuple[int, int], int]:
        if kind == "A":
            return self.a_columns
        if kind == "B":
            return self.b_columns
        raise ValueError(f"block must be 'A' or 'B', got {kind!r}")


def build_layout(p: CodeParams, seed: MdsSeed | None = None) -> ConstructionLayout:
    if not p.wide:
        raise OutOfScope(f"construction needs n1 > n2, got n1={p.n1}, n2={p.n2}")
    seed = mds_seed(p.r) if seed is None else seed
    if seed.r != p.r:
        raise ValueError(f"seed has r={seed.r}, parameters have r={p.r}")
    r, lam, mu, nu = p.r, p.lam, p.mu, p.nu
    a_cols = _block_columns(seed, lam + 1)
    b_cols = _block_columns(seed, lam)
    A = BitMatrix.from_columns(list(a_cols.values()), (lam + 1) * r)
    B = BitMatrix.from_columns(list(b_cols.values()), lam * r)

    columns, labels = [], []
    offset = 0
    for tree in range(1, mu + 1):
        block, height = (a_cols, (lam + 1) * r) if tree <= nu else (b_cols, lam * r)
        for (i, j), v in block.items():
            columns.append(v << offset)
            labels.append(Label(tree, i, j))
        offset += height
    W = BitMatrix.from_columns(columns, offset)
    assert W.nrows == p.n1 * r and W.ncols == p.n
    # one e-parity per branch, and there are n1 branches in total
    assert gf2_rank(W) == p.n - p.n1
    return ConstructionLayout(p, seed, A, B, W, tuple(labels), a_cols, b_cols)


@dataclass(frozen=True)
class PointSet:
    """Evaluation points in canonical order: trees ascending, root first, then
    branches and positions ascending."""

    layout: ConstructionLayout
    field: BinaryField
    labels: tuple[Label, ...]
    elements: tuple[int, ...]

    def __post_init__(self):
        object.__setattr__(self, "_index", {lab: i for i, lab in enumerate(self.labels)})

    @property
    def params(self) -> CodeParams:
        return self.layout.params

    def __len__(self) -> int:
        return len(self.labels)

    def index(self, label: Label) -> int:
        return self._index[label]

    def element(self, label: Label) -> FieldElement:
        return FieldElement(self.field, self.elements[self.index(label)])

    def branch_count(self, tree: int) -> int:
        p = self.params
        return p.lam + 1 if tree <= p.nu else p.lam

    def branch(self, tree: int, i: int) -> tuple[Label, ...]:
        """Root followed by the r leaves of branch i of the tree."""
        if not 1 <= i <= self.branch_count(tree):
            raise ValueError(f"tree {tree} has no branch {i}")
        return (Label(tree, 0, 0),) + tuple(
            Label(tree, i, j) for j in range(1, self.params.r + 1)
        )

    def tree(self, tree: int) -> tuple[Label, ...]:
        return tuple(lab for lab in self.labels if lab.tree == tree)

    def branches_containing(self, label: Label) -> list[tuple[int, int]]:
        if label.is_root:
            return [(label.tree, i) for i in range(1, self.branch_count(label.tree) + 1)]
        return [(label.tree, label.branch)]

    def to_dict(self) -> dict:
        return {
            "params": {"n": self.params.n, "k": self.params.k, "r": self.params.r},
            "modulus": self.field.to_dict()["modulus"],
            "omega": [
                {"label": str(lab), "element": self.field.to_hex(v)}
                for lab, v in zip(self.labels, self.elements)
            ],
        }


class ConstructedLRC(NamedTuple):
    points: PointSet
    code: LinearCode

    def to_dict(self) -> dict:
        out = self.points.to_dict()
        out["generator"] = self.code.to_dict()
        return out

    def to_json(self, **kwargs) -> str:
        return json.dumps(self.to_dict(), **kwargs)


def build_lrc(
    p: CodeParams, modulus: int | None = None, seed: MdsSeed | None = None
) -> ConstructedLRC:
    """Points are the columns of W read in the polynomial basis of GF(2^(n1 r));
    generator entry (i, j) is omega_j^(2^i)."""
    p.validate()
    layout = build_layout(p, seed)
    field = BinaryField.of_degree(p.n1 * p.r, modulus)
    elements = tuple(layout.W.columns())
    points = PointSet(layout, field, layout.labels, elements)
    rows = []
    powers = list(elements)
    for _ in range(p.k):
        rows.append(tuple(powers))
        powers = [field.mul(w, w) for w in powers]
    return ConstructedLRC(points, LinearCode(field, tuple(rows)))


def encode(points: PointSet, message: Sequence[FieldElement]) -> list[FieldElement]:
    """Evaluate f(x) = sum_i m_i x^(2^i) at every point."""
    k = points.params.k
    if len(message) != k:
        raise ValueError(f"message length {len(message)} != k={k}")
    field = points.field
    coeffs = []
    for m in message:
        if m.field != field:
            raise ValueError("message symbols are not in the code's field")
        coeffs.append(m.value)
    return [FieldElement(field, _lp_eval_values(field, coeffs, w)) for w in points.elements]


def repair(
    points: PointSet, codeword: Sequence[FieldElement | None], label: Label
) -> FieldElement:
    """Recover the symbol at ``label`` from one intact branch through it.

    ``codeword`` holds None at erased positions.  Only the other r symbols of the
    chosen branch are read.
    """
    e = points.layout.seed.e
    for tree, i in points.branches_containing(label):
        members = points.branch(tree, i)
        others = [lab for lab in members if lab != label]
        if any(codeword[points.index(lab)] is None for lab in others):
            continue
        # branch parity: sum_j e_j * f(member_j) = 0 with e_j in GF(2)
        acc = 0
        for pos, lab in enumerate(members):
            if lab != label and e[pos]:
                acc ^= codeword[points.index(lab)].value
        return FieldElement(points.field, acc)
    raise ValueError(f"no intact branch contains {label}")


def verify_lemma5(
    layout: ConstructionLayout,
    F: Iterable[tuple[int, int]],
    designated: tuple[int, int],
    block: str = "A",
) -> bool:
    """Check that the block columns ``F`` (keys (branch, pos), root (0, 0)) are
    GF(2)-independent, and that every branch satisfies the seed's parity.

    Raises ValueError unless removing ``designated`` leaves at most r-1 members of
    F in every branch.
    """
    cols = layout.block(block)
    r = layout.seed.r
    F = set(F)
    unknown = F - set(cols)
    if unknown or designated not in F:
        raise ValueError(f"F must be a subset of block {block} containing the designated column")
    branches = max(i for i, _ in cols)
    for i in range(1, branches + 1):
        members = {(0, 0)} | {(i, j) for j in range(1, r + 1)}
        if len((F - {designated}) & members) > r - 1:
            raise ValueError(f"branch {i} keeps {len((F - {designated}) & members)} > r-1 members")
    e = layout.seed.e
    parity_ok = True
    for i in range(1, branches + 1):
        acc = cols[(0, 0)] if e[0] else 0
        for j in range(1, r + 1):
            if e[j]:
                acc ^= cols[(i, j)]
        parity_ok &= acc == 0
    return parity_ok and gf2_rank([cols[key] for key in F]) == len(F)


@dataclass(frozen=True)
class SelectionResult:
    subsets: tuple[frozenset[Label], ...]
    designated: tuple[Label | None, ...]

    @property
    def union(self) -> frozenset[Label]:
        return frozenset().union(*self.subsets)


def select_independent_subsets(points: PointSet, V: Iterable[Label]) -> SelectionResult:
    """Pick V_l inside each tree with a designated point so that no branch keeps r
    points besides it; the union has at least k points and is GF(2)-independent.

    Fully contained branches are processed in ascending index and lose their first
    leaf (with the root absent, the first such branch keeps its leaf as the
    designated point).
    """
    p = points.params
    eta, _ = explicit_bound(p)
    V = frozenset(V)
    if len(V) != p.k + eta:
        raise ValueError(f"|V| = {len(V)}, expected k + eta = {p.k + eta}")
    unknown = [lab for lab in V if lab not in points._index]
    if unknown:
        raise ValueError(f"labels not in the point set: {unknown}")
    r = p.r
    subsets, designated = [], []
    for tree in range(1, p.mu + 1):
        U = {lab for lab in V if lab.tree == tree}
        if not U:
            subsets.append(frozenset())
            designated.append(None)
            continue
        root = Label(tree, 0, 0)
        full = [
            i for i in range(1, points.branch_count(tree) + 1)
            if all(Label(tree, i, j) in U for j in range(1, r + 1))
        ]
        if root in U:
            drop = {Label(tree, i, 1) for i in full}
            chosen = root
        elif full:
            drop = {Label(tree, i, 1) for i in full[1:]}
            chosen = Label(tree, full[0], 1)
        else:
            drop = set()
            chosen = min(U)
        Vl = frozenset(U - drop)
        subsets.append(Vl)
        designated.append(chosen)

    result = SelectionResult(tuple(subsets), tuple(designated))
    for tree, (Vl, w) in enumerate(zip(result.subsets, result.designated), start=1):
        if w is None:
            continue
        for i in range(1, points.branch_count(tree) + 1):
            if len((Vl - {w}) & set(points.branch(tree, i))) > r - 1:
                raise AssertionError(f"tree {tree}, branch {i} keeps r points")
    union = result.union
    if len(union) < p.k:
        raise AssertionError(f"selection keeps {len(union)} < k={p.k} points")
    if gf2_rank([points.elements[points.index(lab)] for lab in union]) != len(union):
        raise AssertionError("selected points are GF(2)-dependent")
    return result


def fixture_c1() -> LinearCode:
    """[10, 5] code over GF(2^7) (modulus x^7 + x + 1) with local groups
    {1,2,3,4}, {5,6,7,8}, {9,10}.

    alpha_1..3 = 1, t, t^2; alpha_5..7 = t^3, t^4, t^5; alpha_9 = t^6;
    alpha_4 = alpha_1+alpha_2+alpha_3, alpha_8 = alpha_5+alpha_6+alpha_7,
    alpha_10 = alpha_9.  Column i is (alpha_i^(2^j)) for j = 0..4.
    """
    field = BinaryField(7, 0b10000011)
    basis = [1 << b for b in range(7)]
    a = {1: basis[0], 2: basis[1], 3: basis[2], 5: basis[3], 6: basis[4], 7: basis[5], 9: basis[6]}
    a[4] = a[1] ^ a[2] ^ a[3]
    a[8] = a[5] ^ a[6] ^ a[7]
    a[10] = a[9]
    rows = []
    powers = [a[i] for i in range(1, 11)]
    for _ in range(5):
        rows.append(tuple(powers))
        powers = [field.mul(w, w) for w in powers]
    return LinearCode(field, tuple(rows))


def fixture_c2() -> LinearCode:
    """[10, 5] code over GF(13) with overlapping local groups."""
    G = (
        (1, 0, 0, 1, 0, 0, 1, 5, 5, 11),
        (0, 1, 0, 1, 0, 0, 0, 3, 7, 10),
        (0, 0, 1, 1, 0, 0, 0, 10, 10, 7),
        (0, 0, 0, 0, 1, 0, 1, 6, 3, 9),
        (0, 0, 0, 0, 0, 1, 1, 10, 9, 6),
    )
    return LinearCode(PrimeField(13), G)


@dataclass(frozen=True)
class Theorem4Report:
    n: int
    k: int
    r: int
    eta_tilde: int
    d_oracle: int | None
    match: bool | None
    phi: tuple[int, ...] = ()
    psi: tuple[int, ...] = ()
    phi_local: tuple[int, ...] = ()
    note: str = ""

    @property
    def d_expected(self) -> int:
        return self.n - self.k + 1 - self.eta_tilde

    @property
    def phi_local_match(self) -> bool:
        return self.phi_local == self.psi


def verify_theorem4(p: CodeParams, check_phi: bool = True) -> Theorem4Report:
    """Build the code, compute its distance by brute force and compare with
    n - k + 1 - eta_tilde.

    With ``check_phi`` the report also carries Phi(x) for x in [1, n1] (all
    regenerating sets, and only those of size <= r+1) next to the closed-form Psi(x).
    """
    p.validate()
    if not p.wide:
        raise OutOfScope(f"needs n1 > n2, got n1={p.n1}, n2={p.n2}")
    if p.n > 14:
        raise ScaleError(f"n={p.n} exceeds the verification limit of 14")
    eta, d_expected = explicit_bound(p)
    if p.k + eta > p.n:
        return Theorem4Report(p.n, p.k, p.r, eta, None, None, note="k + eta_tilde > n")
    lrc = build_lrc(p)
    d = min_distance(lrc.code)
    phi = psi = local = ()
    if check_phi:
        psi = tuple(psi_closed(p.n, p.r, x) for x in range(1, p.n1 + 1))
        local = tuple(phi_values(lrc.code, p.n1, size_cap=p.r + 1)[1:])
        phi = tuple(phi_values(lrc.code, p.n1)[1:])
    return Theorem4Report(p.n, p.k, p.r, eta, d, d == d_expected, phi, psi, local)


def theorem4_params(max_n: int = 14) -> list[CodeParams]:
    """Every valid (n, k, r) with n <= max_n and n1 > n2."""
    out = []
    for n in range(4, max_n + 1):
        for r in range(2, n):
            for k in range(r + 1, n):
                p = CodeParams(n, k, r)
                if p.is_valid and p.wide:
                    out.append(p)
    return out


def reports_to_csv(reports: Iterable[Theorem4Report]) -> str:
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(["n", "k", "r", "eta_tilde", "d_oracle", "match"])
    for rep in reports:
        writer.writerow([
            rep.n, rep.k, rep.r, rep.eta_tilde,
            "" if rep.d_oracle is None else rep.d_oracle,
            "" if rep.match is None else str(rep.match).lower(),
        ])
    return buf.getvalue()
