"""Finite-field arithmetic: GF(2^m) in a polynomial basis, small GF(p), GF(2) matrices
and linearized polynomials.

Binary-extension elements are plain Python ints whose bit i is the coefficient of
theta^i, so m is unbounded (constructions routinely need m > 64).  The field objects
do arithmetic on raw ints; :class:`FieldElement` wraps a value together with its
field for the public, operator-based API.
"""
from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from typing import Iterable, Sequence, Union

__all__ = [
    "BinaryField",
    "PrimeField",
    "Field",
    "FieldElement",
    "FieldMismatch",
    "BitMatrix",
    "LinearizedPolynomial",
    "default_modulus",
    "is_irreducible",
    "ff_add",
    "ff_mul",
    "ff_frobenius",
    "lp_eval",
    "lp_interpolate",
    "gf2_rank",
    "gfq_rank",
    "field_from_dict",
]


class FieldMismatch(ValueError):
    """Operands belong to different fields."""


# --- GF(2)[x] on ints -------------------------------------------------------

def _clmul(a: int, b: int) -> int:
    out = 0
    while b:
        if b & 1:
            out ^= a
        a <<= 1
        b >>= 1
    return out


def _poly_divmod(a: int, b: int) -> tuple[int, int]:
    if b == 0:
        raise ZeroDivisionError("polynomial division by zero")
    q = 0
    db = b.bit_length()
    while a.bit_length() >= db:
        shift = a.bit_length() - db
        q |= 1 << shift
        a ^= b << shift
    return q, a


def _poly_mod(a: int, b: int) -> int:
    return _poly_divmod(a, b)[1]


def _poly_gcd(a: int, b: int) -> int:
    while b:
        a, b = b, _poly_mod(a, b)
    return a


def _poly_mulmod(a: int, b: int, f: int) -> int:
    return _poly_mod(_clmul(a, b), f)


def is_irreducible(modulus: int) -> bool:
    """Ben-Or test: f of degree m is irreducible iff gcd(x^(2^i) - x, f) = 1 for i <= m/2."""
    m = modulus.bit_length() - 1
    if m < 1:
        return False
    if m == 1:
        return True
    if not modulus & 1:
        return False
    power = 0b10  # x
    for _ in range(m // 2):
        power = _poly_mulmod(power, power, modulus)
        if _poly_gcd(modulus, power ^ 0b10) != 1:
            return False
    return True


def _reverse_bits(v: int, width: int) -> int:
    out = 0
    for _ in range(width):
        out = (out << 1) | (v & 1)
        v >>= 1
    return out


@lru_cache(maxsize=None)
def default_modulus(m: int) -> int:
    """Lexicographically smallest irreducible polynomial of degree m with nonzero
    constant term, comparing coefficient sequences from degree 0 upwards.

    For m = 6 this is x^6 + x^5 + 1.
    """
    if m < 1:
        raise ValueError(f"degree must be >= 1, got {m}")
    if m == 1:
        return 0b11
    middle = m - 1
    for v in range(1 << middle):
        # c_1 is the most significant bit of v, so counting v up walks the
        # low-to-high lexicographic order.
        candidate = (1 << m) | (_reverse_bits(v, middle) << 1) | 1
        if is_irreducible(candidate):
            return candidate
    raise AssertionError(f"no irreducible polynomial of degree {m}")  # pragma: no cover


def _hex_width(bits: int) -> int:
    return max(1, -(-bits // 4))


# --- fields -----------------------------------------------------------------

@dataclass(frozen=True)
class BinaryField:
    """GF(2^m) = GF(2)[x] / (modulus), elements in the basis {1, theta, ..., theta^(m-1)}."""

    m: int
    modulus: int

    kind = "binary"

    def __post_init__(self):
        if self.m < 1:
            raise ValueError(f"extension degree must be >= 1, got {self.m}")
        if self.modulus.bit_length() - 1 != self.m:
            raise ValueError(f"modulus {self.modulus:#x} does not have degree {self.m}")
        if not is_irreducible(self.modulus):
            raise ValueError(f"modulus {self.modulus:#x} is reducible over GF(2)")

    @classmethod
    def of_degree(cls, m: int, modulus: int | None = None) -> "BinaryField":
        return cls(m, default_modulus(m) if modulus is None else modulus)

    @property
    def order(self) -> int:
        return 1 << self.m

    @property
    def characteristic(self) -> int:
        return 2

    zero = 0
    one = 1

    def contains(self, a: int) -> bool:
        return 0 <= a < (1 << self.m)

    def add(self, a: int, b: int) -> int:
        return a ^ b

    sub = add

    def neg(self, a: int) -> int:
        return a

    def mul(self, a: int, b: int) -> int:
        m, f = self.m, self.modulus
        out = 0
        while b:
            if b & 1:
                out ^= a
            b >>= 1
            a <<= 1
            if (a >> m) & 1:
                a ^= f
        return out

    def square(self, a: int) -> int:
        return self.mul(a, a)

    def frobenius(self, a: int, i: int = 1) -> int:
        """a^(2^i)."""
        for _ in range(i % self.m):
            a = self.mul(a, a)
        return a

    def inv(self, a: int) -> int:
        if a == 0:
            raise ZeroDivisionError("zero has no inverse")
        # extended Euclid: s * a = r (mod modulus)
        r0, r1 = self.modulus, a
        s0, s1 = 0, 1
        while r1:
            q, rem = _poly_divmod(r0, r1)
            r0, r1 = r1, rem
            s0, s1 = s1, s0 ^ _clmul(q, s1)
        assert r0 == 1
        return _poly_mod(s0, self.modulus)

    def div(self, a: int, b: int) -> int:
        return self.mul(a, self.inv(b))

    def pow(self, a: int, e: int) -> int:
        if e < 0:
            a, e = self.inv(a), -e
        out = 1
        while e:
            if e & 1:
                out = self.mul(out, a)
            a = self.mul(a, a)
            e >>= 1
        return out

    def to_hex(self, a: int) -> str:
        return format(a, f"0{_hex_width(self.m)}x")

    def from_hex(self, text: str) -> int:
        a = int(text, 16)
        if not self.contains(a):
            raise ValueError(f"{text!r} does not fit in {self.m} bits")
        return a

    def to_dict(self) -> dict:
        return {
            "kind": self.kind,
            "m": self.m,
            "modulus": format(self.modulus, f"0{_hex_width(self.m + 1)}x"),
        }

    def __call__(self, value: int) -> "FieldElement":
        if not self.contains(value):
            raise ValueError(f"{value} is not an element of GF(2^{self.m})")
        return FieldElement(self, value)

    def __repr__(self) -> str:
        return f"BinaryField(m={self.m}, modulus={self.modulus:#x})"


def _is_prime(p: int) -> bool:
    if p < 2:
        return False
    i = 2
    while i * i <= p:
        if p % i == 0:
            return False
        i += 1
    return True


@dataclass(frozen=True)
class PrimeField:
    """GF(p) for a prime p <= 2^16."""

    p: int

    kind = "prime"

    def __post_init__(self):
        if not (_is_prime(self.p) and self.p <= 1 << 16):
            raise ValueError(f"p={self.p} must be a prime <= 65536")

    @property
    def order(self) -> int:
        return self.p

    @property
    def characteristic(self) -> int:
        return self.p

    zero = 0
    one = 1

    def contains(self, a: int) -> bool:
        return 0 <= a < self.p

    def add(self, a: int, b: int) -> int:
        return (a + b) % self.p

    def sub(self, a: int, b: int) -> int:
        return (a - b) % self.p

    def neg(self, a: int) -> int:
        return -a % self.p

    def mul(self, a: int, b: int) -> int:
        return a * b % self.p

    def square(self, a: int) -> int:
        return a * a % self.p

    def frobenius(self, a: int, i: int = 1) -> int:
        raise TypeError("Frobenius powers are only provided for binary-extension fields")

    def inv(self, a: int) -> int:
        if a % self.p == 0:
            raise ZeroDivisionError("zero has no inverse")
        return pow(a, -1, self.p)

    def div(self, a: int, b: int) -> int:
        return self.mul(a, self.inv(b))

    def pow(self, a: int, e: int) -> int:
        return pow(a, e, self.p)

    def to_hex(self, a: int) -> str:
        return format(a, f"0{_hex_width((self.p - 1).bit_length())}x")

    def from_hex(self, text: str) -> int:
        a = int(text, 16)
        if not self.contains(a):
            raise ValueError(f"{text!r} is not a residue mod {self.p}")
        return a

    def to_dict(self) -> dict:
        return {"kind": self.kind, "p": self.p}

    def __call__(self, value: int) -> "FieldElement":
        return FieldElement(self, value % self.p)


Field = Union[BinaryField, PrimeField]


def field_from_dict(spec: dict) -> Field:
    if spec["kind"] == "binary":
        return BinaryField(int(spec["m"]), int(spec["modulus"], 16))
    if spec["kind"] == "prime":
        return PrimeField(int(spec["p"]))
    raise ValueError(f"unknown field kind {spec['kind']!r}")


@dataclass(frozen=True)
class FieldElement:
    field: Field
    value: int

    def _check(self, other: "FieldElement") -> None:
        if not isinstance(other, FieldElement):
            raise TypeError(f"expected FieldElement, got {type(other).__name__}")
        if other.field != self.field:
            raise FieldMismatch(f"{self.field!r} vs {other.field!r}")

    def __add__(self, other: "FieldElement") -> "FieldElement":
        self._check(other)
        return FieldElement(self.field, self.field.add(self.value, other.value))

    def __sub__(self, other: "FieldElement") -> "FieldElement":
        self._check(other)
        return FieldElement(self.field, self.field.sub(self.value, other.value))

    def __neg__(self) -> "FieldElement":
        return FieldElement(self.field, self.field.neg(self.value))

    def __mul__(self, other: "FieldElement") -> "FieldElement":
        self._check(other)
        return FieldElement(self.field, self.field.mul(self.value, other.value))

    def __truediv__(self, other: "FieldElement") -> "FieldElement":
        self._check(other)
        return FieldElement(self.field, self.field.div(self.value, other.value))

    def __pow__(self, e: int) -> "FieldElement":
        return FieldElement(self.field, self.field.pow(self.value, e))

    def inverse(self) -> "FieldElement":
        return FieldElement(self.field, self.field.inv(self.value))

    def frobenius(self, i: int = 1) -> "FieldElement":
        return FieldElement(self.field, self.field.frobenius(self.value, i))

    def __bool__(self) -> bool:
        return self.value != 0

    def hex(self) -> str:
        return self.field.to_hex(self.value)

    def __repr__(self) -> str:
        return f"FieldElement({self.hex()})"


def ff_add(a: FieldElement, b: FieldElement) -> FieldElement:
    return a + b


def ff_mul(a: FieldElement, b: FieldElement) -> FieldElement:
    return a * b


def ff_frobenius(a: FieldElement, i: int) -> FieldElement:
    """a^(2^i); binary-extension fields only."""
    if not isinstance(a.field, BinaryField):
        raise TypeError("Frobenius powers are only provided for binary-extension fields")
    return a.frobenius(i)


# --- linear algebra ---------------------------------------------------------

@dataclass(frozen=True)
class BitMatrix:
    """Dense GF(2) matrix; ``rows[i]`` is an int whose bit j is entry (i, j)."""

    nrows: int
    ncols: int
    rows: tuple[int, ...]

    def __post_init__(self):
        if len(self.rows) != self.nrows:
            raise ValueError(f"expected {self.nrows} rows, got {len(self.rows)}")
        limit = 1 << self.ncols
        if any(not 0 <= row < limit for row in self.rows):
            raise ValueError("row has bits beyond the column count")

    @classmethod
    def from_lists(cls, entries: Sequence[Sequence[int]]) -> "BitMatrix":
        ncols = len(entries[0]) if entries else 0
        rows = []
        for row in entries:
            if len(row) != ncols:
                raise ValueError("ragged matrix")
            rows.append(sum((int(bit) & 1) << j for j, bit in enumerate(row)))
        return cls(len(entries), ncols, tuple(rows))

    @classmethod
    def from_columns(cls, columns: Sequence[int], nrows: int) -> "BitMatrix":
        """Columns are ints whose bit i is entry (i, j)."""
        rows = [0] * nrows
        for j, col in enumerate(columns):
            if col >> nrows:
                raise ValueError(f"column {j} has bits beyond row {nrows}")
            for i in range(nrows):
                if (col >> i) & 1:
                    rows[i] |= 1 << j
        return cls(nrows, len(columns), tuple(rows))

    @classmethod
    def zeros(cls, nrows: int, ncols: int) -> "BitMatrix":
        return cls(nrows, ncols, (0,) * nrows)

    @classmethod
    def identity(cls, size: int) -> "BitMatrix":
        return cls(size, size, tuple(1 << i for i in range(size)))

    def __getitem__(self, ij: tuple[int, int]) -> int:
        i, j = ij
        return (self.rows[i] >> j) & 1

    def column(self, j: int) -> int:
        return sum(((row >> j) & 1) << i for i, row in enumerate(self.rows))

    def columns(self) -> list[int]:
        return [self.column(j) for j in range(self.ncols)]

    def to_lists(self) -> list[list[int]]:
        return [[(row >> j) & 1 for j in range(self.ncols)] for row in self.rows]


def _xor_basis_rank(vectors: Iterable[int]) -> int:
    basis: dict[int, int] = {}  # leading bit -> vector
    for v in vectors:
        while v:
            top = v.bit_length() - 1
            if top not in basis:
                basis[top] = v
                break
            v ^= basis[top]
    return len(basis)


def gf2_rank(matrix: BitMatrix | Sequence[int]) -> int:
    """Rank over GF(2).  Accepts a :class:`BitMatrix` or a sequence of int bit-vectors."""
    rows = matrix.rows if isinstance(matrix, BitMatrix) else matrix
    return _xor_basis_rank(rows)


def _row_reduce(field: Field, rows: list[list[int]]) -> list[int]:
    """In-place Gauss-Jordan elimination; returns pivot columns."""
    pivots = []
    nrows = len(rows)
    ncols = len(rows[0]) if rows else 0
    top = 0
    for col in range(ncols):
        pivot = next((i for i in range(top, nrows) if rows[i][col]), None)
        if pivot is None:
            continue
        rows[top], rows[pivot] = rows[pivot], rows[top]
        inv = field.inv(rows[top][col])
        rows[top] = [field.mul(inv, v) for v in rows[top]]
        for i in range(nrows):
            if i != top and rows[i][col]:
                factor = rows[i][col]
                rows[i] = [field.sub(v, field.mul(factor, w)) for v, w in zip(rows[i], rows[top])]
        pivots.append(col)
        top += 1
        if top == nrows:
            break
    return pivots


def _common_field(elements: Iterable[FieldElement]) -> Field | None:
    field = None
    for e in elements:
        if field is None:
            field = e.field
        elif e.field != field:
            raise FieldMismatch(f"{field!r} vs {e.field!r}")
    return field


def gfq_rank(matrix: Sequence[Sequence[FieldElement]]) -> int:
    """Rank over the common field of the entries."""
    field = _common_field(e for row in matrix for e in row)
    if field is None:
        return 0
    rows = [[e.value for e in row] for row in matrix]
    return len(_row_reduce(field, rows))


def rank_values(field: Field, rows: Sequence[Sequence[int]]) -> int:
    """Rank of a matrix given as raw field values."""
    if not rows:
        return 0
    return len(_row_reduce(field, [list(r) for r in rows]))


# --- linearized polynomials -------------------------------------------------

@dataclass(frozen=True)
class LinearizedPolynomial:
    """f(x) = sum_i coefficients[i] * x^(2^i) over a binary-extension field."""

    coefficients: tuple[FieldElement, ...]

    def __post_init__(self):
        if not self.coefficients:
            raise ValueError("need at least one coefficient")
        field = _common_field(self.coefficients)
        if not isinstance(field, BinaryField):
            raise TypeError("linearized polynomials need a binary-extension field")

    @property
    def field(self) -> BinaryField:
        return self.coefficients[0].field

    def __call__(self, w: FieldElement) -> FieldElement:
        return lp_eval(self, w)


def _lp_eval_values(field: BinaryField, coefficients: Sequence[int], w: int) -> int:
    out = 0
    power = w
    for c in coefficients:
        if c:
            out ^= field.mul(c, power)
        power = field.mul(power, power)
    return out


def lp_eval(f: LinearizedPolynomial, w: FieldElement) -> FieldElement:
    """sum_i m_i * w^(2^i)."""
    if w.field != f.field:
        raise FieldMismatch(f"{f.field!r} vs {w.field!r}")
    field = f.field
    return FieldElement(field, _lp_eval_values(field, [c.value for c in f.coefficients], w.value))


def lp_interpolate(
    points: Sequence[FieldElement], values: Sequence[FieldElement]
) -> LinearizedPolynomial:
    """Recover the linearized polynomial of 2-degree < len(points) taking ``values``
    at ``points``.  The points must be GF(2)-independent, which makes the Moore
    system nonsingular."""
    if len(points) != len(values) or not points:
        raise ValueError("need equally many points and values")
    field = _common_field(list(points) + list(values))
    if not isinstance(field, BinaryField):
        raise TypeError("linearized polynomials need a binary-extension field")
    t = len(points)
    rows = []
    for w, y in zip(points, values):
        row, power = [], w.value
        for _ in range(t):
            row.append(power)
            power = field.mul(power, power)
        rows.append(row + [y.value])
    pivots = _row_reduce(field, rows)
    if pivots != list(range(t)):
        raise ValueError("points are not GF(2)-independent; interpolation is not unique")
    return LinearizedPolynomial(tuple(FieldElement(field, rows[i][t]) for i in range(t)))
