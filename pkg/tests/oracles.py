"""Independent reference computations used only by the tests."""
from __future__ import annotations

from itertools import product

import numpy as np
from sympy import GF, Poly, symbols
from sympy.polys.galoistools import gf_mul, gf_rem

X = symbols("x")
ZZ2 = GF(2)


def _to_coeffs(v: int) -> list[int]:
    """Int (bit i = x^i) to sympy's high-to-low coefficient list."""
    if v == 0:
        return []
    return [(v >> i) & 1 for i in range(v.bit_length() - 1, -1, -1)]


def _from_coeffs(c: list) -> int:
    out = 0
    for bit in c:
        out = (out << 1) | (int(bit) % 2)
    return out


def gf2m_mul(a: int, b: int, modulus: int) -> int:
    prod = gf_mul(_to_coeffs(a), _to_coeffs(b), 2, ZZ2.dom)
    return _from_coeffs(gf_rem(prod, _to_coeffs(modulus), 2, ZZ2.dom))


def irreducible(modulus: int) -> bool:
    coeffs = _to_coeffs(modulus)
    return Poly(coeffs, X, modulus=2).is_irreducible


def span_rank(vectors, combine, scalars, zero) -> int:
    """Rank as log_q |span| by closing the set under scalar combinations."""
    span = {zero}
    for v in vectors:
        span = {combine(s, c, v) for s in span for c in scalars}
    size, rank, q = len(span), 0, len(scalars)
    while size > 1:
        size //= q
        rank += 1
    return rank


def gf2_span_rank(vectors) -> int:
    return span_rank(vectors, lambda s, c, v: s ^ (v if c else 0), [0, 1], 0)


def gfp_span_rank(rows, p: int) -> int:
    def combine(s, c, v):
        return tuple((a + c * b) % p for a, b in zip(s, v))

    zero = tuple(0 for _ in rows[0])
    return span_rank(rows, combine, list(range(p)), zero)


def gf2m_tables(m: int, modulus: int) -> np.ndarray:
    size = 1 << m
    table = np.zeros((size, size), dtype=np.int64)
    for a in range(size):
        for b in range(a, size):
            table[a, b] = table[b, a] = gf2m_mul(a, b, modulus)
    return table


def min_distance_gf2m(generator, m: int, modulus: int) -> int:
    """Smallest weight over all nonzero codewords whose leading symbol is 1."""
    table = gf2m_tables(m, modulus)
    G = np.array(generator, dtype=np.int64)
    k, n = G.shape
    best = n
    for lead in range(k):
        tails = np.array(list(product(range(1 << m), repeat=k - lead - 1)), dtype=np.int64)
        tails = tails.reshape(len(tails), k - lead - 1)
        word = np.broadcast_to(G[lead], (len(tails), n)).copy()
        for idx in range(lead + 1, k):
            word ^= table[tails[:, idx - lead - 1][:, None], G[idx][None, :]]
        best = min(best, int((word != 0).sum(axis=1).min()))
    return best


def min_distance_gfp(generator, p: int) -> int:
    G = np.array(generator, dtype=np.int64)
    k, n = G.shape
    best = n
    for lead in range(k):
        tails = np.array(list(product(range(p), repeat=k - lead - 1)), dtype=np.int64)
        tails = tails.reshape(len(tails), k - lead - 1)
        word = (G[lead][None, :] + tails @ G[lead + 1:]) % p
        best = min(best, int((word != 0).sum(axis=1).min()))
    return best



def _compositions(total: int, parts: int, minimum: int):
    if parts == 1:
        if total >= minimum:
            yield (total,)
        return
    for first in range(minimum, total - minimum * (parts - 1) + 1):
        for rest in _compositions(total - first, parts - 1, minimum):
            yield (first,) + rest


def psi_bruteforce(n: int, r: int, x: int) -> int:
    """Max over ordered (t, a) assignments of the min over ordered sequences of
    distinct indices h_1..h_l, straight from the definition."""
    from itertools import permutations

    n1 = -(-n // (r + 1))
    n2 = n1 * (r + 1) - n
    best = None
    for s in range(1, n1 + 1):
        for t in _compositions(n1, s, 1):
            for a in _compositions(n2, s, 0):
                if any(ai < ti - 1 for ti, ai in zip(t, a)):
                    continue
                inner = None
                for l in range(1, s + 1):
                    for h in permutations(range(s), l):
                        before = sum(t[i] for i in h[:-1])
                        if before < x <= before + t[h[-1]]:
                            value = x * r + 1 - sum(a[i] - t[i] for i in h[:-1])
                            inner = value if inner is None else min(inner, value)
                if inner is not None:
                    best = inner if best is None else max(best, inner)
    return best
