"""Acceptance criteria, one check per criterion.

Each check returns (ok, detail).  Under pytest the outcome of every criterion is
also listed in the terminal summary; ``python3 tests/test_acceptance.py`` prints
the same lines without pytest.
"""
from __future__ import annotations

import random
import sys
import time
import warnings
from pathlib import Path

import pytest

sys.path.insert(0, str(Path(__file__).parent))

from lrcbounds.bounds import (  # noqa: E402
    PrakashWarning,
    attainability_grid,
    comparison_table,
    explicit_bound,
    gopalan_bound,
    ip_bound,
    prakash_bound,
    profiles,
    psi_closed,
    psi_exhaustive,
    valid_params,
)
from lrcbounds.codes import min_distance, phi_values  # noqa: E402
from lrcbounds.construct import (  # noqa: E402
    build_layout,
    build_lrc,
    encode,
    fixture_c1,
    fixture_c2,
    repair,
    theorem4_params,
    verify_lemma5,
    verify_theorem4,
)
from lrcbounds.cover import (  # noqa: E402
    components_profile,
    min_union,
    reduce_cover,
    validate_cover,
)
from lrcbounds.field import BinaryField, LinearizedPolynomial, gf2_rank, lp_eval, lp_interpolate  # noqa: E402
from lrcbounds.params import CodeParams, ceil_div, split_n  # noqa: E402

RESULTS: dict[str, tuple[bool, str]] = {}


def c1_psi_fixture():
    t0 = time.perf_counter()
    got = tuple(psi_exhaustive(13, 3, x) for x in range(1, 5))
    dt = time.perf_counter() - t0
    return got == (4, 7, 10, 13) and dt < 5, f"Psi(13,3,1..4) = {got} in {dt:.3f}s"


def c2_ip_series():
    bad = [
        k for k in range(4, 10)
        if ip_bound(CodeParams(13, k, 3))[1] != 13 - k + 1 - ceil_div(k - 3, 2)
    ]
    return not bad, f"mismatching k: {bad}"


def _closed_sweep():
    for r in range(2, 9):
        for n in range(r + 2, 25):
            n1, n2 = split_n(n, r)
            if n1 > n2:
                yield n, r, n1


def c3_closed_equals_exhaustive():
    t0 = time.perf_counter()
    checked = mismatches = 0
    for n, r, n1 in _closed_sweep():
        for x in range(1, n1 + 1):
            checked += 1
            mismatches += psi_closed(n, r, x) != psi_exhaustive(n, r, x)
    dt = time.perf_counter() - t0
    return mismatches == 0 and dt < 120, f"{checked} values, {mismatches} mismatches, {dt:.2f}s"


def c4_divisible_coincidence():
    checked, bad = 0, []
    for n, r, _ in _closed_sweep():
        if n % (r + 1):
            continue
        for p in valid_params(n):
            if p.r != r:
                continue
            checked += 1
            if explicit_bound(p)[1] != gopalan_bound(p):
                bad.append((p.n, p.k, p.r))
    return checked > 0 and not bad, f"{checked} tuples, violations {bad}"


def c5_bound_ordering():
    checked, bad = 0, []
    with warnings.catch_warnings():
        warnings.simplefilter("ignore", PrakashWarning)
        for n in range(4, 61):
            for p in valid_params(n):
                if not p.wide:
                    continue
                checked += 1
                pk = prakash_bound(p)
                if not ip_bound(p)[1] <= pk.d_upper <= gopalan_bound(p):
                    bad.append((p.n, p.k, p.r))
                if any(pk.e[m - 1] < psi_closed(p.n, p.r, m) for m in range(1, p.n1 + 1)):
                    bad.append((p.n, p.k, p.r, "e<Psi"))
    return not bad, f"{checked} tuples, violations {bad[:5]}"


EX4_HEX = ["05", "02", "07", "08", "0d", "10", "20", "30"]
EX4_LABELS = ["1/root", "1/1/1", "1/1/2", "1/2/1", "1/2/2", "2/root", "2/1/1", "2/1/2"]


def _ex4():
    return build_lrc(CodeParams(8, 4, 2), modulus=0x61)


def c6a_example_points():
    points, _ = _ex4()
    hexes = [points.field.to_hex(w) for w in points.elements]
    labels = [str(lab) for lab in points.labels]
    return hexes == EX4_HEX and labels == EX4_LABELS, " ".join(f"{l}={h}" for l, h in zip(labels, hexes))


def c6b_example_distance():
    d = min_distance(_ex4().code)
    return d == 3, f"d = {d}"


def c6c_example_phi():
    code = _ex4().code
    got = tuple(phi_values(code, 3)[1:])
    local = tuple(phi_values(code, 3, size_cap=3)[1:])
    return got == (3, 5, 8), f"Phi(1..3) = {got} over all regenerating sets; {local} over sets of size <= r+1"


def c7_theorem4_sweep():
    t0 = time.perf_counter()
    reports = [verify_theorem4(p, check_phi=False) for p in theorem4_params(14)]
    dt = time.perf_counter() - t0
    bad = [(r.n, r.k, r.r) for r in reports if not r.match]
    return not bad and dt < 600, f"{len(reports)} codes, mismatches {bad}, {dt:.1f}s"


def c8_repair():
    rng = random.Random(2024)
    codes = failures = trials = 0
    for p in theorem4_params(14):
        points, _ = build_lrc(p)
        codes += 1
        for _ in range(100):
            msg = [points.field(rng.getrandbits(points.field.m)) for _ in range(p.k)]
            word = encode(points, msg)
            for idx, lab in enumerate(points.labels):
                damaged = list(word)
                damaged[idx] = None
                trials += 1
                failures += repair(points, damaged, lab) != word[idx]
    return failures == 0, f"{codes} codes, {trials} single erasures, {failures} failures"


def c9a_c2_distance():
    d = min_distance(fixture_c2())
    return d == 5, f"d = {d}"


def c9b_c2_phi():
    code = fixture_c2()
    got = tuple(phi_values(code, 3)[1:])
    local = tuple(phi_values(code, 3, size_cap=4)[1:])
    return got == (4, 7, 10), f"Phi(1..3) = {got} over all regenerating sets; {local} over sets of size <= r+1"


def c9c_c1_distance():
    d = min_distance(fixture_c1())
    return d == 4, f"d = {d}"


def c10_grid():
    grid = attainability_grid(50, range(10, 18), range(2, 10))
    bad = [
        cell for cell, verdict in grid.items()
        if (verdict == "N") != (explicit_bound(CodeParams(50, *cell))[1] < gopalan_bound(CodeParams(50, *cell)))
        or verdict == "OOS"
    ]
    spots = grid[(16, 8)] == "N" and grid[(10, 9)] == "Y"
    n_cells = sorted(cell for cell, v in grid.items() if v == "N")
    return not bad and spots, f"N cells (k, r): {n_cells}"


def c11_disjoint_comparison():
    rows = comparison_table(25, 3, range(4, 19))
    ge = all(row.ip >= row.disjoint for row in rows)
    strict = [row.k for row in rows if row.ip > row.disjoint]
    return ge and bool(strict), f"{len(rows)} values of k, strictly better at k = {strict}"


def c12_property_suites():
    from test_cover import random_connected, random_cover

    notes = []
    ok = True
    # profile constraints
    count = 0
    for n1 in range(1, 9):
        for n2 in range(0, 8):
            for prof in profiles(n1, n2):
                count += 1
                ok &= sum(t for t, _ in prof) == n1 and sum(a for _, a in prof) == n2
                ok &= all(t >= 1 and a >= t - 1 for t, a in prof)
    rng = random.Random(99)
    covers = 0
    while covers < 200:
        n, r = rng.randint(5, 16), rng.randint(2, 4)
        sets = random_cover(rng, n, r)
        if sets is None:
            continue
        prof = components_profile(validate_cover(n, r, sets))
        ok &= all(a >= t - 1 for t, a in zip(prof.t, prof.a))
        covers += 1
    notes.append(f"profiles {count}+{covers}")
    # overlap excess of connected collections
    for _ in range(1000):
        sets = random_connected(rng)
        ok &= sum(map(len, sets)) - len(set().union(*sets)) >= len(sets) - 1
    notes.append("connected 1000")
    # cover reduction keeps min unions from shrinking
    done = 0
    while done < 200:
        n, r = rng.randint(5, 14), rng.randint(2, 4)
        base = random_cover(rng, n, r)
        if base is None:
            continue
        sets = base + [rng.sample(range(1, n + 1), r + 1) for _ in range(rng.randint(1, 3))]
        rng.shuffle(sets)
        n1, _ = split_n(n, r)
        out = reduce_cover(n, r, sets)
        ok &= len(out) == n1
        ok &= all(min_union(out, x) >= min_union(sets[:n1], x) for x in range(1, n1 + 1))
        done += 1
    notes.append("reductions 200")
    # independence of qualifying column subsets
    layouts = [build_layout(CodeParams(*t)) for t in ((8, 4, 2), (10, 5, 3), (14, 8, 4), (7, 3, 2), (17, 9, 4))]
    done = 0
    while done < 500:
        layout = rng.choice(layouts)
        block = rng.choice("AB")
        keys = list(layout.block(block))
        F = {key for key in keys if rng.random() < 0.45}
        if not F or len(keys) == 1:
            continue
        try:
            good = verify_lemma5(layout, F, rng.choice(sorted(F)), block)
        except ValueError:
            continue
        ok &= good and gf2_rank([layout.block(block)[key] for key in F]) == len(F)
        done += 1
    notes.append("column subsets 500")
    # interpolation uniqueness
    F = BinaryField.of_degree(8)
    done = 0
    while done < 100:
        t = rng.randint(1, 6)
        pts = [rng.randrange(1, 256) for _ in range(t)]
        if gf2_rank(pts) < t:
            continue
        f = LinearizedPolynomial(tuple(F(rng.randrange(256)) for _ in range(t)))
        points = [F(w) for w in pts]
        ok &= lp_interpolate(points, [lp_eval(f, w) for w in points]) == f
        done += 1
    notes.append("interpolations 100")
    return ok, ", ".join(notes)


CRITERIA = [
    ("1", "Psi fixture", c1_psi_fixture),
    ("2", "integer-program bound n=13 r=3", c2_ip_series),
    ("3", "closed form equals exhaustive", c3_closed_equals_exhaustive),
    ("4", "divisible case equals Gopalan", c4_divisible_coincidence),
    ("5", "bound ordering n <= 60", c5_bound_ordering),
    ("6a", "[8,4] points bit-exact", c6a_example_points),
    ("6b", "[8,4] distance", c6b_example_distance),
    ("6c", "[8,4] Phi = (3, 5, 8)", c6c_example_phi),
    ("7", "construction distance sweep n <= 14", c7_theorem4_sweep),
    ("8", "single-erasure repair sweep", c8_repair),
    ("9a", "C2 distance", c9a_c2_distance),
    ("9b", "C2 Phi = (4, 7, 10)", c9b_c2_phi),
    ("9c", "C1 distance", c9c_c1_distance),
    ("10", "attainability grid n=50", c10_grid),
    ("11", "disjoint-group comparison n=25", c11_disjoint_comparison),
    ("12", "property suites", c12_property_suites),
]


def _line(cid: str, title: str, ok: bool, detail: str) -> str:
    return f"criterion {cid:>3} {'PASS' if ok else 'FAIL'}  {title}: {detail}"


@pytest.mark.parametrize("cid,title,check", CRITERIA, ids=[c[0] for c in CRITERIA])
def test_criterion(cid, title, check):
    ok, detail = check()
    RESULTS[cid] = (ok, _line(cid, title, ok, detail))
    print(RESULTS[cid][1])
    assert ok, detail


if __name__ == "__main__":
    failed = 0
    for cid, title, check in CRITERIA:
        ok, detail = check()
        failed += not ok
        print(_line(cid, title, ok, detail), flush=True)
    sys.exit(1 if failed else 0)
