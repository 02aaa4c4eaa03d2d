"""Command-line front end.

Exit codes: 0 success, 1 fixture or repair failure, 2 invalid parameters,
3 scale guard, 4 parameters outside the construction's scope.
"""
from __future__ import annotations

import argparse
import json
import random
import sys
from dataclasses import asdict
from typing import Callable, Sequence

from . import bounds as B
from . import construct as C
from .codes import min_distance, phi_values
from .field import FieldElement
from .params import CodeParams, InvalidParameters, OutOfScope, ScaleError, split_n

EXIT_OK, EXIT_FAIL, EXIT_INVALID, EXIT_SCALE, EXIT_SCOPE = 0, 1, 2, 3, 4


def parse_range(text: str) -> list[int]:
    """"7", "4..9" (inclusive) or a comma list of either."""
    out: list[int] = []
    for part in text.split(","):
        part = part.strip()
        if ".." in part:
            lo, hi = (int(v) for v in part.split("..", 1))
            if lo > hi:
                raise argparse.ArgumentTypeError(f"empty range {part!r}")
            out.extend(range(lo, hi + 1))
        elif part:
            out.append(int(part))
    if not out:
        raise argparse.ArgumentTypeError(f"empty range {text!r}")
    return out


def parse_hex(text: str) -> int:
    try:
        return int(text, 16)
    except ValueError:
        raise argparse.ArgumentTypeError(f"not a hex polynomial: {text!r}") from None


def _single(values: list[int], name: str) -> int:
    if len(values) != 1:
        raise InvalidParameters(f"--{name} takes a single value here")
    return values[0]


def _emit(args, text: str) -> None:
    if args.out:
        with open(args.out, "w", newline="") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def _text_table(header: Sequence[str], rows: Sequence[Sequence]) -> str:
    cells = [list(map(str, header))] + [["-" if v is None else str(v) for v in r] for r in rows]
    widths = [max(len(row[i]) for row in cells) for i in range(len(header))]
    return "".join(
        "  ".join(c.rjust(w) for c, w in zip(row, widths)).rstrip() + "\n" for row in cells
    )


def cmd_bounds(args) -> int:
    n, r = _single(args.n, "n"), _single(args.r, "r")
    if n < 1 or r < 2:
        raise InvalidParameters(f"need n >= 1 and r >= 2, got n={n}, r={r}")
    ks = args.k if args.k else list(range(r + 1, n))
    rows = B.comparison_table(n, r, ks)
    if not rows:
        raise InvalidParameters(f"no valid k in {ks[0]}..{ks[-1]} for n={n}, r={r}")
    if args.format == "csv":
        _emit(args, B.rows_to_csv(rows))
    elif args.format == "json":
        _emit(args, json.dumps([asdict(row) for row in rows], indent=2) + "\n")
    else:
        kept = {row.k for row in rows}
        skipped = [k for k in ks if k not in kept]
        text = _text_table(["n", "k", "r", "gopalan", "prakash", "ip", "disjoint"],
                           [tuple(asdict(row).values()) for row in rows])
        if skipped:
            text += f"skipped k (need 1 < r < k and k(r+1) <= nr): {skipped}\n"
        _emit(args, text)
    return EXIT_OK


def cmd_psi(args) -> int:
    n, r = _single(args.n, "n"), _single(args.r, "r")
    n1, n2 = split_n(n, r)
    if args.method == "both":
        methods = ["closed", "exhaustive"]
    elif args.method == "auto":
        methods = ["closed" if n1 > n2 else "exhaustive"]
    else:
        methods = [args.method]
    table = {m: [B.psi(n, r, x, m) for x in range(1, n1 + 1)] for m in methods}
    if args.format == "json":
        _emit(args, json.dumps({"n": n, "r": r, "n1": n1, "n2": n2, "psi": table}, indent=2) + "\n")
        return EXIT_OK
    rows = [[x] + [table[m][x - 1] for m in methods] for x in range(1, n1 + 1)]
    if args.format == "csv":
        _emit(args, "x," + ",".join(methods) + "\n" + "".join(",".join(map(str, row)) + "\n" for row in rows))
    else:
        _emit(args, f"n={n} r={r} n1={n1} n2={n2}\n" + _text_table(["x"] + methods, rows))
    return EXIT_OK


def cmd_grid(args) -> int:
    n = _single(args.n, "n")
    ks = args.k or list(range(2, n))
    rs = args.r or list(range(2, n))
    grid = B.attainability_grid(n, ks, rs)
    if args.format == "csv":
        _emit(args, B.grid_to_csv(grid))
    elif args.format == "json":
        cells = [{"k": k, "r": r, "verdict": grid[(k, r)]} for (k, r) in sorted(grid)]
        _emit(args, json.dumps(cells, indent=2) + "\n")
    else:
        rows = [[k] + [grid[(k, r)] for r in rs] for k in ks]
        _emit(args, f"n={n}; rows k, columns r\n" + _text_table(["k\\r"] + rs, rows))
    return EXIT_OK


def _params(args) -> CodeParams:
    return CodeParams(_single(args.n, "n"), _single(args.k, "k"), _single(args.r, "r"))


def cmd_construct(args) -> int:
    p = _params(args)
    lrc = C.build_lrc(p, modulus=args.modulus)
    out = lrc.to_dict()
    if args.verify:
        rep = C.verify_theorem4(p, check_phi=False)
        out["verification"] = {
            "eta_tilde": rep.eta_tilde,
            "d_expected": rep.d_expected,
            "d_oracle": rep.d_oracle,
            "match": rep.match,
        }
    if args.format == "text":
        lines = [f"[{p.n},{p.k}] code over GF(2^{lrc.points.field.m}), modulus {out['modulus']}"]
        lines += [f"  {w['label']:>8}  {w['element']}" for w in out["omega"]]
        if "verification" in out:
            v = out["verification"]
            lines.append(f"d={v['d_oracle']} expected={v['d_expected']} match={str(v['match']).lower()}")
        _emit(args, "\n".join(lines) + "\n")
    else:
        _emit(args, json.dumps(out, indent=2) + "\n")
    if args.verify and not out["verification"]["match"]:
        return EXIT_FAIL
    return EXIT_OK


def _random_message(rng: random.Random, points: C.PointSet) -> list[FieldElement]:
    return [points.field(rng.getrandbits(points.field.m)) for _ in range(points.params.k)]


def cmd_encode(args) -> int:
    p = _params(args)
    points, _ = C.build_lrc(p, modulus=args.modulus)
    if args.message:
        values = [parse_hex(v) for v in args.message.split(",")]
        if len(values) != p.k or not all(points.field.contains(v) for v in values):
            raise InvalidParameters(f"message needs {p.k} elements of GF(2^{points.field.m})")
        message = [points.field(v) for v in values]
    else:
        message = _random_message(random.Random(args.seed), points)
    codeword = C.encode(points, message)
    out = {
        "message": [m.hex() for m in message],
        "codeword": [{"label": str(lab), "value": c.hex()} for lab, c in zip(points.labels, codeword)],
    }
    if args.format == "json":
        _emit(args, json.dumps(out, indent=2) + "\n")
    else:
        rows = [[w["label"], w["value"]] for w in out["codeword"]]
        _emit(args, "message " + " ".join(out["message"]) + "\n" + _text_table(["label", "value"], rows))
    return EXIT_OK


def cmd_repair_demo(args) -> int:
    """Erase each coordinate in turn and rebuild it from one branch."""
    p = _params(args)
    points, _ = C.build_lrc(p, modulus=args.modulus)
    rng = random.Random(args.seed)
    codeword = C.encode(points, _random_message(rng, points))
    rows, failures = [], 0
    for idx, lab in enumerate(points.labels):
        damaged = list(codeword)
        damaged[idx] = None
        value = C.repair(points, damaged, lab)
        ok = value == codeword[idx]
        failures += not ok
        rows.append([str(lab), codeword[idx].hex(), value.hex(), "ok" if ok else "FAIL"])
    if args.format == "json":
        keys = ("label", "original", "repaired", "status")
        _emit(args, json.dumps([dict(zip(keys, row)) for row in rows], indent=2) + "\n")
    else:
        _emit(args, _text_table(["label", "original", "repaired", "status"], rows))
    return EXIT_FAIL if failures else EXIT_OK


def _fixture_checks() -> dict[str, Callable[[], list[tuple[str, bool | None, str]]]]:
    def c1():
        code = C.fixture_c1()
        d = min_distance(code)
        return [("c1 d = 4", d == 4, f"d={d}")]

    def c2():
        code = C.fixture_c2()
        d = min_distance(code)
        local = phi_values(code, 3, size_cap=4)[1:]
        full = phi_values(code, 3)[1:]
        return [
            ("c2 d = 5", d == 5, f"d={d}"),
            ("c2 Phi(1..3) over sets of size <= r+1 = (4, 7, 10)", local == [4, 7, 10], f"{tuple(local)}"),
            ("c2 Phi(1..3) over all regenerating sets", None, f"{tuple(full)}"),
        ]

    def example4():
        points, code = C.build_lrc(CodeParams(8, 4, 2), modulus=0x61)
        hexes = [points.field.to_hex(w) for w in points.elements]
        want = ["05", "02", "07", "08", "0d", "10", "20", "30"]
        d = min_distance(code)
        return [
            ("example4 omega bit-exact", hexes == want, " ".join(hexes)),
            ("example4 d = 3", d == 3, f"d={d}"),
        ]

    def psi13():
        got = [B.psi_exhaustive(13, 3, x) for x in range(1, 5)]
        return [("psi13 = 3x+1", got == [3 * x + 1 for x in range(1, 5)], f"{tuple(got)}")]

    return {"c1": c1, "c2": c2, "example4": example4, "psi13": psi13}


def cmd_verify_fixtures(args) -> int:
    checks = _fixture_checks()
    names = [args.only] if args.only else list(checks)
    failed = 0
    for name in names:
        for label, ok, detail in checks[name]():
            if ok is None:
                print(f"INFO  {label}: {detail}")
                continue
            failed += not ok
            print(f"{'PASS' if ok else 'FAIL'}  {label}: {detail}")
    return EXIT_FAIL if failed else EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="lrcbounds", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)

    def common(sp, fmt_default="text", fmts=("csv", "json", "text")):
        sp.add_argument("--n", type=parse_range, required=True)
        sp.add_argument("--k", type=parse_range)
        sp.add_argument("--r", type=parse_range)
        sp.add_argument("--format", choices=fmts, default=fmt_default)
        sp.add_argument("--out", help="write output here instead of stdout")
        return sp

    sp = common(sub.add_parser("bounds", help="compare distance bounds over a range of k"))
    sp.set_defaults(func=cmd_bounds)

    sp = common(sub.add_parser("psi", help="tabulate Psi(x) for x = 1..n1"))
    sp.add_argument("--method", choices=["auto", "closed", "exhaustive", "both"], default="auto")
    sp.set_defaults(func=cmd_psi)

    sp = common(sub.add_parser("grid", help="attainability of the Gopalan bound"), "csv")
    sp.set_defaults(func=cmd_grid)

    for name, func, help_text in [
        ("construct", cmd_construct, "build the code and export it as JSON"),
        ("encode", cmd_encode, "encode a message"),
        ("repair-demo", cmd_repair_demo, "erase and repair every coordinate"),
    ]:
        fmts = ("json", "text")
        sp = common(sub.add_parser(name, help=help_text), "json" if name == "construct" else "text", fmts)
        sp.add_argument("--modulus", type=parse_hex, help="field modulus as hex, bit i = x^i")
        sp.add_argument("--seed", type=int, default=0)
        sp.set_defaults(func=func)
        if name == "construct":
            sp.add_argument("--verify", action="store_true", help="check the distance by brute force")
        if name == "encode":
            sp.add_argument("--message", help="comma-separated hex symbols (default: random)")

    sp = sub.add_parser("verify-fixtures", help="check the reference codes")
    sp.add_argument("--only", choices=sorted(_fixture_checks()))
    sp.set_defaults(func=cmd_verify_fixtures)
    return parser


def main(argv: Sequence[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    if args.command in ("bounds", "psi") and not args.r:
        print("error: --r is required", file=sys.stderr)
        return EXIT_INVALID
    if args.command in ("construct", "encode", "repair-demo") and not (args.k and args.r):
        print("error: --k and --r are required", file=sys.stderr)
        return EXIT_INVALID
    try:
        return args.func(args)
    except InvalidParameters as exc:
        print(f"invalid parameters: {exc}", file=sys.stderr)
        return EXIT_INVALID
    except ScaleError as exc:
        print(f"scale limit: {exc}", file=sys.stderr)
        return EXIT_SCALE
    except OutOfScope as exc:
        print(f"out of scope: {exc}", file=sys.stderr)
        return EXIT_SCOPE
    except ValueError as exc:
        print(f"invalid input: {exc}", file=sys.stderr)
        return EXIT_INVALID


if __name__ == "__main__":
    sys.exit(main())
