import json

import pytest

from lrcbounds.cli import main, parse_range
from lrcbounds.params import ceil_div


def run(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


def test_parse_range():
    assert parse_range("4..9") == [4, 5, 6, 7, 8, 9]
    assert parse_range("3,5..6") == [3, 5, 6]
    with pytest.raises(Exception):
        parse_range("9..4")


class TestBounds:
    def test_n13_csv(self, capsys):
        code, out, _ = run(capsys, "bounds", "--n", "13", "--r", "3", "--k", "4..9", "--format", "csv")
        assert code == 0
        lines = out.splitlines()
        assert lines[0] == "n,k,r,gopalan,prakash,ip,disjoint"
        for line in lines[1:]:
            n, k, r, g, pk, ip, dj = map(int, line.split(","))
            assert ip == 13 - k + 1 - ceil_div(k - 3, 2)

    def test_invalid(self, capsys):
        code, _, err = run(capsys, "bounds", "--n", "10", "--r", "12", "--k", "5")
        assert code == 2 and "invalid" in err

    def test_text_lists_skipped(self, capsys):
        code, out, _ = run(capsys, "bounds", "--n", "13", "--r", "3", "--k", "2..10")
        assert code == 0 and "skipped k" in out and "[2, 3, 10]" in out

    def test_large_series_is_deterministic(self, capsys, tmp_path):
        target = tmp_path / "fig.csv"
        args = ("bounds", "--n", "101", "--r", "9", "--k", "10..90", "--format", "csv", "--out", str(target))
        assert run(capsys, *args)[0] == 0
        first = target.read_bytes()
        assert run(capsys, *args)[0] == 0
        assert target.read_bytes() == first
        assert len(first.decode().splitlines()) == 82

    def test_json(self, capsys):
        code, out, _ = run(capsys, "bounds", "--n", "25", "--r", "3", "--format", "json")
        rows = json.loads(out)
        assert code == 0 and all(row["ip"] >= row["disjoint"] for row in rows)


class TestPsi:
    def test_both_methods(self, capsys):
        code, out, _ = run(capsys, "psi", "--n", "13", "--r", "3", "--method", "both", "--format", "csv")
        assert code == 0
        assert out.splitlines() == ["x,closed,exhaustive", "1,4,4", "2,7,7", "3,10,10", "4,13,13"]

    def test_auto(self, capsys):
        code, out, _ = run(capsys, "psi", "--n", "8", "--r", "2", "--format", "json")
        assert code == 0 and json.loads(out)["psi"] == {"closed": [3, 5, 8]}

    def test_scale_guard(self, capsys):
        code, _, err = run(capsys, "psi", "--n", "40", "--r", "2", "--method", "exhaustive")
        assert code == 3 and "limit" in err

    def test_closed_out_of_scope(self, capsys):
        code, _, _ = run(capsys, "psi", "--n", "16", "--r", "4", "--method", "closed")
        assert code == 4


class TestGrid:
    def test_cells(self, capsys):
        code, out, _ = run(capsys, "grid", "--n", "50", "--k", "10..17", "--r", "2..9")
        assert code == 0
        assert "16,8,N" in out.splitlines() and "10,9,Y" in out.splitlines()
        assert len(out.splitlines()) == 65

    def test_oos(self, capsys):
        code, out, _ = run(capsys, "grid", "--n", "16", "--k", "6", "--r", "4")
        assert code == 0 and "6,4,OOS" in out


class TestConstruct:
    def test_example_verify(self, capsys):
        code, out, _ = run(capsys, "construct", "--n", "8", "--k", "4", "--r", "2", "--verify")
        data = json.loads(out)
        assert code == 0
        assert data["verification"] == {"eta_tilde": 2, "d_expected": 3, "d_oracle": 3, "match": True}
        assert [w["element"] for w in data["omega"]] == ["05", "02", "07", "08", "0d", "10", "20", "30"]

    def test_sweep_member(self, capsys):
        code, out, _ = run(capsys, "construct", "--n", "13", "--k", "7", "--r", "3", "--verify", "--format", "text")
        assert code == 0 and "match=true" in out

    def test_small(self, capsys):
        code, out, _ = run(capsys, "construct", "--n", "7", "--k", "3", "--r", "2")
        assert code == 0 and json.loads(out)["params"]["n"] == 7

    def test_modulus_override(self, capsys):
        code, out, _ = run(capsys, "construct", "--n", "8", "--k", "4", "--r", "2", "--modulus", "43")
        assert code == 0 and json.loads(out)["modulus"] == "43"
        code, _, _ = run(capsys, "construct", "--n", "8", "--k", "4", "--r", "2", "--modulus", "41")
        assert code == 2  # x^6 + 1 is reducible

    def test_exit_codes(self, capsys):
        assert run(capsys, "construct", "--n", "16", "--k", "6", "--r", "4")[0] == 4
        assert run(capsys, "construct", "--n", "20", "--k", "10", "--r", "3", "--verify")[0] == 3
        assert run(capsys, "construct", "--n", "8", "--k", "7", "--r", "2")[0] == 2


class TestEncodeRepair:
    def test_encode_identity(self, capsys):
        code, out, _ = run(capsys, "encode", "--n", "8", "--k", "4", "--r", "2", "--message", "1,0,0,0", "--format", "json")
        assert code == 0
        assert [c["value"] for c in json.loads(out)["codeword"]] == ["05", "02", "07", "08", "0d", "10", "20", "30"]

    def test_encode_seeded_is_deterministic(self, capsys):
        a = run(capsys, "encode", "--n", "10", "--k", "5", "--r", "3", "--seed", "7")[1]
        b = run(capsys, "encode", "--n", "10", "--k", "5", "--r", "3", "--seed", "7")[1]
        assert a == b

    def test_bad_message(self, capsys):
        assert run(capsys, "encode", "--n", "8", "--k", "4", "--r", "2", "--message", "1,2")[0] == 2

    def test_repair_demo(self, capsys):
        code, out, _ = run(capsys, "repair-demo", "--n", "13", "--k", "7", "--r", "3", "--format", "json")
        rows = json.loads(out)
        assert code == 0 and len(rows) == 13 and all(row["status"] == "ok" for row in rows)


class TestFixtures:
    def test_default(self, capsys):
        code, out, _ = run(capsys, "verify-fixtures")
        assert code == 0
        assert "PASS  c1 d = 4" in out and "PASS  example4 omega bit-exact" in out

    def test_only(self, capsys):
        code, out, _ = run(capsys, "verify-fixtures", "--only", "psi13")
        assert code == 0 and out.count("\n") == 1 and "(4, 7, 10, 13)" in out
        code, out, _ = run(capsys, "verify-fixtures", "--only", "c2")
        assert "INFO" in out and "(4, 7, 8)" in out
