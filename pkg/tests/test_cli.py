import csv
import json
import math

import pytest

from lineartwist.cli import fmt, main, parse_alpha
from lineartwist.specfile import dumps

from catalog import CATALOG

ZERO_HEADER = ["kind", "center_re", "center_im", "zero_re", "zero_im", "radius", "winding", "residual"]


@pytest.fixture
def zeta_spec(tmp_path):
    p = tmp_path / "zeta.spec"
    p.write_text("builtin: zeta\n")
    return str(p)


def _rows(path):
    with open(path, newline="") as fh:
        return list(csv.reader(fh))


class TestFormatting:
    def test_seventeen_digits(self):
        assert fmt(0.1) == "0.10000000000000001"
        assert fmt(3) == "3" and fmt(True) == "1"
        assert float(fmt(1 / 3)) == 1 / 3

    def test_alpha_forms(self):
        assert parse_alpha("2/5") == 0.4
        assert parse_alpha("1/sqrt(2)") == 1 / math.sqrt(2)
        assert parse_alpha("0.25") == 0.25


class TestCommands:
    def test_characters_list(self, tmp_path):
        out = tmp_path / "chars.csv"
        assert main(["characters", "list", "--modulus", "4", "--out", str(out)]) == 0
        rows = _rows(out)
        assert rows[0] == ["modulus", "label", "order", "parity", "conductor", "primitive", "gauss_re", "gauss_im"]
        assert rows[2][:6] == ["4", "3", "2", "-1", "4", "1"]

    def test_kernels_probe(self, capsys):
        assert main(["kernels", "probe", "--s", "2", "--x", "0", "--y", "0"]) == 0
        assert capsys.readouterr().out.startswith("value 1.64493406684822")

    def test_check_fe_csv(self, tmp_path, zeta_spec):
        out = tmp_path / "fe.csv"
        code = main(["twist", "check-fe", "--spec", zeta_spec, "--alpha", "1/3",
                     "--grid", "1.2:3:3,-20:20:4", "--out", str(out)])
        assert code == 0
        rows = _rows(out)
        assert rows[0] == ["sigma", "t", "lhs_re", "lhs_im", "rhs_re", "rhs_im", "residual", "bound"]
        assert len(rows) == 13
        assert all(float(r[6]) <= 1e-8 for r in rows[1:])

    def test_determinism(self, tmp_path, zeta_spec):
        outs = []
        for name in ("a.csv", "b.csv"):
            out = tmp_path / name
            main(["twist", "check-fe", "--spec", zeta_spec, "--alpha", "0.4", "--grid", "1.5:2:2,0:5:2",
                  "--out", str(out)])
            outs.append(out.read_bytes())
        assert outs[0] == outs[1]

    def test_trivial_zeros_csv(self, tmp_path, zeta_spec):
        out = tmp_path / "z.csv"
        assert main(["zeros", "trivial", "--spec", zeta_spec, "--sigma-min", "-10", "--out", str(out)]) == 0
        rows = _rows(out)
        assert rows[0] == ZERO_HEADER
        assert [round(float(r[3])) for r in rows[1:]] == [-2, -4, -6, -8, -10]
        assert all(r[0] == "trivial" and r[6] == "1" for r in rows[1:])

    def test_zero_count(self, capsys, zeta_spec):
        assert main(["zeros", "count", "--spec", zeta_spec, "--T", "30"]) == 0
        out = capsys.readouterr().out.splitlines()
        assert out[0] == "N 6" and out[1].startswith("prediction ")

    def test_scan_prints_assumption(self, capsys, tmp_path, zeta_spec):
        out = tmp_path / "scan.csv"
        assert main(["zeros", "scan", "--spec", zeta_spec, "--rect", "0:1:10:15", "--out", str(out)]) == 0
        assert "not tested" in capsys.readouterr().err
        rows = _rows(out)
        assert len(rows) == 2 and rows[1][0] == "critical-strip"

    def test_twist_eval(self, capsys, zeta_spec):
        assert main(["twist", "eval", "--spec", zeta_spec, "--s", "2,0"]) == 0
        assert "value 1.6449340668482" in capsys.readouterr().out


class TestSuite:
    @pytest.mark.parametrize("alpha", ["1", "1/2"])
    def test_zeta_passes(self, tmp_path, zeta_spec, alpha):
        rep = tmp_path / "r.json"
        assert main(["suite", "--spec", zeta_spec, "--alpha", alpha, "--report", str(rep)]) == 0
        data = json.loads(rep.read_text())
        assert data["schema"] == 1 and data["passed"] is True
        assert {c["name"] for c in data["checks"]} >= {"fe-residual", "trivial-zeros"}
        assert all(c["passed"] for c in data["checks"])

    def test_catalog_spec_passes(self, tmp_path):
        p = tmp_path / "mod5.spec"
        p.write_text(dumps(CATALOG["mod5"]))
        assert main(["suite", "--spec", str(p), "--alpha", "2/5"]) == 0

    def test_broken_symmetry_fails(self, tmp_path, capsys):
        p = tmp_path / "bad.spec"
        p.write_text("q: 5\neta: -1\nomega_star: [1, 0]\ncomponents:\n"
                     "  - {modulus: 5, label: 1, coefficients: {1: [1, 0], 5: [0, 0]}}\n"
                     "  - {modulus: 5, label: 4, coefficients: {1: [0.5, 0.5]}}\n")
        rep = tmp_path / "r.json"
        assert main(["suite", "--spec", str(p), "--report", str(rep)]) != 0
        data = json.loads(rep.read_text())
        assert data["schema"] == 1 and data["passed"] is False
        assert "SymmetryViolationError" in data["checks"][0]["detail"]
        assert "overall: FAIL" in capsys.readouterr().err

    def test_parse_error_reported(self, tmp_path):
        p = tmp_path / "bad.spec"
        p.write_text("q: 1\neta: -1\ncomponents: [{modulus: 1, label: 1, coefficients: {1: nope}}]\n")
        rep = tmp_path / "r.json"
        assert main(["suite", "--spec", str(p), "--report", str(rep)]) == 1
        detail = json.loads(rep.read_text())["checks"][0]["detail"]
        assert "line 3" in detail and "component (1, 1)" in detail
