import csv
import io
import json
from fractions import Fraction

import numpy as np

from spinorbasis import exact as ex
from spinorbasis.angular import SpinLabels
from spinorbasis.radial import RadialFamily
from spinorbasis.spinor import assemble_psi, eval_spinor, parse_cell, spinor_table
from spinorbasis.tables import COUPLING_COLUMNS, coupling_labels, coupling_row, load_reference


def test_spinor_csv_matches_table_one(run_cli):
    code, out, _ = run_cli("tables", "--kind", "spinor", "--s", "1/2", "--n-max", "4", "--format", "csv")
    assert code == 0
    rows = list(csv.DictReader(io.StringIO(out)))
    assert len(rows) == 60
    ref = load_reference(1)
    for got, want, sp in zip(rows, ref, spinor_table(Fraction(1, 2), 4)):
        assert (got["n"], got["l"], got["j"], got["m"]) == (want["n"], want["l"], want["j"], want["m"])
        assert tuple(parse_cell(got[f"c{i + 1}"]) for i in range(4)) == sp.rows


def test_coupling_json_is_table_four(run_cli):
    code, out, _ = run_cli("tables", "--kind", "coupling", "--s", "3/2", "--format", "json")
    assert code == 0
    doc = json.loads(out)
    assert len(doc["rows"]) == 120
    labs = coupling_labels("3/2")
    for row, (lam, lab) in zip(doc["rows"], labs):
        vals = coupling_row(lab, lam)
        for col, v in zip(COUPLING_COLUMNS, vals):
            assert ex.parse(row["values"][col]["exact"]) == v


def test_generation_beyond_reference(run_cli):
    code, out, _ = run_cli("tables", "--kind", "spinor", "--s", "5/2", "--n-max", "2")
    assert code == 0
    assert out.splitlines()[0].split()[-1] == "c12"
    # j >= s: n=1 gives j=5/2; n=2 gives j=5/2 (l=0) and j=5/2, 7/2 (l=1)
    assert len(out.splitlines()) == 1 + 6 + 6 + 14


def test_usage_errors(run_cli):
    assert run_cli("tables", "--s", "0.3")[0] == 2
    assert run_cli("tables", "--kind", "coupling", "--s", "0")[0] == 2
    assert run_cli("tables", "--n-max", "0")[0] == 2
    assert run_cli("frobnicate")[0] == 2


def test_output_is_deterministic_and_atomic(run_cli, tmp_path):
    a, b = tmp_path / "a.csv", tmp_path / "b.csv"
    assert run_cli("tables", "--s", "3/2", "--format", "csv", "--output", str(a))[0] == 0
    assert run_cli("tables", "--s", "3/2", "--format", "csv", "--output", str(b))[0] == 0
    assert a.read_bytes() == b.read_bytes()
    assert sorted(p.name for p in tmp_path.iterdir()) == ["a.csv", "b.csv"]


def test_env_output_dir(run_cli, tmp_path, monkeypatch):
    monkeypatch.setenv("SPINORBASIS_OUTPUT_DIR", str(tmp_path / "out"))
    code, out, _ = run_cli("tables", "--s", "1/2", "--n-max", "1", "--format", "json")
    assert code == 0 and out == ""
    files = list((tmp_path / "out").iterdir())
    assert [f.name for f in files] == ["spinor_psi_s1_2_n1.json"]
    assert json.loads(files[0].read_text())["n_max"] == 1


def test_verify_orthonormality(run_cli):
    code, out, _ = run_cli("verify", "--suite", "orthonormality", "--s", "1/2", "--alpha", "1")
    assert code == 0, out
    assert "FAIL" not in out


def test_verify_tables(run_cli):
    code, out, _ = run_cli("verify", "--suite", "tables")
    assert code == 1
    assert "status=mismatch" in out and "status=match" in out
    code, out, _ = run_cli("verify", "--suite", "tables", "--allowlist", "builtin")
    assert code == 0
    assert "mismatch (documented)" in out
    assert run_cli("verify", "--suite", "tables", "--allowlist", "/nonexistent")[0] == 2


def test_verify_gradients(run_cli):
    code, out, _ = run_cli("verify", "--suite", "gradients")
    assert code == 0
    assert "(informational)" in out


def test_eval_empty_file(run_cli, tmp_path):
    pts = tmp_path / "p.txt"
    pts.write_text("")
    code, out, _ = run_cli("eval", str(pts), "--n", "2", "--l", "1", "--j", "3/2", "--m", "1/2")
    assert code == 0 and out == ""


def test_eval_origin_and_spot_value(run_cli):
    src = "0 0 0\n1.0 1.0471975511965976 0.7853981633974483\n"
    code, out, _ = run_cli("eval", "-", "--s", "3/2", "--n", "3", "--l", "1", "--j", "3/2",
                           "--m", "1/2", "--alpha", "0", "--zeta", "1.3", stdin=src)
    assert code == 0
    lines = out.splitlines()
    assert len(lines) == 2
    origin = [complex(*map(float, p.split(","))) for p in lines[0].split()]
    assert len(origin) == 8 and all(z == 0 for z in origin[:4])
    spot = np.array([complex(*map(float, p.split(","))) for p in lines[1].split()])
    sp = assemble_psi(SpinLabels(Fraction(3, 2), 1, Fraction(3, 2), Fraction(1, 2)), 3)
    want = eval_spinor(sp, RadialFamily("psi_alpha", 0, 1.3), 1.0, np.pi / 3, np.pi / 4)
    assert np.array_equal(spot, want)


def test_eval_malformed_line_writes_nothing(run_cli, tmp_path):
    pts = tmp_path / "p.txt"
    pts.write_text("1 0.5 0.5\n1 0.5 x\n")
    out_file = tmp_path / "vals.txt"
    code, out, err = run_cli("eval", str(pts), "--n", "1", "--l", "0", "--j", "1/2", "--m", "1/2",
                             "--output", str(out_file))
    assert code == 2
    assert "line 2" in err
    assert not out_file.exists()
    assert list(tmp_path.iterdir()) == [pts]


def test_eval_bad_labels(run_cli):
    code, _, err = run_cli("eval", "-", "--n", "1", "--l", "1", "--j", "3/2", "--m", "1/2", stdin="")
    assert code == 2 and "n" in err
