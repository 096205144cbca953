from __future__ import annotations

import json
import subprocess
import sys
from pathlib import Path

import pytest

from logforms import cli
from logforms.cli import main
from logforms.logarithmic import IdentityReport, LogInstance


def run(argv, capsys):
    code = main(argv)
    out = capsys.readouterr()
    return code, out.out, out.err


def test_gen_is_deterministic(tmp_path, capsys):
    a, b = tmp_path / "a.json", tmp_path / "b.json"
    assert run(["gen", "--n", "3", "--degrees", "2,1", "--seed", "5", "--out", str(a)], capsys)[0] == 0
    assert run(["gen", "--n", "3", "--degrees", "2,1", "--seed", "5", "--out", str(b)], capsys)[0] == 0
    assert a.read_bytes() == b.read_bytes()
    inst = LogInstance.from_json(json.loads(a.read_text()))
    assert inst.seed == 5 and inst.is_projective and not inst.degenerate


def test_gen_normalizes_degree_order(capsys):
    code, out, _ = run(["gen", "--n", "2", "--degrees", "1,2"], capsys)
    assert code == 0 and json.loads(out)["degrees"] == [2, 1]


def test_gen_then_check(tmp_path, capsys):
    path = tmp_path / "inst.json"
    run(["gen", "--n", "2", "--degrees", "1,1,1", "--seed", "1", "--out", str(path)], capsys)
    code, out, err = run(["check", str(path)], capsys)
    assert code == 0
    rep = json.loads(out)
    assert rep["passed"] and all(rep["checks"].values())
    assert "PASS" in err


def test_check_inconsistent_degree_exit_2(tmp_path, capsys):
    path = tmp_path / "inst.json"
    run(["gen", "--n", "2", "--degrees", "1,1", "--seed", "1", "--out", str(path)], capsys)
    obj = json.loads(path.read_text())
    obj["polys"][0]["terms"][0]["exps"] = [2, 0, 0]  # degree 2 term in a linear form
    path.write_text(json.dumps(obj))
    code, _, err = run(["check", str(path)], capsys)
    assert code == 2 and "error" in err


def test_check_failure_exit_1(tmp_path, capsys, monkeypatch):
    # real instances satisfy every identity, so stand in a failing report
    path = tmp_path / "inst.json"
    run(["gen", "--n", "2", "--degrees", "1,1", "--seed", "1", "--out", str(path)], capsys)
    monkeypatch.setattr(cli, "identity_suite", lambda inst: IdentityReport({"integrable": False}))
    code, out, err = run(["check", str(path)], capsys)
    assert code == 1 and not json.loads(out)["passed"] and "FAIL integrable" in err


def test_malformed_inputs_exit_2(tmp_path, capsys):
    bad = tmp_path / "bad.json"
    bad.write_text("{not json")
    code, _, err = run(["check", str(bad)], capsys)
    assert code == 2 and "cannot read instance" in err
    assert run(["check", str(tmp_path / "missing.json")], capsys)[0] == 2
    assert run(["gen", "--n", "2", "--degrees", "1,x"], capsys)[0] == 2
    assert run(["gen", "--n", "2", "--degrees", "1"], capsys)[0] == 2
    assert run(["gen", "--n", "2", "--degrees", "1,1", "--field", "prime:10"], capsys)[0] == 2
    assert run(["gen", "--degrees", "1,1"], capsys)[0] == 2
    assert run(["hilbert", "--n", "3", "--degrees", "1,1,1", "--k", "a..b"], capsys)[0] == 2


def test_certify_all_surjective(tmp_path, capsys):
    out = tmp_path / "rep.json"
    code, stdout, _ = run(["certify", "--n", "3", "--degrees", "1,1", "--out", str(out)], capsys)
    assert code == 0
    rep = json.loads(out.read_text())
    assert rep["seeds"] == [0, 1, 2, 3, 4] and rep["unanimous"]
    assert [r["seed"] for r in rep["reports"]] == [0, 1, 2, 3, 4]
    keys = {"dim_V", "dim_ambient", "dim_T", "rank_dmu", "ker_dmu_dim", "balanced", "r_d", "surjective"}
    assert keys <= set(rep["reports"][0])
    assert "verdict: surjective at every seed" in stdout


def test_certify_parallel_matches_serial(tmp_path, capsys):
    a, b = tmp_path / "a.json", tmp_path / "b.json"
    run(["certify", "--n", "3", "--degrees", "1,1,1", "--seeds", "0,1", "--out", str(a)], capsys)
    run(["certify", "--n", "3", "--degrees", "1,1,1", "--seeds", "0,1", "--jobs", "2", "--out", str(b)], capsys)
    assert a.read_bytes() == b.read_bytes()


def test_certify_instance_file(tmp_path, capsys):
    path = tmp_path / "inst.json"
    run(["gen", "--n", "3", "--degrees", "1,1", "--seed", "42", "--out", str(path)], capsys)
    code, out, _ = run(["certify", "--instance", str(path)], capsys)
    assert code == 0 and json.loads(out)["reports"][0]["seed"] == 42


def test_certify_base_locus_instance_fails(tmp_path, capsys):
    path = tmp_path / "inst.json"
    x0 = {"degree": 1, "terms": [{"exps": [1, 0, 0, 0], "coeff": "1"}]}
    path.write_text(json.dumps({
        "n": 3, "field": {"prime": 2147483647}, "degrees": [1, 1],
        "lambda": ["1", "-1"], "polys": [x0, x0], "seed": 0,
    }))
    code, out, _ = run(["certify", "--instance", str(path)], capsys)
    assert code == 1 and "error" in json.loads(out)["reports"][0]


def test_baselocus(capsys):
    code, out, _ = run(["baselocus", "--degrees", "1,1"], capsys)
    assert code == 0
    rep = json.loads(out)
    assert len(rep["factorizations"]) == 2
    assert rep["maximal"] == [{"m_prime": 1, "e": [[1], [1]], "d_prime": [1], "lambda_dim": 1, "is_maximal": True}]


def test_hilbert(capsys):
    code, out, _ = run(["hilbert", "--n", "3", "--degrees", "1,1,1", "--k", "2..6", "--seed", "7"], capsys)
    assert code == 0
    rows = json.loads(out)["tables"][0]["rows"]
    assert [(r["k"], r["direct"], r["predicted"]) for r in rows] == [
        (2, 3, 3), (3, 10, 10), (4, 22, 22), (5, 40, 40), (6, 65, 65)]


@pytest.mark.parametrize("argv", [
    ["gen", "--n", "3", "--degrees", "2,1,1", "--seed", "3"],
    ["certify", "--n", "3", "--degrees", "2,1", "--seeds", "0,1"],
    ["baselocus", "--degrees", "2,2"],
    ["hilbert", "--n", "3", "--degrees", "2,1", "--k", "1..4", "--seeds", "0,1"],
])
def test_reports_byte_identical_across_processes(argv):
    cmd = [sys.executable, "-m", "logforms", *argv]
    a = subprocess.run(cmd, capture_output=True, check=True).stdout
    b = subprocess.run(cmd, capture_output=True, check=True).stdout
    assert a == b and a.endswith(b"\n")


GOLDEN = Path(__file__).parent / "golden"


@pytest.mark.parametrize("name,argv", [
    ("gen_n3_d11_seed42.json", ["gen", "--n", "3", "--degrees", "1,1", "--seed", "42"]),
    ("baselocus_d111.json", ["baselocus", "--degrees", "1,1,1"]),
    ("certify_n3_d11_seed42.json", ["certify", "--n", "3", "--degrees", "1,1", "--seed", "42"]),
    ("hilbert_n3_d111_seed7.json", ["hilbert", "--n", "3", "--degrees", "1,1,1", "--k", "2..6", "--seed", "7"]),
])
def test_golden_files(tmp_path, capsys, name, argv):
    out = tmp_path / name
    assert main([*argv, "--out", str(out)]) == 0
    assert out.read_bytes() == (GOLDEN / name).read_bytes()


def test_seed_range(capsys):
    code, out, _ = run(["certify", "--n", "3", "--degrees", "1,1", "--seeds", "2..4"], capsys)
    assert code == 0 and json.loads(out)["seeds"] == [2, 3, 4]
