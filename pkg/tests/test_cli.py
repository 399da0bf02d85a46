import json

import numpy as np
import pytest

from conftest import dual_numbers
from sinfty import zoo
from sinfty.cli import main


def _emit(tmp_path, capsys, *extra):
    assert main(["zoo", "emit", "--family", "restricted-sl2", "--p", "2", *extra]) == 0
    path = tmp_path / "alg.json"
    path.write_text(capsys.readouterr().out)
    return path


def test_zoo_emit_format(tmp_path, capsys):
    data = json.loads(_emit(tmp_path, capsys).read_text())
    assert data["p"] == 2 and len(data["basis"]) == 8
    assert set(data["tri"]) == {"a0", "ge", "le"}
    assert all(len(row) == 4 for row in data["mult"])


def test_axioms_ok(tmp_path, capsys):
    path = _emit(tmp_path, capsys)
    assert main(["axioms", str(path)]) == 0


def test_axioms_associativity(tmp_path, capsys):
    a = zoo.restricted_sl2(2)
    data = a.to_dict()
    g = a.generators
    # perturb one product of two generators
    for row in data["mult"]:
        if row[0] == g[1] and row[1] == g[0]:
            row[3] = (row[3] + 1) % 2
            break
    else:
        data["mult"].append([g[1], g[0], 0, 1])
    data["mult"] = [r for r in data["mult"] if r[3]]
    path = tmp_path / "bad.json"
    path.write_text(json.dumps(data))
    assert main(["axioms", str(path)]) == 2
    assert "associativity" in capsys.readouterr().err


def test_axioms_semisimple(tmp_path, capsys):
    path = tmp_path / "dn.json"
    path.write_text(dual_numbers(3, deg=0).to_json())
    assert main(["axioms", str(path)]) == 3
    assert "reason: semisimple" in capsys.readouterr().err


def test_bad_input(tmp_path, capsys):
    path = tmp_path / "junk.json"
    path.write_text("{not json")
    assert main(["axioms", str(path)]) == 6


def _compute(tmp_path, capsys, engine, name, *extra):
    alg = _emit(tmp_path, capsys)
    out = tmp_path / f"{name}.json"
    csv = tmp_path / f"{name}.csv"
    args = ["compute", "--engine", engine, "--algebra", str(alg), "--x", "k", "--y", "k",
            "--degrees", "-2:2", "--shifts", "-4:4", "--out", str(out), "--csv", str(csv), *extra]
    assert main(args) == 0
    capsys.readouterr()
    return out, csv


def test_compute_and_certify(tmp_path, capsys, monkeypatch):
    monkeypatch.setenv("SINFTY_THREADS", "2")
    s, s_csv = _compute(tmp_path, capsys, "sinf", "s")
    h, _ = _compute(tmp_path, capsys, "hom-through", "h")
    data = json.loads(s.read_text())
    assert data["engine"] == "sinf" and data["X"] == "k"
    assert {"i", "m", "dim", "certified"} <= set(data["entries"][0])
    assert s_csv.read_text().startswith("i,m,dim,certified")
    assert main(["certify", str(s), str(h)]) == 0
    assert main(["certify", str(s_csv), str(h)]) == 0


def test_certify_mismatch(tmp_path, capsys):
    s, _ = _compute(tmp_path, capsys, "sinf", "s")
    data = json.loads(s.read_text())
    e = next(e for e in data["entries"] if e["dim"])
    e["dim"] += 1
    bad = tmp_path / "bad.json"
    bad.write_text(json.dumps(data))
    assert main(["certify", str(s), str(bad)]) == 1
    assert f"i={e['i']} m={e['m']}" in capsys.readouterr().out


def test_certify_disjoint(tmp_path, capsys):
    s, _ = _compute(tmp_path, capsys, "sinf", "s")
    data = json.loads(s.read_text())
    for e in data["entries"]:
        e["m"] += 100
    far = tmp_path / "far.json"
    far.write_text(json.dumps(data))
    assert main(["certify", str(s), str(far)]) == 7


def test_ext_engine(tmp_path, capsys):
    out, _ = _compute(tmp_path, capsys, "ext", "e")
    data = json.loads(out.read_text())
    nz = {(e["i"], e["m"]) for e in data["entries"] if e["dim"]}
    assert nz == {(0, 0), (1, -1), (1, 1), (2, -2), (2, 0), (2, 2)}


def test_bad_threads(tmp_path, capsys, monkeypatch):
    monkeypatch.setenv("SINFTY_THREADS", "many")
    alg = _emit(tmp_path, capsys)
    code = main(["compute", "--engine", "ext", "--algebra", str(alg), "--y", "k", "--x", "k"])
    assert code == 6


def test_oracle_cli(capsys):
    assert main(["oracle", "local-cohomology", "--window", "-6:6"]) == 0
    data = json.loads(capsys.readouterr().out)
    assert data["H"]["1"]["4"] == 4 and data["H"]["1"]["3"] == 0
