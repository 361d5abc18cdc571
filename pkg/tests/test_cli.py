import json
import subprocess
import sys

import pytest

from spsforge.cli import main
from spsforge.io import load, save
from spsforge.planar import grid

from conftest import l1


@pytest.fixture
def square(tmp_path):
    path = tmp_path / "grid11.json"
    assert main(["grid", "--edges", "1", "1", "--out", str(path)]) == 0
    return path


def test_grid_and_fork(square, tmp_path, capsys):
    out = tmp_path / "l1.json"
    assert main(["fork", "--in", str(square), "--cell", "0,a,b,1", "--out", str(out)]) == 0
    D = load(out)
    assert len(D) == 7 and len(D.faces) == 3
    assert "tight cell; 4 -> 7 elements" in capsys.readouterr().err


def test_fork_on_non_cell_fails(square, capsys):
    code = main(["fork", "--in", str(square), "--cell", "0,b,a,1"])
    assert code == 3
    assert "CellNotFound" in capsys.readouterr().err
    assert main(["fork", "--in", str(square), "--cell", "0,a,b"]) == 2


def test_check_l1(tmp_path, capsys):
    path = tmp_path / "l1.json"
    save(l1(), path)
    assert main(["check", "--in", str(path), "--props", "cc1,cc2"]) == 0
    assert capsys.readouterr().out.splitlines() == ["cc1: pass", "cc2: pass"]
    assert main(["check", "--in", str(path)]) == 0
    assert main(["check", "--in", str(path), "--props", "distributive"]) == 1
    assert main(["check", "--in", str(path), "--props", "shiny"]) == 2


def test_congruences_output(tmp_path, capsys):
    path = tmp_path / "l1.json"
    save(l1(), path)
    assert main(["congruences", "--in", str(path), "--ji-order", "--colors"]) == 0
    out = capsys.readouterr().out
    assert "join-irreducible congruences: 3   |Con L| = 5" in out
    assert "covers: γ < α, γ < β" in out
    assert "[wide]" in out and "[tight]" in out


def test_export_dot(tmp_path, capsys):
    path = tmp_path / "l1.json"
    save(l1(), path)
    dot = tmp_path / "l1.dot"
    assert main(["export-dot", "--in", str(path), "--colors", "--out", str(dot)]) == 0
    text = dot.read_text()
    assert text.startswith('digraph "l1"') and text.count("->") == 9


def test_enumerate_emits_files(tmp_path, capsys):
    emit = tmp_path / "out"
    assert main(["enumerate", "--base", "grid:1x1", "--max-forks", "2",
                 "--emit", str(emit)]) == 0
    out = capsys.readouterr().out
    assert "emitted 4," in out and "count-law violations 0" in out
    assert len(list(emit.glob("lattice_*.json"))) == 4
    assert main(["enumerate", "--base", "square", "--max-forks", "1"]) == 2


def test_search_report(tmp_path, capsys):
    report = tmp_path / "r.json"
    args = ["search", "--target", "d8", "--max-forks", "2", "--grid-max", "2", "2",
            "--max-elements", "30", "--report", str(report), "--no-timing"]
    assert main(args) == 0
    doc = json.loads(report.read_text())
    assert doc["exhausted"] is True and doc["witness"] is None
    assert doc["verdict"] == "exhausted within bounds"
    first = report.read_bytes()
    assert main(args + ["--threads", "2"]) == 0
    assert report.read_bytes() == first


def test_search_custom_target(tmp_path, capsys):
    target = tmp_path / "vee.json"
    target.write_text(json.dumps({"covers": [["c", "a"], ["c", "b"]]}))
    report = tmp_path / "r.json"
    assert main(["search", "--target", str(target), "--max-forks", "1",
                 "--grid-max", "1", "1", "--report", str(report)]) == 0
    doc = json.loads(report.read_text())
    assert doc["verdict"] == "witness found" and doc["witness"]["size"] == 7
    assert doc["target"]["name"] == "vee"


def test_usage_and_validation_codes(tmp_path, capsys):
    assert main([]) == 2
    assert main(["grid", "--edges", "0", "1"]) == 2
    bad = tmp_path / "bad.json"
    bad.write_text('{"covers": [["0", "a"], ["0", "b"], ["a", "1"]]}')
    assert main(["check", "--in", str(bad)]) == 3
    err = capsys.readouterr().err
    assert "ValidationError" in err and "b and 1 are both maximal" in err
    assert main(["check", "--in", str(tmp_path / "missing.json")]) == 3


def test_module_entry_point(tmp_path):
    out = tmp_path / "g.json"
    res = subprocess.run([sys.executable, "-m", "spsforge", "grid", "--edges", "2", "1",
                          "--out", str(out)], capture_output=True, text=True)
    assert res.returncode == 0, res.stderr
    assert len(load(out)) == 6
    assert load(out).metadata["base"] == grid(2, 1).metadata["base"]
