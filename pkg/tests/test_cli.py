import json
import subprocess
import sys

import pytest

from involute import cli, gallery, tabfile
from involute.report import AnalysisReport
from conftest import DATA, GOLDEN

NAMES = list(gallery.GALLERY)


def run(capsys, *argv):
    code = cli.main(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


@pytest.mark.parametrize("name", NAMES)
def test_analyze_matches_golden(capsys, name):
    code, out, _ = run(capsys, "analyze", str(DATA / f"{name}.tab"))
    assert code == 0
    assert out == (GOLDEN / f"analyze_{name}.txt").read_text()


def test_analyze_headline_facts(capsys):
    _, out, _ = run(capsys, "analyze", str(DATA / "hankel.tab"))
    assert "seed: 0" in out and "characters: (3, 2, 0)" in out
    assert "involutive: yes" in out and "dim = 1, degree = 2" in out
    _, out, _ = run(capsys, "analyze", str(DATA / "onedim.tab"))
    assert "dim = 1, degree = 1" in out
    for tau in range(5):
        assert f"[3 : {tau} : {15 + 9 * tau}]" in out


def test_analyze_phi_flag_and_seed(capsys):
    code, out, _ = run(capsys, "analyze", str(DATA / "onedim.tab"), "--phi", "3,7", "--seed", "4")
    assert code == 0 and "seed: 4" in out and "[3 : 7 : 78]" in out


def test_analyze_out_file(capsys, tmp_path):
    target = tmp_path / "r.txt"
    code, out, _ = run(capsys, "analyze", str(DATA / "wave.tab"), "--out", str(target))
    assert code == 0 and out == ""
    assert target.read_text() == (GOLDEN / "analyze_wave.txt").read_text()


def test_examples_listing(capsys):
    code, out, _ = run(capsys, "examples")
    assert code == 0 and out.split() == NAMES and len(NAMES) == 8


def test_examples_materialize_wave(capsys, tmp_path):
    target = tmp_path / "w.tab"
    assert run(capsys, "examples", "wave", "--out", str(target))[0] == 0
    _, out, _ = run(capsys, "analyze", str(target))
    assert out == (GOLDEN / "analyze_wave.txt").read_text()


def test_examples_default_target(capsys, tmp_path, monkeypatch):
    monkeypatch.chdir(tmp_path)
    assert run(capsys, "examples", "zerodim-d")[0] == 0
    doc = json.loads((tmp_path / "zerodim-d.tab").read_text())
    assert doc["parameters"] == {"c": ["1", "1", "1", "3"], "d": ["2", "2", "2", "1/2"]}
    t, extras = tabfile.load(tmp_path / "zerodim-d.tab")
    assert t.r == 4 and t.n == 3 and t.s == 4


def test_moduli_golden(capsys):
    code, out, _ = run(capsys, "moduli", "-r", "3", "-n", "3", "--chars", "3,2,0", "--format", "macaulay2")
    assert code == 0 and out == (GOLDEN / "moduli_3_3_320.m2").read_text()
    code, out, _ = run(capsys, "moduli", "-r", "2", "-n", "3", "--chars", "2,1,0", "--format", "singular")
    assert code == 0 and out == (GOLDEN / "moduli_2_3_210.sing").read_text()
    assert "x6" in out and "x7" not in out


def test_moduli_full_characters(capsys):
    code, out, _ = run(capsys, "moduli", "-r", "2", "-n", "2", "--chars", "2,2", "--format", "sage-text")
    assert code == 0 and "# 0 generators" in out and "R.ideal([R(0)])" in out


@pytest.mark.parametrize("case", ["translations", "wave_cone", "sheared", "twisted"])
def test_eikonal_goldens(capsys, case):
    code, out, _ = run(capsys, "eikonal", str(DATA / f"eik_{case}.tab"))
    assert code == 0 and out == (GOLDEN / f"eikonal_{case}.txt").read_text()


def test_eikonal_verdicts(capsys):
    verdicts = {c: (GOLDEN / f"eikonal_{c}.txt").read_text().splitlines()[-1] for c in ["translations", "wave_cone", "sheared", "twisted"]}
    assert verdicts == {
        "translations": "verdict: closed",
        "wave_cone": "verdict: closed",
        "sheared": "verdict: closed",
        "twisted": "verdict: not closed at this bound",
    }


@pytest.mark.parametrize("argv", [
    ["analyze", "missing.tab"],
    ["moduli", "-r", "3", "-n", "3", "--chars", "2,3,0"],
    ["moduli", "-r", "3", "-n", "3", "--chars", "a,b"],
    ["examples", "nonesuch"],
    ["frobnicate"],
])
def test_exit_code_two(capsys, argv):
    assert run(capsys, *argv)[0] == 2


@pytest.mark.parametrize("doc", [
    "not json",
    '{"n": 2, "r": 1}',
    '{"n": 2, "r": 1, "basis": [[[1, 0], [0, 1]]]}',
    '{"n": 2, "r": 1, "basis": [[["1/0", 1]]]}',
    '{"n": 2, "r": 1, "basis": [[[1, 0]], [[2, 0]]]}',
    '{"n": -1, "r": 1, "basis": []}',
    '{"n": 2, "r": 1, "relations": [[1]]}',
])
def test_malformed_tableau_files(capsys, tmp_path, doc):
    p = tmp_path / "bad.tab"
    p.write_text(doc)
    code, _, err = run(capsys, "analyze", str(p))
    assert code == 2 and err.startswith("error:")


def test_malformed_eikonal_files(capsys, tmp_path):
    p = tmp_path / "bad.tab"
    p.write_text('{"n": 3, "phase_generators": ["p1 + x1"]}')
    assert run(capsys, "eikonal", str(p))[0] == 2
    p.write_text('{"phase_generators": ["p1"]}')
    assert run(capsys, "eikonal", str(p))[0] == 2


def test_exit_code_three_on_inconsistency(capsys, monkeypatch):
    def broken(*args, **kwargs):
        rep = AnalysisReport()
        rep.add("partial")
        rep.problems.append("dimension mismatch")
        return rep

    monkeypatch.setattr(cli, "analyze", broken)
    code, out, err = run(capsys, "analyze", str(DATA / "wave.tab"))
    assert code == 3 and "dimension mismatch" in err


def test_relations_input(capsys, tmp_path):
    t = gallery.wave()
    p = tmp_path / "rel.tab"
    p.write_text(json.dumps({"name": "wave", "n": 3, "r": 3, "relations": [[str(x) for x in row] for row in t.relations().tolist()]}))
    code, out, _ = run(capsys, "analyze", str(p))
    assert code == 0 and "involutive: yes" in out


@pytest.mark.parametrize("name", NAMES)
def test_tabfile_round_trip(name):
    t = gallery.get(name)
    again, extras = tabfile.parse_document(json.loads(tabfile.dumps(t, gallery.extras(name))))
    assert again == t and extras["name"] == name


def test_module_entry_point():
    proc = subprocess.run([sys.executable, "-m", "involute", "examples"], capture_output=True, text=True)
    assert proc.returncode == 0 and proc.stdout.split() == NAMES
