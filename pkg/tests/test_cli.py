import json
import subprocess
import sys

import pytest

from sesquiads import cli, deffile

from conftest import CORPUS

CORPUS_DIR = CORPUS[0].parent


def write(tmp_path, text, name="t.ses"):
    p = tmp_path / name
    p.write_text(text)
    return str(p)


def run_json(capsys, *argv):
    code = cli.main(["run", *argv, "--json"])
    return code, json.loads(capsys.readouterr().out)


# -- definition files -------------------------------------------------------------

@pytest.mark.parametrize("path", CORPUS, ids=lambda p: p.name)
def test_corpus_round_trips(path):
    df = deffile.parse(path)
    again = deffile.parse_text(deffile.serialize(df))
    assert again == df
    assert deffile.serialize(again) == deffile.serialize(df)


@pytest.mark.parametrize("text, line, column, kind", [
    ("[sesquiad X]\nelements: 0 1 a\nrow: 0 0 0\nrow: 0 1 a\nrow: 0 1 a\n", 4, 10,
     deffile.InvariantViolation),
    ("[sesquiad A]\nelements: 0 1\ncolour: red\n", 3, 1, deffile.DefinitionSyntaxError),
    ("[gadget A]\n", 1, 2, deffile.DefinitionSyntaxError),
    ("elements: 0 1\n", 1, 1, deffile.DefinitionSyntaxError),
])
def test_errors_carry_a_location(text, line, column, kind):
    with pytest.raises(deffile.DefinitionError) as info:
        deffile.parse_text(text)
    assert isinstance(info.value, kind)
    assert info.value.line == line
    if column is not None:
        assert info.value.column == column


def test_duplicate_names_are_rejected():
    with pytest.raises(deffile.InvariantViolation):
        deffile.parse_text("[sesquiad A]\nelements: 0 1\nrow: 0 0\nrow: 0 1\n"
                           "[space A]\npreset: point\n")


# -- command line ---------------------------------------------------------------------

def test_check_reports_ok(capsys):
    assert cli.main(["check", str(CORPUS_DIR / "f1.ses")]) == 0
    assert "ok" in capsys.readouterr().out


def test_exit_codes(tmp_path, capsys):
    bad = write(tmp_path, "[sesquiad X]\nelements: 0 1 a\nrow: 0 0 0\nrow: 0 1 a\nrow: 0 1 a\n")
    assert cli.main(["check", bad]) == 1
    assert "line 4, column 10" in capsys.readouterr().err
    assert cli.main(["check", str(tmp_path / "missing.ses")]) == 2
    assert cli.main(["run", str(CORPUS_DIR / "f1.ses"), "--task", "nope"]) == 2
    with pytest.raises(SystemExit) as info:
        cli.main(["frobnicate"])
    assert info.value.code == 2


F1_TEXT = "[sesquiad A]\nelements: 0 1\nrow: 0 0\nrow: 0 1\n"


@pytest.mark.parametrize("task, kind", [
    ("spec B", deffile.UnknownReference),
    ("closed A -1", deffile.DefinitionSyntaxError),
    ("frobnicate A", deffile.DefinitionSyntaxError),
    ("spec A A", deffile.DefinitionSyntaxError),
])
def test_malformed_tasks_fail_the_check(tmp_path, capsys, task, kind):
    df = deffile.parse_text(F1_TEXT + f"[task t]\nrun: {task}\n")
    with pytest.raises(kind) as info:
        cli.validate_tasks(df)
    assert (info.value.line, info.value.column) == (6, 6)
    path = write(tmp_path, F1_TEXT + f"[task t]\nrun: {task}\n")
    assert cli.main(["check", path]) == 1
    assert "line 6, column 6" in capsys.readouterr().err


def test_a_failing_task_is_reported_and_the_others_still_run(tmp_path, capsys):
    text = ("[sesquiad E]\nelements: 0 1 e\nrow: 0 0 0\nrow: 0 1 e\nrow: 0 e e\n"
            "[task u]\nrun: units E\n[task s]\nrun: spec E\n")
    code, (bad, good) = run_json(capsys, write(tmp_path, text))
    assert code == 1
    assert bad["status"] == "error" and bad["error"].startswith("NotSimple")
    assert good["status"] == "ok" and len(good["result"]["points"]) == 3


def test_spectrum_of_f1_is_one_point(capsys):
    code, (rep,) = run_json(capsys, str(CORPUS_DIR / "f1.ses"), "--task", "spec-f1")
    assert code == 0
    assert len(rep["result"]["points"]) == 1 and rep["result"]["dimension"] == 0
    assert rep["provenance"]["prime_definition"]


def test_pseudocircle_cohomology(capsys):
    _, (rep,) = run_json(capsys, str(CORPUS_DIR / "pseudocircle.ses"),
                         "--task", "cohomology-pseudocircle")
    assert [h["group"] for h in rep["result"]] == ["Z", "Z", "0"]


def test_torsion_module_is_not_flat(capsys):
    _, (rep,) = run_json(capsys, str(CORPUS_DIR / "modules.ses"), "--task", "flat-torsion")
    assert rep["result"]["status"] == "not_flat"


def test_flags_and_environment_set_bounds(capsys, monkeypatch):
    monkeypatch.setenv(cli.ENV_BOUNDS, "sep=5,seed=9")
    _, (rep,) = run_json(capsys, str(CORPUS_DIR / "f1.ses"), "--task", "spec-f1",
                         "--bound-spec", "6")
    assert rep["provenance"]["bounds"] == {**cli.DEFAULT_BOUNDS, "sep": 5, "seed": 9,
                                                "spec": 6}
    monkeypatch.setenv(cli.ENV_BOUNDS, "nonsense")
    assert cli.main(["run", str(CORPUS_DIR / "f1.ses")]) == 2


def test_dot_output(tmp_path, capsys):
    out = tmp_path / "x.dot"
    assert cli.main(["run", str(CORPUS_DIR / "idempotent.ses"), "--task", "dot-e",
                     "--dot", str(out)]) == 0
    text = out.read_text()
    assert text.startswith("digraph") and text.count("->") == 2


def test_runs_are_byte_identical():
    cmd = [sys.executable, "-m", "sesquiads", "run", str(CORPUS_DIR / "modules.ses"), "--json"]
    first = subprocess.run(cmd, capture_output=True, check=True).stdout
    second = subprocess.run(cmd, capture_output=True, check=True).stdout
    assert first == second and first


def test_timing_is_opt_in(capsys):
    _, (rep,) = run_json(capsys, str(CORPUS_DIR / "f1.ses"), "--task", "ring-f1")
    assert "seconds" not in rep
    _, (rep,) = run_json(capsys, str(CORPUS_DIR / "f1.ses"), "--task", "ring-f1", "--timing")
    assert "seconds" in rep
