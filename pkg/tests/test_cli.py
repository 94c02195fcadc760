import json
import os
import subprocess
import sys

import pytest

from truthpoint.cli import main

from conftest import ROOT, WORKSPACES

KEYS = {"command", "universe", "stages", "classification", "violations"}


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def run_json(capsys, *argv):
    code, out, err = run(capsys, *argv, "--format", "json")
    return code, json.loads(out) if out else None


def defs(name):
    return str(WORKSPACES / name / "defs.txt")


@pytest.fixture
def demo(monkeypatch):
    monkeypatch.chdir(WORKSPACES / "demo")


def verdicts(payload):
    return {row["text"]: row["verdict"] for row in payload["classification"]}


def test_classify_liar(capsys):
    code, out, _ = run(capsys, "classify", "liar", "--defs", defs("liar"))
    assert code == 0 and out.strip() == 'not T("liar"): ungrounded'


def test_classify_quoted_alias_and_explain(capsys):
    code, out, _ = run(capsys, "classify", '"liar"', "--defs", defs("liar"), "--explain")
    assert code == 0
    assert '[r3] not T("liar")  => neither' in out
    assert "[r2]" in out


def test_classify_exists_t_with_one_true_definition(capsys):
    code, payload = run_json(capsys, "classify", "exists x . T(x)", "--defs", defs("mixed"))
    assert code == 0 and payload["query"]["verdict"] == "true"
    assert KEYS <= payload.keys()


def test_classify_forall_t_needs_full_semantics(capsys):
    _, plain = run_json(capsys, "classify", "forall x . T(x)", "--defs", defs("truth_teller"))
    _, full = run_json(capsys, "classify", "forall x . T(x)", "--defs", defs("truth_teller"),
                       "--full-semantics")
    assert plain["query"]["verdict"] == "ungrounded"
    assert full["query"]["verdict"] == "false"


def test_classify_forall_t_false_once_a_negation_is_true(capsys):
    _, payload = run_json(capsys, "classify", "forall x . T(x)", "--defs", defs("mixed"))
    assert payload["query"]["verdict"] == "false"


def test_classify_uses_defs_in_current_directory(capsys, demo):
    code, out, _ = run(capsys, "classify", "says_empty")
    assert code == 0 and out.strip().endswith(": true")


def test_classify_pure_sentence_over_other_rank(capsys):
    code, out, _ = run(capsys, "classify", "n2 in n2", "--rank", "3")
    assert code == 0 and out.strip() == "n2 in n2: false"


def test_explain_at_empty(capsys):
    code, payload = run_json(capsys, "explain", "says_empty", "--defs", defs("demo"),
                             "--at", "empty")
    assert code == 0 and payload["at"] == []
    assert payload["trace"]["rule"] == "r2" and payload["trace"]["sign"] == "neither"


def test_lfp_json_schema(capsys):
    code, payload = run_json(capsys, "lfp", "--defs", defs("mixed"))
    assert code == 0 and KEYS <= payload.keys()
    assert payload["command"] == "lfp"
    assert payload["fixed_point"] == [0, 2, 4, 6, 8]
    assert payload["stages"][0] == {"index": 0, "codes": []}
    assert set(payload["stages"][1]) == {"index", "codes", "added", "removed"}
    assert payload["stages"][-1]["codes"] == payload["fixed_point"]
    assert {row["code"] for row in payload["universe"]} == {
        row["code"] for row in payload["classification"]}
    assert payload["universe"][0]["alias"] == "empty"


def test_lfp_text_report(capsys):
    code, out, _ = run(capsys, "lfp", "--defs", defs("demo"))
    assert code == 0
    assert out.startswith("universe:")
    assert "fixed point: {" in out and "classification:" in out


def test_extend_truth_teller(capsys):
    code, payload = run_json(capsys, "extend", "--seed", "tau", "--defs", defs("truth_teller"))
    assert code == 0 and payload["fixed_point"] == [0]
    assert verdicts(payload)['T("tau")'] == "true"


def test_extend_unsound_seed_exits_one(capsys):
    code, payload = run_json(capsys, "extend", "--seed", "liar", "--defs", defs("liar"))
    assert code == 1 and payload["violations"]


def test_soundify_liar(capsys):
    code, payload = run_json(capsys, "soundify", "--set", "liar", "--defs", defs("liar"))
    assert code == 0 and payload["sound_subset"] == []
    assert [row["codes"] for row in payload["stages"]] == [[0], []]


def test_soundify_text(capsys):
    code, out, _ = run(capsys, "soundify", "--set", "empty", "liar", "--defs", defs("demo"))
    assert code == 0 and "greatest sound subset: {#0}" in out


def test_enumerate_truth_teller(capsys):
    code, payload = run_json(capsys, "enumerate", "--defs", defs("truth_teller"))
    assert code == 0 and len(payload["fixed_points"]) >= 2
    least = payload["fixed_points"][0]
    assert least["least"] and least["codes"] == [] and not least["maximal"]
    assert {fp["definitions"]["tau"] for fp in payload["fixed_points"]} == {
        "ungrounded", "true", "false"}


def test_enumerate_bound_exits_two(capsys):
    code, out, err = run(capsys, "enumerate", "--defs", defs("demo"), "--max-universe", "4")
    assert code == 2 and "error:" in err


def test_norms_on_demo(capsys, demo):
    code, out, _ = run(capsys, "norms")
    assert code == 0 and out.rstrip().endswith("all runtime norms pass")
    for n in "abcdefghij":
        assert f"({n}) " in out


def test_norms_all_fixed_points(capsys):
    code, payload = run_json(capsys, "norms", "--defs", defs("loop"), "--all-fixed-points")
    assert code == 0 and len(payload["cards"]) == 3
    assert payload["violations"] == []


def test_norms_on_custom_model(capsys):
    d = WORKSPACES / "nonwf"
    code, _ = run_json(capsys, "norms", "--defs", str(d / "defs.txt"),
                       "--model", str(d / "model.txt"))
    assert code == 0


def test_model_txt_in_current_directory(capsys, monkeypatch):
    monkeypatch.chdir(WORKSPACES / "nonwf")
    _, out, _ = run(capsys, "classify", "self_member")
    assert out.strip().endswith(": true")


@pytest.mark.parametrize("argv, fragment", [
    (["classify", "e in"], "expected"),
    (["classify", "forall x . (T(x) -> x in e)"], "offending subformula"),
    (["classify", "liar", "--defs", "/nonexistent/defs.txt"], "nonexistent"),
    (["lfp", "--model", "/nonexistent/model.txt"], "nonexistent"),
])
def test_input_errors_exit_two(capsys, tmp_path, monkeypatch, argv, fragment):
    monkeypatch.chdir(tmp_path)
    code, out, err = run(capsys, *argv)
    assert code == 2 and fragment in err


def test_bad_definitions_file(capsys, tmp_path):
    bad = tmp_path / "defs.txt"
    bad.write_text('a := T("missing")\n')
    code, _, err = run(capsys, "lfp", "--defs", str(bad))
    assert code == 2 and "defs.txt:1" in err


@pytest.mark.parametrize("argv", [
    ["classify", "says_empty"],
    ["lfp"],
    ["extend", "--seed", "tau"],
    ["soundify", "--set", "empty", "liar"],
    ["enumerate"],
])
def test_figures_are_written(capsys, demo, tmp_path, argv):
    path = tmp_path / "fig.png"
    code, _, _ = run(capsys, *argv, "--figure", str(path))
    assert code == 0
    assert path.read_bytes()[:8] == b"\x89PNG\r\n\x1a\n"


def test_json_is_identical_across_hash_seeds():
    outputs = set()
    for seed in ("0", "1", "12345"):
        env = dict(os.environ, PYTHONHASHSEED=seed)
        proc = subprocess.run(
            [sys.executable, "-m", "truthpoint", "enumerate", "--format", "json",
             "--defs", defs("loop")],
            env=env, capture_output=True, check=True, cwd=ROOT)
        outputs.add(proc.stdout)
    assert len(outputs) == 1
    for seed in ("0", "7"):
        env = dict(os.environ, PYTHONHASHSEED=seed)
        proc = subprocess.run(
            [sys.executable, "-m", "truthpoint", "norms", "--format", "json",
             "--defs", defs("demo")],
            env=env, capture_output=True, check=True, cwd=ROOT)
        outputs.add(proc.stdout)
    assert len(outputs) == 2


def test_console_script_help():
    proc = subprocess.run([sys.executable, "-m", "truthpoint", "--help"],
                          capture_output=True, text=True)
    assert proc.returncode == 0
    for cmd in ("classify", "explain", "lfp", "extend", "soundify", "enumerate", "norms"):
        assert cmd in proc.stdout
