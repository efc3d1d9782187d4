import json
import subprocess
import sys

import pytest

import attdel.transforms as transforms
from attdel.cli import main
from attdel.equivalence import bisimilar
from attdel.events import StandardEventModel
from attdel.formula import parse
from attdel.io import event_model_to_json, load_workspace, workspace_from_json
from conftest import FIXTURES

WS = ["-w", str(FIXTURES)]
BATTERY = str(FIXTURES / "worked.battery")


def run(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


def test_check_start_model(capsys):
    code, out, _ = run(capsys, "check", *WS, "start", "B[b]B[a](A[a]p & A[a]q)")
    assert code == 0 and out.startswith("true")
    code, out, _ = run(capsys, "check", *WS, "start", "A[a]q")
    assert code == 1 and out.startswith("false")
    code, out, _ = run(capsys, "check", *WS, "start", "T", "--trace", "--json")
    assert code == 0 and json.loads(out)["trace"][0] == {"formula": "T", "worlds": [
        w["id"] for w in json.loads((FIXTURES / "start.json").read_text())["models"]["start"]["worlds"]]}


def test_errors_exit_2(capsys):
    assert run(capsys, "check", *WS, "nope", "T")[0] == 2
    code, _, err = run(capsys, "check", *WS, "start", "p &")
    assert code == 2 and err.startswith("error:")
    assert run(capsys, "export-dot", *WS, "nope")[0] == 2


def test_update_to_file_is_bisimilar_to_expected(capsys, tmp_path):
    out = tmp_path / "upd.json"
    code, text, _ = run(capsys, "update", *WS, "start", "H_pq", "-o", str(out))
    assert code == 0 and str(out) in text
    doc = json.loads(out.read_text())
    ws = workspace_from_json({"models": {"U": doc}})
    assert bisimilar(ws.model("U"), load_workspace(FIXTURES).model("after_pq")) is not None
    code, text, _ = run(capsys, "update", *WS, "start", "F_pq")
    assert code == 0 and json.loads(text)["worlds"]


def test_inapplicable_update(capsys, tmp_path):
    ws = {"models": {"M": {"worlds": [{"id": "w", "val": ["p"]}], "rel": {"a": []}}},
          "events": {"E": {"kind": "sem", "events": ["e", "f"], "pre": {"e": "T", "f": "p"},
                           "edges": {}, "designated": ["e", "f"]}}}
    path = tmp_path / "ws.json"
    path.write_text(json.dumps(ws))
    code, out, _ = run(capsys, "update", "-w", str(path), "M", "E", "--json")
    assert code == 1 and json.loads(out)["applicable"] is False


def test_bisim_and_iso(capsys, tmp_path):
    code, out, _ = run(capsys, "bisim", *WS, "after_pq", "after_pq", "--json")
    assert code == 0 and json.loads(out)["bisimilar"]
    assert run(capsys, "bisim", *WS, "start", "after_pq")[0] == 1
    code, out, _ = run(capsys, "iso", *WS, "after_pq", "after_pq", "--bound", "20", "--json")
    assert code == 0 and json.loads(out)["isomorphic"]
    assert run(capsys, "iso", *WS, "after_pq", "after_pq", "--bound", "3")[0] == 2


def test_export_dot_H_p(capsys):
    code, out, _ = run(capsys, "export-dot", *WS, "H_p_a")
    assert code == 0 and out.startswith("digraph")
    nodes = [ln for ln in out.splitlines() if "[label=" in ln and "->" not in ln]
    edges = [ln for ln in out.splitlines() if "->" in ln]
    assert len(nodes) == 2 and len(edges) == 3
    code, out, _ = run(capsys, "export-dot", *WS, "start")
    assert code == 0 and "->" in out


def test_attention_gen_roundtrips(capsys, tmp_path):
    code, out, _ = run(capsys, "attention", "gen", "--kind", "F", "--phi", "p & q", "--agents", "a,b")
    assert code == 0
    doc = json.loads(out)
    assert len(doc["events"]) == 25 and len(doc["designated"]) == 16
    assert doc == json.loads((FIXTURES / "f_pq.json").read_text())["events"]["F_pq"]
    code, out, _ = run(capsys, "attention", "gen", "--kind", "H", "--phi", "p & q", "--agents", "a,b")
    ws = workspace_from_json({"events": {"H": json.loads(out)}})
    assert ws.event_model("H") == load_workspace(FIXTURES).event_model("H_pq")
    code, out, _ = run(capsys, "attention", "gen", "--kind", "R", "--gamma", "B[a]p", "q",
                       "--agents", "a,b")
    assert code == 0 and len(json.loads(out)["events"]) == 4


def test_transform(capsys):
    code, out, _ = run(capsys, "transform", *WS, "H_p_a", "--to", "sem")
    assert code == 0
    # tuple event ids are printed as labels, so compare the JSON documents
    want = event_model_to_json(load_workspace(FIXTURES).event_model("T1p_H_p_a"))
    assert json.loads(out) == want
    code, out, _ = run(capsys, "transform", *WS, "F_pq", "--to", "ecem")
    assert code == 0 and json.loads(out)["kind"] == "ecem"
    assert run(capsys, "transform", *WS, "F_pq", "--to", "sem")[0] == 2
    assert run(capsys, "transform", *WS, "H_pq", "--from", "gau")[0] == 2


def test_size_sat_reduce(capsys):
    code, out, _ = run(capsys, "size", *WS, "H_p_a")
    assert code == 0 and int(out) <= 4 + 11
    assert run(capsys, "size", "p & q")[1].strip() == "3"
    code, out, _ = run(capsys, "sat", "B[a]p & ~B[a]p")
    assert code == 1 and out.strip() == "unsatisfiable"
    code, out, _ = run(capsys, "sat", "<a>p & B[a]q", "--witness")
    assert code == 0 and '"worlds"' in out
    code, out, _ = run(capsys, "sat", *WS, "[@H_p_a]B[a]F", "--json")
    assert code == 0 and json.loads(out)["satisfiable"]
    code, out, _ = run(capsys, "reduce", *WS, "[@H_p_a]p", "--simplify")
    assert code == 0 and parse(out.strip()) == parse("p -> p")
    code, out, _ = run(capsys, "reduce", *WS, "[@H_p_a]p", "--json")
    assert parse(json.loads(out)["reduced"]) == parse("p -> p")


def test_principles(capsys, tmp_path):
    # a's attention at the actual world differs from the worlds a considers possible
    code, out, _ = run(capsys, "principle", *WS, "reveal_start", "introspection")
    assert code == 1 and "attention introspection" in out
    code, out, _ = run(capsys, "principle", *WS, "start", "introspection", "--json")
    assert json.loads(out)["ok"] == (code == 0)
    uni = tmp_path / "u.json"
    uni.write_text(json.dumps(["p", "q", "p & q"]))
    # b attends to p and q but not to their conjunction
    code, out, _ = run(capsys, "principle", *WS, "reveal_start", "conjunctive-closure", "--universe", str(uni))
    assert code == 1 and "for agent b: (p & q), p, q" in out
    uni.write_text(json.dumps(["p", "q"]))
    assert run(capsys, "principle", *WS, "reveal_start", "conjunctive-closure", "--universe", str(uni))[0] == 0
    assert run(capsys, "principle", *WS, "reveal_start", "ignoring")[0] == 2
    code, _, _ = run(capsys, "principle", *WS, "reveal_start", "ignoring", "--agents", "b,a")
    assert code == 1  # b attends to a's beliefs in the enriched model
    assert run(capsys, "principle", *WS, "reveal_start", "ignoring", "--agents", "a,b")[0] == 0


# --------------------------------------------------------------------------
# battery


def test_shipped_battery_passes(capsys):
    code, out, _ = run(capsys, "battery", *WS, BATTERY)
    assert code == 0
    assert out.strip().splitlines()[-1] == "11/11 cases passed"


def test_empty_battery(capsys, tmp_path):
    spec = tmp_path / "empty.battery"
    spec.write_text("{}")
    code, out, _ = run(capsys, "battery", str(spec), "--json")
    assert code == 0 and json.loads(out) == {"ok": True, "cases": []}


def test_battery_fault_injection(capsys, tmp_path, monkeypatch):
    real = transforms.t1p_ecem_to_sem

    def broken(C):
        E = real(C)  # drop every a-edge: no longer update equivalent
        return StandardEventModel(events=E.events, rel={**E.rel, "a": []}, pre=E.pre,
                                  designated=E.designated, name=E.name)

    monkeypatch.setattr(transforms, "t1p_ecem_to_sem", broken)
    spec = tmp_path / "t1p.battery"
    spec.write_text(json.dumps({"seed": 5, "cases": [
        {"name": "ECEM to SEM", "check": "transform", "transform": "t1p",
         "event": {"random": "ecem"}, "events": 5, "count": 10, "models": {"max_worlds": 4}}]}))
    code, out, _ = run(capsys, "battery", str(spec))
    assert code == 1
    assert out.startswith("FAIL ECEM to SEM") and "counterexample: " in out
    code, out, _ = run(capsys, "battery", str(spec), "--json")
    case = json.loads(out)["cases"][0]
    assert not case["ok"] and case["counterexample"]["worlds"] and "sample_seed" in case


def test_unknown_battery_check(capsys, tmp_path):
    spec = tmp_path / "bad.battery"
    spec.write_text(json.dumps({"cases": [{"check": "nope"}]}))
    assert run(capsys, "battery", str(spec))[0] == 2


@pytest.mark.parametrize("argv", [["--help"], ["check", "--help"]])
def test_help(argv, capsys):
    with pytest.raises(SystemExit) as exc:
        main(argv)
    assert exc.value.code == 0 and "usage" in capsys.readouterr().out


def test_console_script_entry_point():
    res = subprocess.run([sys.executable, "-m", "attdel.cli", "check", *WS, "start", "A[a]p"],
                         capture_output=True, text=True)
    assert res.returncode == 0 and res.stdout.startswith("true")
