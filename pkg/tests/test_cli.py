from __future__ import annotations

import json

import pytest

from defw.algebra import AlgebraContext
from defw.cli import main
from defw.textio import element_from_json, format_element, parse_element


def run(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


def test_cohomology_gv(capsys):
    code, out, _ = run(capsys, "cohomology", "--q", "1", "--r", "inf", "--degree", "3", "--order", "0")
    assert code == 0
    rec = json.loads(out)
    assert rec["command"] == "cohomology" and rec["seed"] == 0 and "engine_version" in rec
    (piece,) = rec["results"]["pieces"]
    assert piece["dimension"] == 1
    assert piece["basis"][0]["text"] == "h[1,0]*c[1,0]"


def test_payload_round_trips_through_parser(capsys):
    _, out, _ = run(capsys, "cohomology", "--degree", "3..6", "--order", "1..3")
    ctx = AlgebraContext(1)
    for piece in json.loads(out)["results"]["pieces"]:
        for b in piece["basis"]:
            x = element_from_json(b, ctx)
            assert parse_element(b["text"], ctx) == x
            assert format_element(x) == b["text"]


def test_f_lambda_grid(capsys):
    code, out, _ = run(capsys, "cohomology", "--f-lambda", "0", "--order", "4", "--degree", "0..8")
    assert code == 0
    assert [p["dimension"] for p in json.loads(out)["results"]["pieces"]] == [0] * 9


def test_type_slice(capsys):
    _, out, _ = run(capsys, "cohomology", "--f-lambda", "0", "--order", "5", "--degree", "6", "--type", "2,2")
    assert json.loads(out)["results"]["pieces"][0]["dimension"] == 1


@pytest.mark.parametrize("argv", [
    ["cohomology", "--r", "3", "--f-lambda", "0"],
    ["cohomology", "--q", "2", "--type", "1,1", "--degree", "3"],
    ["cohomology", "--type", "1,1", "--degree", "4"],
    ["cohomology", "--degree", "5..2"],
    ["cohomology", "--r", "0"],
    ["cohomology", "--f-lambda", "x"],
    ["report-section10", "--q", "2"],
    ["invariants", "eval"],
    ["invariants", "eval", "--r", "1", "--x", "[[[1]]]"],
    ["nonsense"],
])
def test_usage_errors_exit_2(capsys, argv):
    assert run(capsys, *argv)[0] == 2


def test_byte_stable_and_thread_independent(capsys, monkeypatch):
    argv = ["cohomology", "--degree", "0..7", "--order", "0..3"]
    first = run(capsys, *argv)[1]
    assert run(capsys, *argv)[1] == first
    monkeypatch.setenv("DEFW_THREADS", "4")
    assert run(capsys, *argv)[1] == first


def test_timing_only_on_request(capsys):
    assert "wall_time_s" not in json.loads(run(capsys, "cohomology", "--degree", "3")[1])
    assert "wall_time_s" in json.loads(run(capsys, "cohomology", "--degree", "3", "--timing")[1])


def test_verify_exit_status(capsys):
    code, out, _ = run(capsys, "verify", "--suite", "derivations", "--trials", "30", "--seed", "4")
    rec = json.loads(out)
    assert code == 0 and rec["results"]["all_passed"] and rec["seed"] == 4 and rec["config"]["seed"] == 4


def test_verify_failure_exit_1(capsys, monkeypatch):
    from defw import checks

    monkeypatch.setitem(checks.SUITES, "type", lambda cfg: [checks.CheckResult("forced", False, 1, "x")])
    code, out, _ = run(capsys, "verify", "--suite", "type")
    assert code == 1
    assert json.loads(out)["results"]["checks"][0]["counterexample"] == "x"


def test_invariants_eval(capsys):
    code, out, _ = run(capsys, "invariants", "eval", "--q", "1", "--r", "1", "--x", '[[["2"]], [["3"]]]',
                       "--k", "1", "--l", "1")
    assert code == 0
    (v,) = json.loads(out)["results"]["values"]
    assert v["c_kl"] == {"rational_part": {"num": "3", "den": "1"}, "pi_exponent": 1}
    assert v["tau_identity"]


def test_invariants_check(capsys):
    code, out, _ = run(capsys, "invariants", "check", "--trials", "10", "--seed", "2")
    assert code == 0 and json.loads(out)["seed"] == 2


def test_formats(capsys):
    _, md, _ = run(capsys, "cohomology", "--degree", "3", "--format", "md")
    assert "| 3 | 0 | 1 | `h[1,0]*c[1,0]` |" in md
    _, tsv, _ = run(capsys, "cohomology", "--degree", "3", "--format", "tsv")
    assert tsv.splitlines()[1] == "3\t0\t1\th[1,0]*c[1,0]"


def test_report_files(tmp_path, capsys):
    base = tmp_path / "rep"
    assert main(["report-section10", "--out", str(base)]) == 0
    data = json.loads((tmp_path / "rep.json").read_text())
    md = (tmp_path / "rep.md").read_text()
    assert data["command"] == "report-section10"
    assert all(r["match"] for r in data["results"]["f0_vanishing"]["projector_tables"])
    assert "`delta^2(GV)*delta^3(GV) = " in md
    assert main(["report-section10", "--out", str(tmp_path / "again")]) == 0
    assert (tmp_path / "again.json").read_text() == (tmp_path / "rep.json").read_text()
