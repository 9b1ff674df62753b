import json
from pathlib import Path

import pytest

from shiftfree.cli import main
from shiftfree.genprop import dump_instance, fibonacci_planted_instance
from shiftfree.ordercore import LEMMAS, generate_instance
from shiftfree.ratlin import QMatrix, QVector
from shiftfree.shiftcheck import ShiftInstance, shift_instance_to_data

DATA = Path(__file__).resolve().parent.parent / "demos" / "data"


def run(capsys, *argv):
    code = main([str(a) for a in argv])
    out, err = capsys.readouterr()
    return code, out, err


def test_analyze_map_succ(capsys):
    code, out, _ = run(capsys, "analyze-map", DATA / "succ.json")
    assert code == 0
    assert "generator 0, conjugate to succ" in out


def test_analyze_map_plus_two(capsys):
    code, out, _ = run(capsys, "analyze-map", DATA / "plus_two.json")
    assert code == 0
    assert "no generator" in out


def test_malformed_file_reports_line(capsys, tmp_path):
    bad = tmp_path / "bad.json"
    bad.write_text('{\n  "exceptions": {"0": 2,\n}')
    code, out, err = run(capsys, "analyze-map", bad)
    assert code == 2 and out == ""
    assert f"{bad}:3:1:" in err


def test_invalid_map_is_an_input_error(capsys, tmp_path):
    bad = tmp_path / "bad.json"
    bad.write_text('{"exceptions": {}, "tail_offset": -1}')
    code, _, err = run(capsys, "analyze-map", bad)
    assert code == 2 and "error" in err


def test_missing_file(capsys, tmp_path):
    code, _, err = run(capsys, "check-shift", tmp_path / "nope.json")
    assert code == 2 and "nope.json" in err


def _write(tmp_path, name, data):
    p = tmp_path / name
    p.write_text(json.dumps(data))
    return p


FIB = QMatrix.from_rows([[0, 1], [1, 1]])
CYCLIC3 = QMatrix.from_rows([[0, 0, 1], [1, 0, 0], [0, 1, 0]])
SHIFT4 = QMatrix.from_columns([QVector.basis(k + 1) if k < 3 else QVector.zero() for k in range(4)], 4)


@pytest.mark.parametrize(
    "op, e0, N, expect",
    [
        (SHIFT4, QVector.basis(0), 3, "free on window"),
        (CYCLIC3, QVector.basis(0), 8, "dependent from m = 3"),
        (FIB, QVector.basis(0), 6, "dependent from m = 2"),
    ],
)
def test_check_shift_examples_through_files(capsys, tmp_path, op, e0, N, expect):
    p = _write(tmp_path, "inst.json", shift_instance_to_data(ShiftInstance.orbit(op, e0, N)))
    code, out, _ = run(capsys, "check-shift", p)
    assert code == 0
    assert expect in out


def test_check_shift_violation_exits_one(capsys, tmp_path):
    data = shift_instance_to_data(ShiftInstance.orbit(FIB, QVector.basis(0), 3))
    data["vectors"][2] = [[0, "5"]]
    code, out, _ = run(capsys, "check-shift", _write(tmp_path, "v.json", data), "--format", "lines")
    assert code == 1
    rows = [json.loads(r) for r in out.splitlines()]
    assert rows[0]["verdict"] == "fail"
    assert rows[1]["witness"] == {"first violation": 1}


def test_falsify_round_trip(capsys, tmp_path):
    out_file = tmp_path / "bundle.json"
    code, out, _ = run(capsys, "falsify", "--map", DATA / "plus_two.json", "--window", 30, "--out", out_file)
    assert code == 0 and "zero-on-orbit" in out
    code, out, _ = run(capsys, "check-shift", out_file)
    assert code == 0
    assert "hypotheses hold + dependent" in out


def test_falsify_graded_round_trip(capsys, tmp_path):
    out_file = tmp_path / "bundle.json"
    code, out, _ = run(capsys, "falsify", "--map", DATA / "merging.json", "--out", out_file)
    assert code == 0 and "graded-by-meeting" in out
    code, out, _ = run(capsys, "check-shift", out_file)
    assert code == 0 and "hypotheses hold + dependent" in out


def test_falsify_refuses_a_map_with_generator(capsys):
    code, out, _ = run(capsys, "falsify", "--map", DATA / "succ.json")
    assert code == 1
    assert "P holds" in out


def test_bad_window_flag(capsys):
    code, _, err = run(capsys, "falsify", "--map", DATA / "succ.json", "--window", 0)
    assert code == 2 and "--window" in err


def test_lemmas_batch_passes(capsys):
    code, out, _ = run(capsys, "lemmas", "--seed", 3, "--count", 40)
    assert code == 0
    assert out.count("[pass]") == 3


@pytest.mark.parametrize("lemma", LEMMAS)
def test_lemmas_replay_matches_the_batch_check(capsys, tmp_path, lemma):
    inst = generate_instance(lemma, f"{lemma}:0:4")
    res = inst.check()
    p = _write(tmp_path, "w.json", inst.to_data())
    code, out, _ = run(capsys, "lemmas", "--replay", p, "--format", "lines")
    assert code == 0
    row = json.loads(out.splitlines()[1])
    assert row["check"] == f"{lemma} instance"
    assert row["witness"]["hypotheses"] == res.hypotheses
    assert row["witness"]["failed"] == list(res.failed)


def test_lemmas_replay_reports_failed_hypotheses(capsys, tmp_path):
    inst = {
        "lemma": "orbit", "size": 2, "leq": [[0, 0], [0, 1], [1, 1]],
        "projection": [0, 1], "map": [1, 1],
        "a": {"prefix": [], "cycle": [0]}, "b": 0,
    }
    code, out, _ = run(capsys, "lemmas", "--replay", _write(tmp_path, "w.json", inst))
    assert code == 0
    assert '"failed": ["f(b) <= a(0)"]' in out


def test_lemmas_replay_rejects_non_monotone_map(capsys, tmp_path):
    inst = {
        "lemma": "orbit", "size": 2, "leq": [[0, 0], [0, 1], [1, 1]],
        "projection": [0, 1], "map": [1, 0],
        "a": {"prefix": [], "cycle": [0]}, "b": 0,
    }
    code, _, err = run(capsys, "lemmas", "--replay", _write(tmp_path, "w.json", inst))
    assert code == 2 and err


def test_closure_min_structure(capsys):
    code, out, _ = run(capsys, "closure", DATA / "min3.json", "--subset", "1,2")
    assert code == 0
    assert "closure: [1, 2]" in out


def test_closure_rejects_out_of_range_subset(capsys):
    code, _, err = run(capsys, "closure", DATA / "min3.json", "--subset", "7")
    assert code == 2 and "outside the carrier" in err


def test_check_general_shift_example(capsys):
    code, out, _ = run(capsys, "check-general", DATA / "shift_general.json")
    assert code == 0
    assert out.count("[pass] condition") == 5
    assert "[pass] family free" in out


def test_check_general_planted_dependence(capsys, tmp_path):
    inst, w = fibonacci_planted_instance(6)
    p = tmp_path / "fib.json"
    p.write_text(dump_instance(inst, w))
    code, out, _ = run(capsys, "check-general", p, "--format", "lines")
    assert code == 1
    rows = {r.get("check"): r for r in map(json.loads, out.splitlines())}
    assert rows["condition 4"]["verdict"] == "fail"
    assert rows["endgame containment"]["witness"] == [2, 2]


@pytest.mark.parametrize(
    "argv",
    [
        ["lemmas", "--seed", "5", "--count", "30", "--format", "lines"],
        ["falsify", "--map", str(DATA / "merging.json")],
        ["closure", str(DATA / "f2_squared.json"), "--subset", "1"],
        ["check-general", str(DATA / "fibonacci_planted.json")],
    ],
)
def test_reports_are_byte_identical(capsys, argv):
    first = run(capsys, *argv)
    second = run(capsys, *argv)
    assert first == second
