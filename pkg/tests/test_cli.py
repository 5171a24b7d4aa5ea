import io
import json
import logging
import subprocess
import sys

import pytest

from conftest import DATA
from gentle_deq.cli import run


def call(*argv):
    out = io.StringIO()
    code = run([str(a) for a in argv], out=out)
    return code, out.getvalue()


def call_json(*argv):
    code, text = call(*argv)
    return code, json.loads(text)


def test_validate_exit_codes(tmp_path):
    assert call("validate", DATA / "torus_lambda1.alg")[0] == 0
    bad = tmp_path / "loop.alg"
    bad.write_text("vertices: 1\narrow a: 1 -> 1\n")
    code, payload = call_json("validate", bad)
    assert code == 1
    assert payload["classification"] == "locally-gentle-infinite"


def test_compare_reports_genus_one_clause():
    code, payload = call_json("compare", DATA / "torus_lambda1.alg", DATA / "torus_lambda2.alg")
    assert code == 1
    assert (payload["verdict"], payload["clause"]) == ("inequivalent", "3(a)")
    assert payload["schema"] == 1


def test_compare_equivalent_pair():
    code, payload = call_json("compare", DATA / "pair2_lambda1.alg", DATA / "pair2_lambda2.alg")
    assert code == 0 and payload["verdict"] == "equivalent"


def test_cut_compare():
    code, payload = call_json("cut-compare", DATA / "cut_lambda0.tri", DATA / "cut_lambda1.tri")
    assert code == 1 and payload["clause"] == "3(b)"


def test_invariants_of_single_vertex():
    code, payload = call_json("invariants", DATA / "k.alg")
    assert code == 0
    assert payload["record"]["shape"]["genus"] == 0
    assert payload["record"]["ag"] == [[2, 0]]


def test_invariants_of_triangulation():
    code, payload = call_json("invariants", DATA / "cut_lambda0.tri")
    assert code == 0
    assert payload["record"]["genus_datum"] == {"case": "even-two-mod-4", "arf": 1}


def test_surface_command():
    code, payload = call_json("surface", DATA / "pair2_lambda1.alg")
    assert code == 0
    assert payload["shape"]["genus"] == 1


def test_batch_classes_and_determinism():
    code, text = call("--seed", 3, "batch", DATA / "corpus.txt")
    assert code == 0
    payload = json.loads(text)
    names = [[p.rsplit("/", 1)[-1] for p in cls] for cls in payload["classes"]]
    assert names == [["torus_lambda1.alg"], ["torus_lambda2.alg"],
                     ["pair2_lambda1.alg", "pair2_lambda2.alg"],
                     ["cut_lambda0.tri"], ["cut_lambda1.tri", "cut_lambda2.tri"]]
    assert call("--seed", 3, "batch", DATA / "corpus.txt")[1] == text


def test_table_format():
    code, text = call("--format", "table", "invariants", DATA / "k.alg")
    assert code == 0
    assert text.splitlines()[0].startswith("input: ")


@pytest.mark.parametrize("argv", [
    ["nonsense", "x"],
    ["compare", str(DATA / "k.alg")],
    ["--budget", "0", "invariants", str(DATA / "k.alg")],
    ["invariants", "/nonexistent/file.alg"],
])
def test_usage_and_input_errors_exit_2(argv, capsys):
    assert run(argv, out=io.StringIO()) == 2


def test_parse_error_names_line(tmp_path, capsys):
    bad = tmp_path / "bad.alg"
    bad.write_text("vertices: 1 2\narrow a 1 2\n")
    assert run(["validate", str(bad)], out=io.StringIO()) == 2
    assert "line 2" in capsys.readouterr().err


def test_help_exits_0(capsys):
    assert run(["-h"], out=io.StringIO()) == 0


def test_log_level_from_environment(monkeypatch):
    logger = logging.getLogger("gentle_deq")
    before = logger.level
    monkeypatch.setenv("GENTLE_DEQ_LOG", "DEBUG")
    try:
        call("invariants", DATA / "k.alg")
        assert logger.getEffectiveLevel() == logging.DEBUG
    finally:
        logger.setLevel(before)


def test_tilt_reference_dissection(tmp_path):
    cand = tmp_path / "ref.arcs"
    cand.write_text("arc 1.+\narc 2.+\narc 3.+\n")
    code, payload = call_json("tilt", DATA / "torus_lambda1.alg", cand)
    assert code == 0
    assert payload["verdict"] == "tilting" and payload["synthesized"] is True


def test_tilt_graded_not_silting(tmp_path):
    cand = tmp_path / "graded.arcs"
    cand.write_text("arc 1.+ = 0\narc 2.+ = 0\narc 3.+ = 0\narc 4.+ = 0\narc 5.+ = 5\narc 6.+ = -5\n")
    code, payload = call_json("tilt", DATA / "pair2_lambda1.alg", cand)
    assert payload["admissible"] is True and payload["synthesized"] is False
    assert (code, payload["verdict"]) == (1, "not-silting")


def test_tilt_inadmissible(tmp_path):
    cand = tmp_path / "short.arcs"
    cand.write_text("arc 1.+\narc 2.+\n")
    code, payload = call_json("tilt", DATA / "torus_lambda1.alg", cand)
    assert code == 1 and payload["admissible"] is False


def test_console_script_entry_point():
    done = subprocess.run([sys.executable, "-m", "gentle_deq.cli", "validate", str(DATA / "k.alg")],
                          capture_output=True, text=True)
    assert done.returncode == 0
