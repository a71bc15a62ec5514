import json
from pathlib import Path

import pytest

from sdiv.cli import main

DATA = Path(__file__).parent / "data"


def run(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


def test_field(capsys):
    code, out, _ = run(capsys, "field", "-d", "-1", "--json")
    rep = json.loads(out)
    assert code == 0 and rep["schema"] == 1 and rep["disc"] == -4 and rep["w"] == 4


def test_factor(capsys):
    code, out, _ = run(capsys, "factor", "-d", "-1", "-S", "2r", "2", "--json")
    rep = json.loads(out)
    assert rep["factorization"] == "(2, 1)^2"
    assert rep["s_unit"]["basis"] == ["(1 + 1*w)/1"] and rep["s_unit"]["exponents"] == [2]
    assert rep["s_unit"]["zeta_power"] == 3


def test_constants(capsys):
    code, out, _ = run(capsys, "constants", "-d", "-1", "-S", "2r", "--json")
    c = json.loads(out)["constants"]
    assert c["C_sq"] == "1/2" and c["q"] == 11 and c["q_list"] == [3, 5, 7, 11, 13]


def test_sunits_and_lenstra(capsys):
    code, out, _ = run(capsys, "sunits", "-d", "-5", "--json")
    rep = json.loads(out)
    assert rep["class_number"] == 2 and rep["basis"] == ["(2 + 0*w)/1"]
    code, out, _ = run(capsys, "lenstra", "-d", "-5", "--json")
    rep = json.loads(out)
    assert (rep["p"], rep["b"]) == (41, 3)


@pytest.mark.parametrize("which", ["neq", "produnits", "phi-inf", "sq"])
def test_build_matches_golden(capsys, tmp_path, which):
    golden = json.loads((DATA / "golden_gauss_2r.json").read_text(encoding="utf-8"))
    path = tmp_path / "f.txt"
    code, _, _ = run(capsys, "build", which, "-d", "-1", "-S", "2r", "--out", str(path))
    assert code == 0
    assert path.read_text(encoding="utf-8") == golden["formulas"][which]["text"] + "\n"


def test_build_sqrt5(capsys):
    golden = json.loads((DATA / "golden_sqrt5_2r.json").read_text(encoding="utf-8"))
    code, out, _ = run(capsys, "build", "sq", "-d", "-5", "-S", "2r", "--json")
    rep = json.loads(out)
    assert rep["atoms"] == golden["formulas"]["sq"]["atoms"]
    assert rep["free"] == ["x", "y"]


def test_verify_pass_and_fault(capsys):
    code, out, _ = run(capsys, "verify", "neq", "--samples", "5")
    assert code == 0 and "ALL PASS" in out
    code, out, _ = run(capsys, "verify", "constants", "--samples", "5", "--set", "q=3", "--json")
    rep = json.loads(out)
    assert code == 1 and not rep["ok"]
    assert rep["suites"]["constants"]["counterexample"]["violation"] == "q > 4/C^2"


def test_verify_sq_sqrt5(capsys):
    code, out, _ = run(capsys, "verify", "sq", "-d", "-5", "-S", "2r", "--samples", "10")
    assert code == 0


@pytest.mark.parametrize("argv", [
    ["field", "-d", "4"], ["sunits", "-d", "-1", "-S", "3r"], ["factor", "-d", "-1", "(1+"],
    ["constants", "--set", "zz=1"],
])
def test_errors_exit_nonzero(capsys, argv):
    code, _, err = run(capsys, *argv)
    assert code == 2 and err.startswith("error:")


def test_bad_spec_is_usage_error(capsys):
    with pytest.raises(SystemExit) as exc:
        main(["sunits", "-S", "2q"])
    assert exc.value.code == 2
