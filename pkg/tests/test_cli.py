import json
import subprocess
import sys

import pytest

from quadfactor.cli import main


def run(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


def run_json(capsys, *argv):
    code, out, _ = run(capsys, *argv, "--json")
    return code, json.loads(out)


def test_factor_json(capsys):
    code, doc = run_json(capsys, "factor", "--poly", "x^5 - 3x^2 + x + 1")
    assert code == 0
    assert doc["schema"] == "quadfactor/1"
    (f,) = doc["results"]["factors"]
    assert (f["p"], f["q"], f["cofactor"]) == ("-2", "1", "x^3 + 2x^2 + 3x + 1")


def test_factor_text_shows_product(capsys):
    code, out, _ = run(capsys, "factor", "--poly", "x^4 + x^3 + x + 1")
    assert code == 0
    assert "(x^2 - x + 1)(x^2 + 2x + 1)" in out or "(x^2 + 2x + 1)(x^2 - x + 1)" in out


def test_parse_error_exit_code_and_position(capsys):
    code, out, err = run(capsys, "factor", "--poly", "x^5 + 3y", "--json")
    assert code == 2
    assert json.loads(out)["error"]["position"] == 7
    assert "position 7" in err


def test_usage_errors(capsys):
    with pytest.raises(SystemExit) as info:
        main(["bogus"])
    assert info.value.code == 2
    assert run(capsys, "family", "--id", "T9.9")[0] == 2
    assert run(capsys, "curve", "--id", "C0")[0] == 2
    assert run(capsys, "sweep", "--pattern", "a11", "--exponents", "5,2", "--height", "3")[0] == 2
    assert run(capsys, "sweep", "--pattern", "a11", "--exponents", "3,2,1", "--height", "3")[0] == 2
    assert run(capsys, "family", "--id", "T2.4.2", "--param", "0")[0] == 2


def test_family(capsys):
    code, doc = run_json(capsys, "family", "--id", "T2.4.2", "--param", "2")
    assert code == 0
    (m,) = doc["results"]["members"]
    assert m["polynomial"] == "x^4 + x^3 + x + 1" and (m["p"], m["q"]) == ("2", "1")
    code, doc = run_json(capsys, "family", "--id", "T3.4.4", "--param", "2")
    assert [m["branch"] for m in doc["results"]["members"]] == ["a", "b", "c"]
    code, doc = run_json(capsys, "family", "--id", "T3.4.2")
    assert doc["results"]["members"][0]["a"] == "125/1296"


def test_sweep_and_eliminate(capsys):
    code, doc = run_json(capsys, "sweep", "--pattern", "a11", "--exponents", "5,3,2", "--height", "8")
    assert code == 0
    got = {(s["p"], s["q"], s["a"]) for s in doc["results"]["solutions"]}
    assert got == {("-1", "1", "1"), ("0", "1", "1"), ("-3/8", "1/6", "2597/192")}
    code, doc = run_json(capsys, "eliminate", "--pattern", "a11", "--exponents", "5,2,1")
    assert doc["results"]["condition"] == "p^2*q^2 + p - q^3 - q"


def test_curve(capsys):
    code, doc = run_json(capsys, "curve", "--id", "C3.1.1", "--height", "10")
    assert code == 0
    (c,) = doc["results"]["curves"]
    assert c["points"] == [["0", "1"], ["1", "3"]]
    assert c["solutions"] == [["-2", "1", "-3"]]


def test_curve_file(capsys, tmp_path):
    path = tmp_path / "c.json"
    path.write_text(json.dumps({"schema": "quadfactor/1", "curves": [
        {"id": "U", "form": "square", "coefficients": ["1", "0", "0", "1"]}]}))
    code, doc = run_json(capsys, "curve", "--file", str(path), "--height", "4")
    assert code == 0 and doc["results"]["curves"][0]["points"] == [["-1", "0"], ["0", "1"], ["2", "3"]]
    assert run(capsys, "curve", "--file", str(tmp_path / "missing.json"))[0] == 2


def test_threads_do_not_change_output(capsys):
    args = ["sweep", "--pattern", "1aa", "--exponents", "5,4,1", "--height", "12"]
    _, one, _ = run(capsys, *args, "--json")
    _, many, _ = run(capsys, *args, "--json", "--threads", "8")
    assert one == many


def test_rationals_are_strings(capsys):
    _, doc = run_json(capsys, "sweep", "--pattern", "a1a", "--exponents", "4,3,1", "--height", "6")

    def walk(x):
        if isinstance(x, float):
            raise AssertionError(f"float in output: {x}")
        if isinstance(x, dict):
            for v in x.values():
                walk(v)
        if isinstance(x, list):
            for v in x:
                walk(v)
    walk(doc)
    assert all(isinstance(s["a"], str) for s in doc["results"]["solutions"])


def test_verify_paper_exit_code(capsys):
    code, doc = run_json(capsys, "verify-paper")
    assert code == 0
    assert doc["results"]["summary"]["FAIL"] == 0
    assert doc["diagnostics"]["failures"] == 0


def test_timing_only_on_request(capsys):
    _, doc = run_json(capsys, "eliminate", "--pattern", "aa1", "--exponents", "4,3,1")
    assert "timing" not in doc
    _, doc = run_json(capsys, "eliminate", "--pattern", "aa1", "--exponents", "4,3,1", "--timing")
    assert "seconds" in doc["timing"]


def test_module_entry_point():
    out = subprocess.run([sys.executable, "-m", "quadfactor", "factor", "--poly", "x^4 + x^2 + x + 1"],
                         capture_output=True, text=True, check=True)
    assert "no quadratic factor" in out.stdout
