import inspect
import json
import subprocess
import sys

import pytest

from symcrit import errors
from symcrit.cli import EXIT_ERROR, EXIT_NA, EXIT_OK, error_code, main


def run(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


def run_json(capsys, *argv):
    code, out, _ = run(capsys, *argv)
    return code, json.loads(out)


def test_invariants(capsys):
    code, doc = run_json(capsys, "invariants", "--curve", "[0,0,0,1,1]")
    assert code == EXIT_OK
    assert doc["schema"] == 1 and doc["command"] == "invariants"
    r = doc["result"]
    assert (r["c4"], r["c6"], r["disc"]) == (-48, -864, -496)
    assert r["conductor"] == 496


def test_invariants_label_and_local(capsys):
    code, doc = run_json(capsys, "invariants", "--curve", "27a1", "-l", "3")
    assert code == EXIT_OK and doc["result"]["conductor"] == 27
    assert "local" in doc["result"]


def test_output_byte_stable(capsys):
    argv = ("compare", "--curve1", "2116a1", "--curve2", "10580a1", "-p", "7")
    _, first, _ = run(capsys, *argv)
    _, second, _ = run(capsys, *argv)
    assert first == second
    assert first == json.dumps(json.loads(first), sort_keys=True, indent=2) + "\n"


def test_compare_consensus(capsys):
    code, doc = run_json(capsys, "compare", "--curve1", "2116a1", "--curve2", "10580a1", "-p", "7")
    assert code == EXIT_OK
    assert doc["result"]["consensus"] == "AntiSymplectic"
    code, doc = run_json(capsys, "compare", "--curve1", "648a1", "--curve2", "12312a1", "-p", "7")
    assert doc["result"]["consensus"] == "Symplectic"


def test_compare_text(capsys):
    code, out, _ = run(capsys, "compare", "--curve1", "52a1", "--curve2", "988b1", "-p", "13",
                       "--format", "text")
    assert code == EXIT_OK
    assert out.splitlines()[-1] == "consensus: AntiSymplectic"


def test_hilbert(capsys):
    code, out, _ = run(capsys, "hilbert", "--format", "text", "--", "-4")
    assert (code, out) == (EXIT_OK, "x - 1728\n")
    code, doc = run_json(capsys, "hilbert", "--", "-3")
    assert doc["result"]["polynomial"] == "x"


def test_frobenius(capsys):
    code, doc = run_json(capsys, "frobenius", "--curve", "864a1", "-l", "5", "-p", "19")
    assert code == EXIT_OK
    assert doc["result"]["matrix"] == [[9, 0], [1, 9]]


def test_classify_text(capsys):
    code, out, _ = run(capsys, "classify", "--curve", "12696f1", "--format", "text")
    assert code == EXIT_OK
    assert len(out.splitlines()) == 4  # header plus 2, 3, 23


def test_frey_scan(capsys):
    code, doc = run_json(capsys, "frey-scan", "19", "864a1", "5")
    assert code == EXIT_OK and doc["result"]["verdict"] == "Eliminated"
    code, doc = run_json(capsys, "frey-scan", "19", "54a1", "47")
    assert code == EXIT_NA and doc["result"]["verdict"] == "NotEliminated"


def test_hyper(capsys):
    code, doc = run_json(capsys, "hyper", "5", "1")
    assert code == EXIT_OK and doc["result"]["conclusion"] == "(2/p) = 1 forced"
    code, doc = run_json(capsys, "hyper", "29", "1")
    assert code == EXIT_ERROR
    assert doc["error"]["code"] == "E_HYPOTHESIS_FAILED"


def test_exists(capsys):
    code, doc = run_json(capsys, "exists", "--gens", "[[1,1],[0,1]]", "-p", "5")
    assert code in (EXIT_OK, EXIT_NA)
    assert doc["result"]["p"] == 5


def test_oracle(capsys):
    code, doc = run_json(capsys, "oracle", "--curve1", "[0,0,0,1,1]", "--curve2", "[0,0,0,1,1]",
                         "-l", "7", "-p", "5", "--max-bits", "400")
    assert code == EXIT_OK
    assert "Symplectic" in json.dumps(doc["result"])


def test_errors(capsys):
    code, doc = run_json(capsys, "invariants", "--curve", "[0,0,0,0,0]")
    assert code == EXIT_ERROR and doc["error"]["code"] == "E_SINGULAR_MODEL"
    code, doc = run_json(capsys, "invariants", "--curve", "nosuchlabel")
    assert code == EXIT_ERROR and doc["error"]["code"] == "E_INPUT_ERROR"
    code, _, err = run(capsys, "invariants")
    assert code == EXIT_ERROR and err
    code, _, err = run(capsys, "classify", "--curve", "[0,0,0,0,0]", "--format", "text")
    assert code == EXIT_ERROR and "SingularModel" in err


def test_error_codes_distinct():
    classes = [c for _, c in inspect.getmembers(errors, inspect.isclass)
               if issubclass(c, errors.SymcritError)]
    codes = {error_code(c("x")) for c in classes}
    assert len(codes) == len(classes)
    assert error_code(errors.TableMiss("x")) == "E_TABLE_MISS"


def test_fixtures_override(tmp_path, capsys):
    p = tmp_path / "fx.json"
    p.write_text(json.dumps({"zz1": [0, 0, 0, 1, 1]}))
    code, doc = run_json(capsys, "invariants", "--curve", "zz1", "--fixtures", str(p))
    assert code == EXIT_OK and doc["result"]["conductor"] == 496


def test_module_entry_point():
    proc = subprocess.run([sys.executable, "-m", "symcrit", "hilbert", "--format", "text", "--", "-7"],
                          capture_output=True, text=True)
    assert proc.returncode == 0 and proc.stdout == "x + 3375\n"
