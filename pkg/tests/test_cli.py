import json

import pytest

from simplecurrents.cli import main
from simplecurrents.extend import InvariantViolation


def run(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


def run_json(capsys, *argv):
    code, out, _ = run(capsys, *argv)
    return code, json.loads(out)


def test_classify_b3(capsys):
    code, data = run_json(capsys, "classify", '{"base":{"affine":["B",3]},"level":1}')
    assert code == 0
    assert data["kind"] == "vertex-operator-superalgebra"
    assert sorted(s["lowest_weight"] for s in data["summands"]) == ["0/1", "1/2"]


def test_classify_d4_holomorphic(capsys, tmp_path):
    path = tmp_path / "spec.json"
    path.write_text('{"base":{"affine":["D",4]},"level":2}')
    code, data = run_json(capsys, "classify", str(path), "--tables")
    assert code == 0
    assert data["holomorphic_pairs"]
    assert data["grading_group"] == [2, 2]
    assert "eta" in data["tables"]


def test_classify_from_stdin(capsys, monkeypatch):
    import io

    monkeypatch.setattr("sys.stdin", io.StringIO('{"base":{"lattice":{"gram":[[2]]}},"L":[["1/2"]]}'))
    code, data = run_json(capsys, "classify", "-")
    assert code == 0 and data["grading_group"] == [2]


@pytest.mark.parametrize("bad", ["{not json", '{"base":{}}', '{"base":{"affine":["Z",2]}}', "/no/such/file.json"])
def test_classify_input_errors(capsys, bad):
    code, _, err = run(capsys, "classify", bad)
    assert code == 2
    assert "input error" in err


def test_invariant_violation_exit_code(capsys, monkeypatch):
    def boom(spec):
        raise InvariantViolation("broken table")

    monkeypatch.setattr("simplecurrents.cli.classify", boom)
    code, _, err = run(capsys, "classify", '{"base":{"affine":["B",3]},"level":1}')
    assert code == 3 and "broken table" in err


@pytest.mark.parametrize("name, nodes", [("A4", [1, 2, 3, 4]), ("G2", []), ("D5", [1, 4, 5])])
def test_minimal(capsys, name, nodes):
    assert run_json(capsys, "minimal", name) == (0, nodes)


def test_verify_exit_codes(capsys):
    code, data = run_json(capsys, "verify", "delta", "--model", "A1", "--cutoff", "3")
    assert code == 0 and data["passed"]
    code, data = run_json(capsys, "verify", "jacobi", "--cutoff", "1", "--inject-error")
    assert code == 1
    failure = data["identities"][0]["failure"]
    assert failure  # location of the first failing coefficient


def test_verify_text_format(capsys):
    code, out, _ = run(capsys, "verify", "cocycle", "--model", "Z2", "--format", "text")
    assert code == 0 and out.startswith("cocycle [Z2, cutoff 0]: PASS")


def test_delta_apply(capsys):
    code, data = run_json(capsys, "delta-apply", "--vector", "omega")
    assert code == 0
    assert [t["exponent"] for t in data] == ["-2/1", "-1/1", "0/1"]
    assert data[0]["vector"] == {"|gamma=(0)": "1/4"}
    code, _, _ = run(capsys, "delta-apply", "--vector", "heis:7")
    assert code == 2
    code, _, _ = run(capsys, "delta-apply", "--vector", "nonsense")
    assert code == 2


def test_character_and_quotient(capsys):
    code, data = run_json(capsys, "character", "--cutoff", "4")
    assert code == 0 and data["equal"] and data["deformed"] == data["coset"]
    code, data = run_json(capsys, "quotient", "--gram", "[[1,0],[0,1]]", "--sub", "[[3,0],[0,1]]")
    assert code == 0 and data["invariant_factors"] == [3] and data["order"] == 3


def test_currents(capsys):
    code, data = run_json(capsys, "currents", "E8", "2")
    assert code == 0 and not data["exhaustive"] and data["warnings"]


def test_output_file_and_determinism(capsys, tmp_path):
    target = tmp_path / "out.json"
    args = ["classify", '{"base":{"affine":["D",4]},"level":2}', "--output", str(target)]
    assert main(args) == 0
    first = target.read_text()
    assert main(args) == 0
    assert target.read_text() == first
    assert json.loads(first) == json.loads(json.dumps(json.loads(first)))


def test_negative_cutoff_and_unknown_command(capsys):
    assert run(capsys, "verify", "delta", "--cutoff", "-1")[0] == 2
    assert run(capsys, "frobnicate")[0] == 2
