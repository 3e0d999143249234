import json

import pytest

from twistrank.cli import document_from_family, dump_document, family_from_document, main


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


A_EXAMPLE = ["construct", "--family", "A", "--f", "x^5+x+1", "--m", "5,9,13", "--consts", "1,2,3"]


def test_construct_example_document(capsys):
    code, out, _ = run(capsys, *A_EXAMPLE)
    assert code == 0
    doc = json.loads(out)
    assert doc["M"] == "585" and doc["M_i"] == ["117", "65", "45"]
    assert doc["verification"] is None
    assert doc["curves"][1]["equation_string"] == "y^2 = D*x^5 + 1"


def test_document_roundtrip(capsys):
    _, out, _ = run(capsys, *A_EXAMPLE)
    doc = json.loads(out)
    assert document_from_family(family_from_document(doc)) == doc


def test_byte_identical(capsys):
    args = ["construct", "--family", "B3", "--f", "x^3-2", "--m", "3", "--consts", "1", "--base-point", "3,5", "--verify", "--seed", "4"]
    first = run(capsys, *args)[1]
    assert first == run(capsys, *args)[1]


def test_not_squarefree(capsys):
    code, _, err = run(capsys, "construct", "--family", "A", "--f", "x^3-x^2", "--m", "3,3,3", "--consts", "1,1,1")
    assert code == 2
    assert "f is not square-free" in err


@pytest.mark.parametrize(
    "extra, message",
    [
        (["--f", "x^3+1", "--m", "3,4,3", "--consts", "1,1,1"], "odd"),
        (["--f", "x^3+1", "--m", "3,3,3", "--consts", "1,0,1"], "nonzero"),
        (["--f", "x^3+", "--m", "3,3,3", "--consts", "1,1,1"], "position"),
    ],
)
def test_invalid_inputs(capsys, extra, message):
    code, _, err = run(capsys, "construct", "--family", "A", *extra)
    assert code == 2 and message in err


def test_bad_flag_exit_code(capsys):
    with pytest.raises(SystemExit) as exc:
        main(["construct", "--family", "A", "--m", "x"])
    assert exc.value.code == 2


def test_construct_c_verify(capsys):
    code, out, _ = run(capsys, "construct", "--family", "C", "--m", "3,3,3,3", "--consts", "1,1,1,1", "--verify", "--seed", "7")
    assert code == 0
    rep = json.loads(out)["verification"]
    assert rep["overall"] and rep["seed"] == "7"


def test_verify_and_certify(tmp_path, capsys):
    path = tmp_path / "a.json"
    code, _, _ = run(capsys, "construct", "--family", "A", "--f", "x^3+1", "--m", "3,3,3", "--consts", "1,1,1", "--out", str(path))
    assert code == 0
    code, out, _ = run(capsys, "verify", str(path), "--samples", "5")
    assert code == 0 and json.loads(out)["overall"]
    code, out, _ = run(capsys, "certify", str(path), "--at", "u=1,v1=1,v2=1,v3=1")
    assert code == 0
    certs = [c["witness"].get("certificate") for c in json.loads(out)["checks"]]
    assert certs.count("infinite order") == 4
    code, _, err = run(capsys, "certify", str(path), "--at", "u=1,v1=1,v2=1,v3=0")
    assert code == 2 and "degenerate" in err


def test_verify_failure_exit_code(tmp_path, capsys):
    path = tmp_path / "a.json"
    run(capsys, "construct", "--family", "A", "--f", "x^3+1", "--m", "3,3,3", "--consts", "1,1,1", "--out", str(path))
    doc = json.loads(path.read_text())
    doc["points"][1]["y"] = "3/2"
    path.write_text(dump_document(doc))
    assert run(capsys, "verify", str(path), "--samples", "5")[0] == 3


def test_malformed_document(tmp_path, capsys):
    path = tmp_path / "bad.json"
    path.write_text("{}")
    code, _, err = run(capsys, "verify", str(path))
    assert code == 2 and "malformed" in err


def test_example_command(capsys):
    code, out, _ = run(capsys, "example")
    assert code == 0
    checks = json.loads(out)["verification"]["checks"]
    assert all(c["status"] == "pass" for c in checks)
    assert any(c["name"] == "D matches display" for c in checks)
