import json

import pytest

from gcqc.cli import main, parse_range


def run(capsys, *argv):
    rc = main(list(argv))
    out = capsys.readouterr()
    return rc, out.out, out.err


@pytest.fixture(scope="module")
def files(tmp_path_factory):
    d = tmp_path_factory.mktemp("pent15")
    assert main(["construct", "pentagon15", "--out", str(d)]) == 0
    return d


def test_parse_range():
    assert parse_range("2..6") == [2, 3, 4, 5, 6]
    assert parse_range("3") == [3]
    assert parse_range("") == []
    assert parse_range("4..3") == []


def test_verify_pass_and_fail(capsys, files):
    rc, out, _ = run(capsys, "verify", str(files / "graph.json"), str(files / "code.json"), "-d", "3")
    assert rc == 0 and "PASS" in out
    rc, out, _ = run(capsys, "verify", str(files / "graph.json"), str(files / "code.json"), "-d", "4")
    assert rc == 2 and "FAIL" in out


def test_verify_malformed(capsys, tmp_path, files):
    bad = tmp_path / "bad.json"
    bad.write_text("{not json")
    rc, _, err = run(capsys, "verify", str(bad), str(files / "code.json"), "-d", "3")
    assert rc == 1 and "error" in err
    rc, _, _ = run(capsys, "verify", str(tmp_path / "missing.json"), str(files / "code.json"), "-d", "3")
    assert rc == 1


def test_bounds(capsys):
    rc, out, _ = run(capsys, "bounds", "-n", "90")
    assert rc == 0 and "2^81.918" in out and "81.879" in out


def test_family_csv(capsys):
    rc, out, _ = run(capsys, "family", "-q", "3", "-s", "2..2")
    lines = out.splitlines()
    assert rc == 0 and len(lines) == 2 and lines[1].startswith("3,2,2,10,81,83,84,840,")


def test_family_empty(capsys):
    rc, out, _ = run(capsys, "family", "-s", "5..4")
    assert rc == 0 and out == ""


def test_reproduce_examples(capsys):
    rc, out, _ = run(capsys, "reproduce", "1")
    assert rc == 0 and "2^77" in out and "((85, 2^77, 3" in out
    rc, out, _ = run(capsys, "reproduce", "2")
    assert "2^81.825" in out and "beats stabilizer: True" in out


def test_json_is_stable(capsys):
    _, a, _ = run(capsys, "--json", "reproduce", "pentagon15")
    _, b, _ = run(capsys, "--json", "reproduce", "pentagon15")
    assert a == b
    data = json.loads(a)
    assert data["outputs"]["pentagon15"]["size"] == "128"
    assert "timing" not in data


def test_usage_error(capsys):
    rc, _, _ = run(capsys, "reproduce", "nope")
    assert rc == 1
