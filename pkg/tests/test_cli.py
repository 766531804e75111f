import json

import pytest

from moufang.cli import EXIT_DATA, EXIT_USAGE, main
from moufang.suites import SUITES


@pytest.fixture(scope="module")
def files(tmp_path_factory):
    root = tmp_path_factory.mktemp("fixtures")
    out = {}
    for name in ("quaternions", "octonions", "sedenions", "lie-cross"):
        path = root / f"{name}.json"
        assert main(["gen", name, "--out", str(path)]) == 0
        out[name] = str(path)
    pair = root / "octonion-pair.json"
    assert main(["gen", "octonions", "--as-pair", "--out", str(pair)]) == 0
    out["octonion-pair"] = str(pair)
    return out


def test_gen_is_deterministic(tmp_path):
    a, b, c = (tmp_path / n for n in ("a.json", "b.json", "c.json"))
    main(["gen", "random-anticomm", "--seed", "42", "--out", str(a)])
    main(["gen", "random-anticomm", "--seed", "42", "--out", str(b)])
    main(["gen", "random-anticomm", "--seed", "43", "--out", str(c)])
    assert a.read_bytes() == b.read_bytes()
    assert a.read_bytes() != c.read_bytes()


def test_gen_as_pair_needs_binary_algebra(tmp_path):
    assert main(["gen", "lie-cross", "--as-pair", "--out", str(tmp_path / "x")]) == EXIT_USAGE


def test_validate(files, capsys):
    assert main(["validate", files["octonions"]]) == 0
    out = capsys.readouterr().out
    assert "binary-algebra  dim=8" in out
    assert "associative: no" in out and "alternative: yes" in out
    assert main(["validate", files["octonion-pair"]]) == 0
    assert "faithful=yes" in capsys.readouterr().out


def test_validate_malformed(tmp_path, capsys):
    bad = tmp_path / "bad.json"
    bad.write_text('{"kind": "anticomm-algebra", "dim": 2, "c": [[0, 0, 1, "1"]]}')
    assert main(["validate", str(bad)]) == EXIT_DATA
    assert "anticommutativity violated" in capsys.readouterr().err
    assert main(["validate", str(tmp_path / "missing.json")]) == EXIT_DATA


def test_octonions_pass_all_suites(files, capsys):
    code = main(["check", files["octonions"], "--suite", ",".join(SUITES)])
    out = capsys.readouterr().out
    assert code == 0, out
    assert f"{len(SUITES)}/{len(SUITES)} suites passed" in out


def test_pair_file_passes_operator_suites(files):
    assert main(["check", files["octonion-pair"], "--suite",
                 "axioms,maurer-cartan,reductivity,equivalence"]) == 0


def test_lie_cross_algebra_suites(files):
    assert main(["check", files["lie-cross"], "--suite", "axioms,maltsev,sagle-yamaguti,equivalence"]) == 0


def test_usage_errors(files, capsys):
    assert main(["check", files["lie-cross"], "--suite", "reductivity"]) == EXIT_USAGE
    assert "operator suites" in capsys.readouterr().err
    assert main(["check", files["octonions"], "--suite", "bogus"]) == EXIT_USAGE
    assert main(["check", files["octonions"], "--suite", "maltsev", "--cap", "0"]) == EXIT_USAGE
    assert main(["check"]) == EXIT_USAGE
    assert main([]) == EXIT_USAGE


def test_exit_code_counts_failed_suites(files):
    code = main(["check", files["sedenions"], files["quaternions"], "--suite",
                 "maurer-cartan,decomposition,maltsev"])
    assert code == 3


def test_machine_report_and_witnesses(files, tmp_path):
    report = tmp_path / "report.json"
    code = main(["check", files["sedenions"], "--suite",
                 "axioms,maurer-cartan,conjugate-yamagutian,hidden-associativity",
                 "--cap", "200", "--seed", "5", "--format", "machine", "--out", str(report)])
    # sedenions are not alternative, so the axioms suite fails too
    assert code == 4
    doc = json.loads(report.read_text())
    assert doc["failures"] == 4 and doc["seed"] == 5 and doc["cap"] == 200
    (inp,) = doc["inputs"]
    assert inp["kind"] == "binary-algebra"
    assert "unverified model: input algebra is not alternative" in inp["notes"]
    witnesses = [
        w for s in inp["suites"] for c in s["checks"] for w in c["witnesses"]
    ]
    assert [w["index"] for w in witnesses] == list(range(len(witnesses)))
    assert len(witnesses) >= 5
    for w in witnesses:
        assert w["lhs"] != w["rhs"]
        assert main(["verify-witness", str(report), "--index", str(w["index"])]) == 0


def test_verify_witness_detects_tampering(files, tmp_path, capsys):
    report = tmp_path / "report.json"
    main(["check", files["sedenions"], "--suite", "maurer-cartan",
          "--format", "machine", "--out", str(report)])
    doc = json.loads(report.read_text())
    check = doc["inputs"][0]["suites"][0]["checks"][0]
    check["witnesses"][0]["rhs"] = check["witnesses"][0]["lhs"]
    tampered = tmp_path / "tampered.json"
    tampered.write_text(json.dumps(doc))
    assert main(["verify-witness", str(tampered), "--index", "0"]) == 1
    doc["inputs"][0]["input_text"] += " "
    tampered.write_text(json.dumps(doc))
    assert main(["verify-witness", str(tampered), "--index", "0"]) == 1
    assert "digest" in capsys.readouterr().out
    assert main(["verify-witness", str(report), "--index", "99"]) == EXIT_DATA


def test_text_report_shows_witness(files, capsys):
    main(["check", files["sedenions"], "--suite", "maurer-cartan"])
    out = capsys.readouterr().out
    assert "[FAIL] maurer-cartan" in out
    assert "witness #0" in out and "lhs:" in out and "rhs:" in out
