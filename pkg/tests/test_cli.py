import json
import subprocess
import sys

import pytest

from pillowcase.cli import main
from pillowcase.qgroup import cosine_operator
from pillowcase.serialize import parse_matrix
from pillowcase.suites import SUITES, SuiteParams, run_suite, run_suites


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def test_uq_verify(capsys):
    code, out, _ = run(capsys, "uq-verify", "--r", "5")
    data = json.loads(out)
    assert code == 0 and data["passed"]
    assert [row["k"] for row in data["relations"]] == [1, 2, 3, 4]


def test_uq_verify_csv(capsys):
    code, out, _ = run(capsys, "uq-verify", "--r", "4", "--format", "csv")
    assert code == 0
    assert out.splitlines()[0].startswith("k,")
    assert len(out.splitlines()) == 4


def test_qgroup_matrix_exact_round_trips(capsys):
    code, out, _ = run(capsys, "qgroup", "matrix", "--r", "5", "--p", "2", "--q", "-1")
    assert code == 0
    assert parse_matrix(json.loads(out)) == cosine_operator(2, -1, 5)


def test_qgroup_matrix_complex(capsys):
    code, out, _ = run(capsys, "qgroup", "matrix", "--r", "3", "--p", "0", "--q", "1", "--op", "kauffman", "--complex")
    entries = json.loads(out)["complex"]
    assert code == 0
    assert entries[0][0]["re"] == pytest.approx(-1.0)
    assert entries[1][1]["re"] == pytest.approx(1.0)


def test_star_command(capsys):
    code, out, _ = run(capsys, "star", "--mode", "exact", "--r", "10", "--expr-a", "c(1,0)", "--expr-b", "c(0,1)")
    assert code == 0
    assert json.loads(out)["product"]["expr"] == "-t^19*c(1,-1) + t*c(1,1)"


def test_star_formal_reports_ratio(capsys):
    code, out, _ = run(capsys, "star", "--mode", "formal", "--expr-a", "c(1,0)", "--expr-b", "c(0,1)")
    data = json.loads(out)
    assert code == 0
    assert data["correspondence"]["ratio_to_poisson_bracket"] == "1/2"


def test_star_bad_expression(capsys):
    code, _, err = run(capsys, "star", "--expr-a", "c(1,", "--expr-b", "c(0,1)")
    assert code == 2 and "error" in err


def test_theta_check(capsys):
    code, out, _ = run(capsys, "theta", "check", "--N", "8")
    data = json.loads(out)
    assert code == 0 and data["passed"]
    assert [s["name"] for s in data["suites"]] == ["theta-identities", "cocycle"]


def test_theta_check_rejects_odd_level(capsys):
    code, _, err = run(capsys, "theta", "check", "--N", "7")
    assert code == 2 and "even" in err


def test_verify_equivalence_writes_report(tmp_path, capsys, monkeypatch):
    monkeypatch.setenv("SOURCE_DATE_EPOCH", "0")
    out = tmp_path / "report.json"
    code, _, _ = run(capsys, "verify", "equivalence", "--r-range", "3:4", "--pq-range", "-2:2", "--tol", "1e-8", "--out", str(out))
    data = json.loads(out.read_text())
    assert code == 0 and data["passed"]
    assert data["parameters"]["pq_range"] == [-2, 2]
    assert len(data["suites"][0]["details"]["cases"]) == 50
    assert data["timestamp"] == "0"


def test_report_is_byte_stable(tmp_path, capsys, monkeypatch):
    monkeypatch.delenv("SOURCE_DATE_EPOCH", raising=False)
    paths = [tmp_path / "a.json", tmp_path / "b.json"]
    for p in paths:
        run(capsys, "suite", "cocycle", "theta-identities", "--r-range", "3:4", "--seed", "5", "--out", str(p))
    assert paths[0].read_bytes() == paths[1].read_bytes()


def test_failing_suite_exits_one(capsys):
    code, out, _ = run(capsys, "suite", "cocycle", "--tol", "1e-30")
    assert code == 1
    assert not json.loads(out)["passed"]


def test_csv_summary(capsys):
    code, out, _ = run(capsys, "suite", "uq-relations", "--r-range", "3:5", "--format", "csv")
    lines = out.splitlines()
    assert code == 0
    assert lines[0] == "suite,cases,failures,worst_residual,passed"
    assert lines[1].startswith("uq-relations,9,0,")


@pytest.mark.parametrize(
    "argv",
    [
        ["suite", "bogus"],
        ["suite", "cocycle", "--r-range", "5:3"],
        ["suite", "cocycle", "--r-range", "2:4"],
        ["suite", "cocycle", "--tol", "-1"],
        ["suite", "cocycle", "--quad-y", "30"],
        ["suite", "star-formal", "--trunc-order", "11"],
        ["uq-verify", "--r", "2"],
        ["uq-verify", "--r", "abc"],
        ["suite", "cocycle", "--out", "/nonexistent-dir/x.json"],
    ],
)
def test_configuration_errors_exit_two(argv, capsys):
    try:
        code = main(argv)
    except SystemExit as exc:
        code = exc.code
    assert code == 2
    assert capsys.readouterr().err


def test_thread_cap_validated(capsys, monkeypatch):
    monkeypatch.setenv("MODULI_THREADS", "zero")
    code, _, err = run(capsys, "suite", "uq-relations", "--r-range", "3:3")
    assert code == 2 and "MODULI_THREADS" in err


def test_threaded_run_matches_serial(monkeypatch):
    params = SuiteParams(r_range=(3, 5), pq_range=(-2, 2))
    serial = run_suite("equivalence", params).to_json()
    monkeypatch.setenv("MODULI_THREADS", "4")
    assert run_suite("equivalence", params).to_json() == serial


def test_module_entry_point():
    proc = subprocess.run(
        [sys.executable, "-m", "pillowcase", "uq-verify", "--r", "3"], capture_output=True, text=True, check=False
    )
    assert proc.returncode == 0
    assert json.loads(proc.stdout)["passed"]


def test_all_suites_registered():
    assert list(SUITES) == [
        "uq-relations",
        "theta-identities",
        "cocycle",
        "toeplitz-lemmas",
        "equivalence",
        "product-to-sum",
        "kauffman",
        "star-formal",
    ]


@pytest.mark.parametrize("name", ["product-to-sum", "kauffman"])
def test_small_exact_suites(name):
    report = run_suites([name], SuiteParams(r_range=(3, 4), pq_range=(-2, 2)))
    assert report.passed
    assert report.suites[0].cases > 0


def test_kauffman_suite_counts_odd_differences():
    report = run_suite("kauffman", SuiteParams(r_range=(3, 3), pq_range=(-1, 1)))
    # q = +-1 for p in -1..1
    assert report.suites[0].details["odd_q_cases_differing"] == 6
