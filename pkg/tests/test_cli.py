import csv
import io
import json

import pytest

from app.cli import EXIT_OK, EXIT_USAGE, EXIT_VERDICT, n_values, run


def invoke(capsys, *argv):
    code = run(list(argv))
    return code, capsys.readouterr()


def test_niven_subcommand(capsys):
    code, out = invoke(capsys, "niven", "1/5")
    assert code == EXIT_OK
    record = json.loads(out.out)
    assert record["verdicts"]["cosine"]["status"] == "IRRATIONAL"


def test_chsh_output_is_byte_identical(capsys):
    _, first = invoke(capsys, "chsh", "--n", "1000", "--seed", "42")
    code, second = invoke(capsys, "chsh", "--n", "1000", "--seed", "42")
    assert code == EXIT_OK
    assert first.out == second.out
    assert json.loads(first.out)["seed"] == 42


@pytest.mark.parametrize(
    "argv",
    [
        ["chsh", "--n", "4"],
        ["teleport"],
        ["qubit", "--n", "4", "--m", "-1"],
        ["niven"],
        ["ghz"],
        ["kqubit", "--tree", "not json"],
    ],
)
def test_usage_errors_exit_2(capsys, argv):
    code, out = invoke(capsys, *argv)
    assert code == EXIT_USAGE
    assert out.out == ""


def test_verdict_failure_exits_1(capsys):
    code, out = invoke(capsys, "mz", "--phi", "0", "--mode", "which-way", "--epsilon", "1/1000", "--n", "10")
    assert code == EXIT_VERDICT
    record = json.loads(out.out)
    assert record["error"].startswith("NoCandidateError")


def test_out_and_formats(capsys, tmp_path):
    target = tmp_path / "bell.json"
    code, out = invoke(capsys, "bell", "--n", "2", "--mb", "1", "--out", str(target))
    assert code == EXIT_OK and out.out == ""
    assert json.loads(target.read_text())["statistics"]["correlation"] == "-1/2"

    _, out = invoke(capsys, "bell", "--n", "2", "--mb", "1", "--format", "csv")
    rows = list(csv.DictReader(io.StringIO(out.out)))
    assert rows[0]["statistics.correlation"] == "-1/2"

    _, out = invoke(capsys, "bell", "--n", "2", "--mb", "1", "--format", "text", "--timing")
    assert "verdicts.law_holds: True" in out.out
    assert "wall_time: " in out.out


def test_evolve_with_nulls(capsys):
    code, out = invoke(capsys, "evolve", "--n", "2", "--nx", "1", "--program", "[[1, 1], [1, 0]]")
    assert code == EXIT_OK
    record = json.loads(out.out)
    assert record["verdicts"]["round_trip"] is True
    assert record["statistics"]["correlation_with_start"] == "1/7"


def test_quadruple_dependent_flag(capsys):
    _, out = invoke(capsys, "quadruple", "--dependent")
    assert json.loads(out.out)["verdicts"]["cos_x1y1"]["status"] == "DEGENERATE"


def test_sweep_rows_in_order(capsys):
    code, out = invoke(capsys, "sweep", "chsh", "--ns", "8,16,32", "--seed", "3")
    assert code == EXIT_OK
    rows = list(csv.DictReader(io.StringIO(out.out)))
    assert [int(r["N"]) for r in rows] == [8, 16, 32]
    assert {r["experiment"] for r in rows} == {"chsh"}
    assert {r["headline"] for r in rows} == {"S_minus_tsirelson"}
    assert len({r["seed"] for r in rows}) == 3
    _, again = invoke(capsys, "sweep", "chsh", "--ns", "8,16,32", "--seed", "3")
    assert again.out == out.out


def test_sweep_to_file(capsys, tmp_path):
    target = tmp_path / "rows.csv"
    code, _ = invoke(capsys, "sweep", "bell", "--ns", "2:8", "--mb", "1", "--out", str(target))
    assert code == EXIT_OK
    rows = list(csv.DictReader(io.StringIO(target.read_text())))
    assert [r["value"] for r in rows] == ['"-1/2"', '"-3/4"', '"-7/8"']


@pytest.mark.parametrize(
    "argv",
    [
        ["sweep", "chsh", "--ns", "16,8"],
        ["sweep", "chsh", "--ns", "8,8"],
        ["sweep", "chsh", "--ns", "16:8"],
        ["sweep", "chsh", "--ns", "8,16", "--n", "4"],
        ["sweep", "niven", "--ns", "8"],
        ["sweep", "chsh", "--ns", "8", "--bogus"],
    ],
)
def test_sweep_usage_errors(capsys, argv):
    assert invoke(capsys, *argv)[0] == EXIT_USAGE


def test_sweep_stops_at_first_failing_row(capsys):
    code, out = invoke(capsys, "sweep", "uncertainty", "--ns", "4,8", "--m", "12")
    assert code == EXIT_USAGE
    assert out.out.splitlines() == ["N,seed,experiment,headline,value,error"]


def test_n_values():
    assert n_values("8:64") == [8, 16, 32, 64]
    assert n_values("8, 16") == [8, 16]
