"""End-to-end tests for the command line interface."""

from __future__ import annotations

import random
import subprocess
import sys

import pytest

from sumfree import (
    Falsified,
    IntSet,
    format_set_text,
    parse_instance,
    parse_measure,
    parse_set_text,
    uniform_measure,
    write_set_file,
)
from sumfree.cli import main
from sumfree.harness import random_drop_instance
from sumfree.measures import build_mu


@pytest.fixture()
def set_file(tmp_path):
    def write(name, values):
        path = tmp_path / name
        write_set_file(str(path), IntSet.of(values))
        return str(path)

    return write


def test_check_reports_violation(capsys, set_file):
    path = set_file("a.txt", [1, 2, 3])
    assert main(["check", "--k", "2", "--in", path]) == 0
    out = capsys.readouterr().out
    assert "2-sum-free: false" in out
    assert "violation: 1+1 = 2" in out


def test_check_clean_set(capsys, set_file):
    path = set_file("a.txt", range(1, 100, 2))
    assert main(["check", "--k", "2", "--in", path]) == 0
    assert "2-sum-free: true" in capsys.readouterr().out


def test_check_strong(capsys, set_file):
    path = set_file("a.txt", [2, 3])
    assert main(["check", "--k", "3", "--in", path, "--strong"]) == 0
    assert "strongly-3-sum-free: true" in capsys.readouterr().out
    bad = set_file("b.txt", [1, 2])
    assert main(["check", "--k", "3", "--in", bad, "--strong"]) == 0
    out = capsys.readouterr().out
    assert "strongly-3-sum-free: false" in out
    assert "(arity 2)" in out


def test_solve_max(capsys, set_file):
    path = set_file("a.txt", range(1, 11))
    assert main(["solve", "max", "--k", "2", "--in", path, "--algo", "brute"]) == 0
    out = capsys.readouterr().out
    assert "size=5 status=optimal" in out
    witness = parse_set_text(out.split("\n", 1)[1])
    assert len(witness) == 5


def test_extract_erdos(capsys, set_file):
    path = set_file("a.txt", [1, 2, 3])
    assert main(["extract", "erdos", "--k", "2", "--in", path]) == 0
    out = capsys.readouterr().out
    assert "dilator=7/36" in out
    assert "score=2" in out
    assert "method=sweep" in out


def test_extract_erdos_sampled(capsys, set_file):
    path = set_file("a.txt", range(1, 30))
    code = main(
        ["extract", "erdos", "--k", "2", "--in", path, "--samples", "200", "--seed", "9"]
    )
    assert code == 0
    out = capsys.readouterr().out
    assert "method=sampled" in out


def test_extract_folner(capsys, set_file):
    path = set_file("a.txt", range(1, 9))
    assert main(["extract", "folner", "--k", "2", "--in", path, "--grid", "2,2"]) == 0
    out = capsys.readouterr().out
    assert "dilator=" in out
    assert "lower_bound=" in out


def test_folner_gen_stdout(capsys):
    assert main(["folner", "gen", "--grid", "2,2"]) == 0
    assert capsys.readouterr().out == "1\n2\n3\n6\n"


def test_folner_gen_to_file(tmp_path, capsys):
    out_path = tmp_path / "grid.txt"
    assert main(["folner", "gen", "--grid", "3", "--out", str(out_path)]) == 0
    assert "wrote 27 elements" in capsys.readouterr().out
    assert len(parse_set_text(out_path.read_text())) == 27


def test_folner_gen_cap_exit_code(capsys):
    assert main(["folner", "gen", "--grid", "9"]) == 3
    assert "resource limit" in capsys.readouterr().err


def test_folner_defect(capsys):
    assert main(["folner", "defect", "--grid", "3,3", "--a", "2"]) == 0
    assert capsys.readouterr().out == "defect=2/3 closed_form=2/3 match=true\n"


def test_periodic_hull(capsys, set_file):
    path = set_file("a.txt", range(1, 11, 2))
    assert main(["periodic", "hull", "--Q", "2", "--n0", "10", "--in", path]) == 0
    assert capsys.readouterr().out == "modulus=2 residues=1\n"


def test_periodic_fls_step_containment(capsys, set_file):
    path = set_file("odds.txt", range(1, 1001, 2))
    code = main(
        [
            "periodic", "fls-step", "--k", "2", "--Q", "2", "--i", "3",
            "--eps", "1/6", "--n0", "100", "--auto-schedule", "200", "--in", path,
        ]
    )
    assert code == 0
    out = capsys.readouterr().out
    assert "outcome=periodic-containment" in out
    assert "residues=1" in out


def test_periodic_fls_step_density_drop(capsys, set_file):
    path = set_file("upper.txt", range(51, 101))
    code = main(
        [
            "periodic", "fls-step", "--k", "2", "--Q", "7", "--i", "3",
            "--eps", "1/6", "--n0", "100", "--auto-schedule", "200", "--in", path,
        ]
    )
    assert code == 0
    out = capsys.readouterr().out
    assert "outcome=density-drop index=1 density=1/384" in out


def test_periodic_fls_step_bad_eps_is_parameter_error(capsys, set_file):
    path = set_file("odds.txt", range(1, 1001, 2))
    code = main(
        [
            "periodic", "fls-step", "--k", "2", "--Q", "2", "--i", "3",
            "--eps", "0/1", "--n0", "100", "--auto-schedule", "200", "--in", path,
        ]
    )
    assert code == 2
    assert "error:" in capsys.readouterr().err


def test_periodic_fls_step_falsified_writes_instance(
    monkeypatch, tmp_path, capsys, set_file
):
    # an honest falsification is unreachable on this corpus, so splice
    # one in at the seam to check the reporting contract end to end
    inst = random_drop_instance(2, random.Random(3))
    monkeypatch.setattr(
        "sumfree.cli.fls_step", lambda *a, **kw: Falsified(inst, "spliced for test")
    )
    path = set_file("odds.txt", range(1, 1001, 2))
    target = tmp_path / "falsified.json"
    code = main(
        [
            "periodic", "fls-step", "--k", "2", "--Q", "2", "--i", "3",
            "--eps", "1/6", "--n0", "100", "--auto-schedule", "200",
            "--in", path, "--falsified-out", str(target),
        ]
    )
    assert code == 4
    out = capsys.readouterr().out
    assert "outcome=falsified" in out
    assert parse_instance(target.read_text()) == inst


def test_measure_build_mu(capsys):
    code = main(
        ["measure", "build-mu", "--k", "2", "--Q", "2", "--steps", "2", "--provider", "uniform"]
    )
    assert code == 0
    got = parse_measure(capsys.readouterr().out)
    assert got == build_mu(2, 2, 2, uniform_measure, n_start=1)


def test_measure_build_mu_unknown_provider(capsys):
    code = main(
        ["measure", "build-mu", "--k", "2", "--Q", "2", "--steps", "2", "--provider", "zeta"]
    )
    assert code == 2


def test_experiment_defect_csv(capsys):
    assert main(["experiment", "defect", "--a", "2", "--m-max", "4"]) == 0
    out = capsys.readouterr().out
    lines = out.strip().splitlines()
    assert lines[0] == "m,defect_exact,closed_form_exact,match"
    assert len(lines) == 5
    assert all(line.endswith(",true") for line in lines[1:])


def test_experiment_ratio_csv_deterministic(capsys):
    assert main(["experiment", "ratio", "--k", "2", "--m-max", "2"]) == 0
    first = capsys.readouterr().out
    assert main(["experiment", "ratio", "--k", "2", "--m-max", "2"]) == 0
    second = capsys.readouterr().out
    assert first == second
    header = first.splitlines()[0]
    assert header.startswith("m,grid_size,max_size,fraction_exact")


def test_experiment_extract_csv_deterministic(capsys):
    argv = [
        "experiment", "extract", "--k", "2", "--trials", "3", "--size", "8",
        "--seed", "5", "--magnitude", "500",
    ]
    assert main(argv) == 0
    first = capsys.readouterr().out
    assert main(argv) == 0
    assert first == capsys.readouterr().out
    rows = first.strip().splitlines()
    assert rows[0].startswith("trial,n,extracted_size,guarantee")
    assert rows[-1].startswith("mean,")


def test_usage_errors_return_two(capsys):
    assert main(["check", "--k", "not-an-int", "--in", "x"]) == 2
    assert main(["no-such-command"]) == 2
    assert main([]) == 2


def test_help_returns_zero(capsys):
    assert main(["--help"]) == 0


def test_missing_file_is_parameter_error(capsys):
    assert main(["check", "--k", "2", "--in", "/nonexistent/path.txt"]) == 2


def test_console_script_entry_point(tmp_path):
    path = tmp_path / "set.txt"
    path.write_text("2\n3\n")
    proc = subprocess.run(
        [sys.executable, "-m", "sumfree.cli", "check", "--k", "2", "--in", str(path)],
        capture_output=True,
        text=True,
    )
    assert proc.returncode == 0
    assert "2-sum-free: true" in proc.stdout
