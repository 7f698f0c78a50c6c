import csv
import io
import json
import os
import subprocess
import sys

import pytest

from heron_somos.cli import EXIT_FAIL, EXIT_OK, EXIT_USAGE, THREADS_ENV, main, run_orbit, run_table


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def test_table_text(capsys):
    code, out, _ = run(capsys, "table", "1")
    assert code == EXIT_OK
    lines = out.splitlines()
    assert lines[0].split() == ["n", "a", "b", "c", "k", "l", "area"]
    assert lines[1].split() == ["1", "73", "51", "26", "35/2", "97/2", "420"]


def test_table_json_and_csv(capsys):
    code, out, _ = run(capsys, "table", "4", "--format", "json", "--max-n", "3")
    data = json.loads(out)
    assert data["table"] == 4 and len(data["rows"]) == 3
    assert data["rows"][2][1:5] == ["11*37^2", "2^3*5*7^3", "3*5^3*7*11", "2^5*3"]
    code, out, _ = run(capsys, "table", "7", "--format", "csv")
    rows = list(csv.reader(io.StringIO(out)))
    assert rows[0] == ["n", "u", "v", "f"]
    assert rows[10] == ["9", "1", "inf", "inf"]


def test_table_out_of_range(capsys):
    code, _, err = run(capsys, "table", "9")
    assert code == EXIT_USAGE and "between 1 and 7" in err


def test_unknown_command_and_flag(capsys):
    assert run(capsys, "bogus")[0] == EXIT_USAGE
    assert run(capsys, "table", "1", "--nope")[0] == EXIT_USAGE
    assert run(capsys, "search", "--height", "0")[0] == EXIT_USAGE
    assert run(capsys, "period", "--threads", "x")[0] == EXIT_USAGE


def test_help_exits_cleanly(capsys):
    assert run(capsys, "--help")[0] == EXIT_OK


def test_verify_json(capsys):
    code, out, _ = run(capsys, "verify", "somos", "--max-n", "20")
    report = json.loads(out)
    assert code == EXIT_OK and report["passed"] and report["suite"] == "somos"


def test_verify_text(capsys):
    code, out, _ = run(capsys, "verify", "qrt", "--max-n", "20", "--format", "text")
    assert code == EXIT_OK
    assert out.splitlines()[-1] == "all checks passed"


def test_verify_failure_exit_code(capsys, monkeypatch):
    from heron_somos import cli
    monkeypatch.setattr(cli, "run_verify", lambda *a: {"passed": False, "checks": [], "first_failure": {}})
    assert run(capsys, "verify")[0] == EXIT_FAIL


def test_period_json_lines(capsys):
    code, out, _ = run(capsys, "period", "--seq", "S", "--prime-bound", "30")
    records = [json.loads(line) for line in out.splitlines()]
    assert code == EXIT_OK
    rec = next(r for r in records if r["p"] == 23)
    assert rec["period"] == 198 and rec["t"] == 9 and rec["B_star"] == 6
    assert set(rec) == {"seq", "p", "t", "A_plus", "A_minus", "B_star", "lstar", "period", "zero_residues",
                        "method"}


def test_period_threads_match(capsys, monkeypatch):
    one = run(capsys, "period", "--prime-bound", "40")[1]
    monkeypatch.setenv(THREADS_ENV, "3")
    three = run(capsys, "period", "--prime-bound", "40")[1]
    assert one == three


def test_bad_thread_env(capsys, monkeypatch):
    monkeypatch.setenv(THREADS_ENV, "zero")
    code, _, err = run(capsys, "period", "--prime-bound", "10")
    assert code == EXIT_USAGE and THREADS_ENV in err


def test_search(capsys):
    code, out, _ = run(capsys, "search", "--height", "12", "--format", "csv")
    rows = list(csv.reader(io.StringIO(out)))
    assert rows[1] == ["1/3", "2/5", "73", "51", "26", "35/2", "97/2", "420", "main-sequence"]


def test_orbit_v_matches_table(capsys):
    code, out, _ = run(capsys, "orbit", "v", "--count", "10")
    rows = list(csv.reader(io.StringIO(out)))
    assert rows[0] == ["n", "v_num", "v_den"]
    cells = ["inf" if d == "0" else (n if d == "1" else f"{n}/{d}") for _, n, d in rows[1:]]
    assert cells == ["inf", "inf", "0", "-1", "7", "-8/7", "1/56", "-399/8", "3128/57", "-455/22287"]


def test_orbit_f_matches_table():
    rows = list(csv.reader(io.StringIO(run_orbit("f", 10))))
    cells = ["inf" if d == "0" else (n if d == "1" else f"{n}/{d}") for _, n, d in rows[1:]]
    assert cells == ["inf", "1", "-1", "2", "3", "-5/7", "11/8", "-37", "-83/57", "274/391"]


def test_orbit_brahma(tmp_path):
    path = tmp_path / "brahma.csv"
    assert main(["orbit", "brahma", "--count", "500", "--out", str(path)]) == EXIT_OK
    rows = list(csv.reader(path.open()))
    assert len(rows) == 501
    assert rows[1][1:] == ["210", "949", "70", "221", "1", "1"]


def test_orbit_approx_column(capsys):
    out = run(capsys, "orbit", "uv", "--count", "3", "--approx")[1]
    header = out.splitlines()[0].split(",")
    assert len(header) > 5 and any("approx" in h for h in header)


def test_unwritable_path(capsys, tmp_path):
    target = tmp_path / "missing" / "out.csv"
    code, _, err = run(capsys, "orbit", "v", "--out", str(target))
    assert code == EXIT_USAGE and err


def test_orbit_rejects_zero_count():
    with pytest.raises(ValueError):
        run_orbit("v", 0)


def test_triangle(capsys):
    code, out, _ = run(capsys, "triangle", "1", "--format", "json")
    data = json.loads(out)
    assert code == EXIT_OK
    assert (data["a"], data["b"], data["c"], data["k"], data["l"]) == (73, 51, 26, "35/2", "97/2")
    assert data["schubert_a"] == ["4", "2/3", "8/3"]
    assert data["brahmagupta"] == {"p": "49/13", "q": "588/13", "r": "210/13"}
    assert data["failed_invariants"] == []


def test_repeated_runs_are_identical(capsys):
    first = run(capsys, "table", "2")[1]
    second = run(capsys, "table", "2")[1]
    assert first == second


def test_run_table_api():
    assert run_table(6, 2).rows[-1] == ["2", "-605", "21", "270", "-896"]


def test_console_script_entry_point():
    proc = subprocess.run([sys.executable, "-m", "heron_somos.cli", "table", "5", "--max-n", "2"],
                          capture_output=True, text=True, env={**os.environ})
    assert proc.returncode == 0
    assert proc.stdout.splitlines()[1].split() == ["0", "1", "inf", "inf"]
