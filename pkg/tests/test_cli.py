import io
import json
import subprocess
import sys

import pytest

from trimix.cli import run


def call(*argv):
    out = io.StringIO()
    code = run(list(argv), out)
    return code, out.getvalue()


def test_count():
    code, out = call("count", "--form", "tri:1^2 3^2", "--n", "0..10")
    assert code == 0
    assert json.loads(out)["counts"] == [1, 2, 1, 4, 6, 2, 8, 8, 1, 12, 12]


def test_count_tsv():
    code, out = call("count", "--form", "tri:1^4", "--n", "1", "--tsv")
    assert code == 0 and out == "1\t4\n"


def test_solve_table3_row1():
    code, out = call("solve", "--form", "st:1^1 3^1 ; 2^1 6^1")
    data = json.loads(out)
    assert code == 0
    assert data["t"] == ["-1/24", "1/24", "1/8", "0", "-1/8", "0"]
    assert data["space"] == "M2(12,chi0)"


def test_series_and_basis():
    code, out = call("series", "--eta", "1^1", "--prec", "3")
    assert code == 0 and json.loads(out)
    code, out = call("basis", "--space", "2,6", "--terms", "3")
    assert [b["q"] for b in json.loads(out)["basis"]][0] == ["1", "24", "24"]


def test_eta_check():
    code, out = call("eta-check", "--name", "Delta_3_12_chi-3")
    data = json.loads(out)
    assert code == 0 and data["isCusp"] and data["primitive_character"] == "chi-3"


def test_verify_exit_code_tracks_reports():
    code, out = call("verify", "--suite", "pk")
    assert code == (0 if all(json.loads(line)["passed"] for line in out.splitlines()) else 1)


@pytest.mark.parametrize(
    "argv",
    [
        ["count", "--form", "bogus"],
        ["count", "--form", "tri:1^2", "--n", "x..y"],
        ["solve", "--form", "tri:1^4"],
        ["basis", "--space", "5,7"],
        ["eta-check", "--name", "nope"],
        ["tables", "--regen"],
    ],
)
def test_errors_exit_2(argv, monkeypatch):
    monkeypatch.delenv("TRIMIX_FIXTURE_DIR", raising=False)
    assert call(*argv)[0] == 2


def test_regen_round_trip(tmp_path, monkeypatch):
    monkeypatch.setenv("TRIMIX_FIXTURE_DIR", str(tmp_path))
    code, out = call("tables", "--regen")
    assert code == 0
    assert json.loads(out)["unsolved"] == 0
    code, _ = call("tables", "--table", "T1", "--tsv")
    assert code == 0


def test_console_script():
    r = subprocess.run([sys.executable, "-m", "trimix.cli", "count", "--form", "tri:1^2", "--n", "0..3", "--tsv"],
                       capture_output=True, text=True)
    assert r.returncode == 0 and r.stdout.splitlines()[1] == "1\t2"
