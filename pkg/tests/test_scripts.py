import csv
import io
import subprocess
import sys
from pathlib import Path

SCRIPTS = Path(__file__).resolve().parent.parent / "scripts"


def run(name, *args):
    return subprocess.run([sys.executable, str(SCRIPTS / name), *args], capture_output=True, text=True)


def test_census_table_small():
    res = run("census_table.py", "--d-max", "3", "--k-max", "2")
    assert res.returncode == 0
    rows = list(csv.DictReader(io.StringIO(res.stdout)))
    assert all(int(r["classes"]) <= int(r["d"]) for r in rows)
    # k = d = 2 needs gcd(r, 2) = 1, leaving the odd residue only
    assert [r["residue"] for r in rows if (r["d"], r["k"]) == ("2", "2")] == ["1"]


def test_run_verification_writes_records(tmp_path):
    out = tmp_path / "v.jsonl"
    res = run("run_verification.py", "--suite", "round_trips", "--grid", "5,5,3,2,2", "--out", str(out))
    assert res.returncode == 0
    assert out.read_text().count("\n") == 1
