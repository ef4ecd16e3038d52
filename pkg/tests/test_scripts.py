import subprocess
import sys
from pathlib import Path

SCRIPTS = Path(__file__).resolve().parent.parent / "scripts"


def _run(name, *args):
    return subprocess.run([sys.executable, str(SCRIPTS / name), *args], capture_output=True, text=True, timeout=600)


def test_degree_table():
    p = _run("degree_table.py", "--max-n", "3")
    assert p.returncode == 0
    assert "(13; 6,6,6,6,2,2,2,2,2,2)" in p.stdout


def test_run_counterexample(tmp_path):
    out = tmp_path / "r.json"
    p = _run("run_counterexample.py", "--n", "1", "--out", str(out))
    assert p.returncode == 0 and "INCONCLUSIVE" in p.stdout
    assert out.exists()
