import json
import subprocess
import sys

import pytest

from cremona_lab.cli import main, recheck_report


def _run(*args):
    return subprocess.run([sys.executable, "-m", "cremona_lab", *args], capture_output=True, text=True)


@pytest.fixture(scope="module")
def report_n2(tmp_path_factory):
    out = tmp_path_factory.mktemp("r") / "n2.json"
    assert main(["construct", "--n", "2", "--out", str(out)]) == 0
    return out


def test_construct_writes_report(report_n2):
    rep = json.loads(report_n2.read_text())
    assert rep["schema"] == "cremona-lab/1"
    assert rep["verdict"] == "COUNTEREXAMPLE"
    assert rep["curves"]["degree"] == 9
    assert rep["cluster_size"] == 8
    assert "timings" not in rep
    assert [c["kind"] for c in rep["certificates"]].count("Unicuspidal") == 2


def test_construct_is_byte_deterministic(report_n2, tmp_path):
    again = tmp_path / "again.json"
    assert main(["construct", "--n", "2", "--out", str(again)]) == 0
    assert again.read_bytes() == report_n2.read_bytes()


def test_construct_n1_inconclusive(tmp_path):
    out = tmp_path / "n1.json"
    assert main(["construct", "--n", "1", "--out", str(out)]) == 0
    assert json.loads(out.read_text())["verdict"].startswith("INCONCLUSIVE")


@pytest.mark.parametrize("args", [["--lambda", "1"], ["--mu", "0"], ["--n", "0"], ["--a", "1,x"], ["--n", "2", "--a", "1"]])
def test_invalid_config_exit_2(args):
    assert main(["construct", *args]) == 2


def test_config_file_and_flag_override(tmp_path):
    cfg = tmp_path / "c.cfg"
    cfg.write_text("n = 2\nlambda = 1\n")
    assert main(["construct", "--config", str(cfg)]) == 2
    out = tmp_path / "o.json"
    assert main(["construct", "--config", str(cfg), "--lambda", "3", "--n", "1", "--out", str(out)]) == 0
    rep = json.loads(out.read_text())
    assert rep["config"]["lambda"] == "3" and rep["config"]["n"] == 1


def test_graph(capsys):
    assert main(["graph", "--n", "2"]) == 0
    dot = capsys.readouterr().out
    assert dot.count("label=") == 9
    assert main(["graph", "--n", "1"]) == 0
    assert capsys.readouterr().out.count("label=") == 7
    assert main(["graph", "--n", "0"]) == 2


def test_recheck_untouched(report_n2):
    p = _run("recheck", str(report_n2))
    assert p.returncode == 0, p.stdout
    assert p.stdout.count("ok ") == 9


def test_recheck_other_tool_version(report_n2, tmp_path):
    rep = json.loads(report_n2.read_text())
    rep["tool_version"] = "99.0"
    assert recheck_report(rep)[0] == 0


def test_recheck_flipped_coefficient(report_n2, tmp_path):
    text = report_n2.read_text()
    rep = json.loads(text)
    C = rep["curves"]["C"]
    assert " - 18 x^8 y " in C
    rep["curves"]["C"] = C.replace(" - 18 x^8 y ", " - 19 x^8 y ", 1)
    for cert in rep["certificates"]:
        if cert["kind"] == "Degree":
            cert["evidence"]["C"] = rep["curves"]["C"]
        if cert["kind"] == "Unicuspidal" and cert["subject"] == "C":
            cert["evidence"]["equation"] = rep["curves"]["C"]
    bad = tmp_path / "bad.json"
    bad.write_text(json.dumps(rep))
    p = _run("recheck", str(bad))
    assert p.returncode == 1
    assert "FAIL Degree:C,D" in p.stdout


def test_recheck_malformed(tmp_path):
    bad = tmp_path / "bad.json"
    bad.write_text("{not json")
    assert main(["recheck", str(bad)]) == 2
    bad.write_text(json.dumps({"schema": "cremona-lab/1"}))
    assert main(["recheck", str(bad)]) == 2
    bad.write_text(json.dumps({"schema": "other/9", "certificates": []}))
    assert main(["recheck", str(bad)]) == 2
    assert main(["recheck", str(tmp_path / "missing.json")]) == 2


def test_timings_flag(tmp_path):
    out = tmp_path / "t.json"
    assert main(["construct", "--n", "1", "--timings", "--out", str(out)]) == 0
    assert "total_seconds" in json.loads(out.read_text())["timings"]
