import csv
import io
import json
import subprocess
import sys

import pytest

from fatpoints.cli import main
from fatpoints.sweep import ConfigError, parse_mults, parse_range, table_csv


def run_cli(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def test_parse_helpers():
    assert parse_range("3") == (3,)
    assert parse_range("1-4") == (1, 2, 3, 4)
    assert parse_range("2:3") == (2, 3)
    assert parse_mults("1,0-1,2") == ((1,), (0, 1), (2,))
    with pytest.raises(ConfigError):
        parse_mults("1,x")


def test_classify_reports_closed_form(capsys):
    code, out, _ = run_cli(capsys, "classify", "--mults", "1,2,2")
    assert code == 0
    case = json.loads(out)["cases"][0]
    assert case["certified_rho"] == "6/5"
    assert case["classification"] == "odd_sum"


def test_classify_collinear_flag(capsys):
    code, out, _ = run_cli(capsys, "classify", "--mults", "1,2,2", "--collinear")
    assert code == 0 and json.loads(out)["cases"][0]["certified_rho"] == "1/1"


def test_sdefect_zero_exits_cleanly(capsys):
    code, out, _ = run_cli(capsys, "sdefect", "--mults", "1,1,2", "--m-max", "4")
    assert code == 0
    assert json.loads(out)["ok"] is True


def test_table_contents(capsys):
    code, out, _ = run_cli(capsys, "table", "--mults", "1,1,1", "--m-max", "6", "--r-max", "6")
    assert code == 0
    rows = {(m, r): (c, w) for m, r, c, w in json.loads(out)["cases"][0]["table"]}
    assert rows[(2, 2)] == (False, [1, 1, 1])
    assert rows[(4, 3)][0] is True


def test_table_csv(capsys):
    code, out, _ = run_cli(capsys, "table", "--mults", "1,1,1", "--m-max", "6", "--r-max", "6", "--format", "csv")
    assert code == 0
    rows = list(csv.reader(io.StringIO(out)))
    assert rows[0] == ["m", "r", "contained", "witness"]
    assert len(rows) == 37
    assert ["2", "2", "false", "(1,1,1)"] in rows
    assert "\r" not in out
    assert table_csv([]) == "m,r,contained,witness\n"


def test_usage_errors(capsys):
    assert run_cli(capsys, "table")[0] == 2
    assert run_cli(capsys, "classify", "--mults", "1,2")[0] == 2
    assert run_cli(capsys, "table", "--mults", "1,1,1", "--m-max", "0")[0] == 2
    assert run_cli(capsys, "sdefect", "--mults", "1,1,2", "--format", "csv")[0] == 2
    with pytest.raises(SystemExit) as exc:
        main(["nonsense"])
    assert exc.value.code == 2


def test_io_error(capsys, tmp_path):
    code, _, err = run_cli(capsys, "classify", "--mults", "1,1,1", "--out", str(tmp_path / "missing" / "r.json"))
    assert code == 3 and "I/O" in err
    assert run_cli(capsys, "classify", "--config", str(tmp_path / "nope.cfg"))[0] == 3


def test_defect_reported_without_failing(capsys):
    code, out, _ = run_cli(capsys, "sdefect", "--mults", "1,1,1", "--m-max", "2")
    case = json.loads(out)["cases"][0]
    assert code == 0
    assert case["sdefect_zero"] is False and case["witness"] == [1, 1, 1]


def test_counterexample_exit_code(capsys, monkeypatch):
    from fatpoints import fatpoint

    monkeypatch.setattr(fatpoint, "verify_split_leq", lambda mults, N=2: False)
    code, out, _ = run_cli(capsys, "verify-splittings", "--mults", "1,1,2")
    assert code == 1
    assert json.loads(out)["counterexamples"][0]["detail"] == "split_leq"


def test_config_file_and_override(capsys, tmp_path):
    cfg = tmp_path / "run.cfg"
    cfg.write_text("# sweep\nmults = 1,1,1\nm-max = 3\nr_max = 3\nformat = csv\n")
    code, out, _ = run_cli(capsys, "table", "--config", str(cfg))
    assert code == 0 and len(out.strip().splitlines()) == 10
    code, out, _ = run_cli(capsys, "table", "--config", str(cfg), "--m-max", "2")
    assert len(out.strip().splitlines()) == 7
    bad = tmp_path / "bad.cfg"
    bad.write_text("colour = blue\n")
    assert run_cli(capsys, "table", "--config", str(bad))[0] == 2


def test_decompose(capsys):
    code, out, _ = run_cli(capsys, "decompose", "--form", "x0*x2 + x1^2", "--points", "1:0,0:1", "--mults", "1,1")
    assert code == 0
    case = json.loads(out)["cases"][0]
    keys = {tuple(p["key"]) for p in case["decomposition"]}
    assert keys == {(0,), (1,)}
    assert [m["member"] for m in case["membership"]] == [False, True]
    assert run_cli(capsys, "decompose", "--form", "x0", "--points", "1:0,0:1", "--mults", "1")[0] == 2


def test_verify_modes(capsys):
    assert run_cli(capsys, "verify-splittings", "--mults", "1-2,2,2", "--m-max", "3")[0] == 0
    assert run_cli(capsys, "verify-collinear", "--mults", "1,2", "--m-max", "2")[0] == 0
    assert run_cli(capsys, "resurgence", "--mults", "1,1,2", "--m-max", "4", "--r-max", "4")[0] == 0


def test_jobs_do_not_change_output(tmp_path):
    outs = []
    for jobs in ("1", "4"):
        path = tmp_path / f"r{jobs}.json"
        code = main(["resurgence", "--mults", "1,1-2,2", "--m-max", "4", "--r-max", "4",
                     "--jobs", jobs, "--out", str(path), "--no-figures"])
        assert code == 0
        outs.append(path.read_bytes())
    assert outs[0] == outs[1]


def test_timings_opt_in(capsys):
    _, out, _ = run_cli(capsys, "classify", "--mults", "1,1,1")
    assert "timings" not in json.loads(out)
    _, out, _ = run_cli(capsys, "classify", "--mults", "1,1,1", "--timings")
    assert "timings" in json.loads(out)


def test_figures_written_next_to_report(tmp_path):
    out = tmp_path / "tri.json"
    assert main(["resurgence", "--mults", "1,1,1", "--m-max", "4", "--r-max", "4", "--out", str(out)]) == 0
    png = tmp_path / "tri.png"
    assert png.exists() and png.read_bytes()[:8] == b"\x89PNG\r\n\x1a\n"
    out2 = tmp_path / "multi.json"
    assert main(["table", "--mults", "1,1,1-2", "--m-max", "2", "--r-max", "2", "--out", str(out2)]) == 0
    assert sorted(p.name for p in tmp_path.glob("multi_*.png")) == ["multi_2_1_1_1.png", "multi_2_1_1_2.png"]


def test_module_entry_point():
    proc = subprocess.run(
        [sys.executable, "-m", "fatpoints", "classify", "--mults", "1,1,2"],
        capture_output=True, text=True, check=False,
    )
    assert proc.returncode == 0
    assert json.loads(proc.stdout)["cases"][0]["certified_rho"] == "1/1"
