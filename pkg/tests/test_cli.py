import subprocess
import sys

import numpy as np
import pytest

from plasmacyl.cli import ConfigError, main, parse_grid


def _table(text):
    lines = [line for line in text.splitlines() if line and not line.startswith("#")]
    return lines[0].split(","), lines[1:]


def test_parse_grid():
    np.testing.assert_allclose(parse_grid("1e-2:1e2:5"), [1e-2, 1e-1, 1, 10, 100])
    assert parse_grid("0.5").tolist() == [0.5]
    for bad in ("a:b:c", "1:2", "0:1:3", "1:10:0", "nan", "-1"):
        with pytest.raises(ConfigError):
            parse_grid(bad)


def test_f1_table(capsys):
    assert main(["f1", "--model", "dd-te", "--omega-l", "0.1:10:3"]) == 0
    out = capsys.readouterr().out
    assert out.startswith("# plasmacyl")
    cols, rows = _table(out)
    assert len(rows) == 3
    f1 = float(rows[0].split(",")[cols.index("f1")])
    assert f1 == pytest.approx(0.029681, abs=1e-6)


def test_energy_thread_count_does_not_change_output(tmp_path):
    args = ["energy", "--model", "dd-te", "--omega-l", "0.5:5:4", "--radius", "1", "--gap", "0.1"]
    a, b = tmp_path / "a.csv", tmp_path / "b.csv"
    assert main(args + ["--threads", "1", "--out", str(a)]) == 0
    assert main(args + ["--threads", "3", "--out", str(b)]) == 0
    assert _table(a.read_text()) == _table(b.read_text())


@pytest.mark.parametrize("args", [
    ["f0", "--model", "dd-te"],
    ["f0", "--model", "ed-te", "--omega-l", "1"],
    ["f0", "--model", "dd-te", "--omega-l", "1", "--omega", "2", "--gap", "1"],
    ["energy", "--model", "dd-te", "--omega-l", "1"],
    ["f0", "--model", "dd-te", "--omega-l", "1", "--threads", "0"],
])
def test_config_errors_exit_2(args, capsys):
    with pytest.raises(SystemExit) as exc:
        main(args)
    assert exc.value.code == 2
    cap = capsys.readouterr()
    assert cap.out == "" and "configuration error" in cap.err


def test_nonconvergence_exits_1(tmp_path):
    out = tmp_path / "o.csv"
    code = main(["oracle", "--model", "dd-te", "--omega-l", "10", "--radius", "1", "--gap", "0.1",
                 "--max-m", "20", "--out", str(out)])
    assert code == 1
    assert not out.exists()


def test_module_entry_point():
    res = subprocess.run([sys.executable, "-m", "plasmacyl", "verify", "--suite", "specfun"],
                         capture_output=True, text=True, timeout=600)
    assert res.returncode == 0, res.stdout + res.stderr
    assert "PASS" in res.stdout
