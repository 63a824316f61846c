import csv

import pytest
import yaml

from tactics_lab.cli import main, packaged_scenarios


def write_config(tmp_path, text, name="scenario.yaml"):
    path = tmp_path / name
    path.write_text(text)
    return path


COMPARE_CFG = """\
name: mini_compare
command: compare
seed: 1
params:
  boundary: MP
  q_a: 0.6
  N: 6
  rho: 1.0
  q_grid: {start: 0.6, stop: 0.9, step: 0.05}
  pwt_depths: [0, 1]
"""

STOCH_CFG = """\
name: mini_stoch
command: exec-stoch
seed: 11
params:
  X0: 200
  T: 100
  L: 25
  impact: {zeta: 0.1, beta: 0.5}
  kernel: {kind: power, g: 1.0, gamma: 0.5}
  uniform_kernel: {kind: power, g: 1.0, gamma: 0.5}
  volume: {kind: weibull, lambda: 11.79, k: 1.21}
  v0_grid: {start: 15, stop: 25, step: 5}
  d_grid: {start: 4, stop: 12, step: 4}
  n_mc: 300
"""


def read_rows(path):
    with open(path, newline="") as fh:
        return list(csv.reader(fh))


class TestRun:
    def test_compare_outputs(self, tmp_path):
        cfg = write_config(tmp_path, COMPARE_CFG)
        out = tmp_path / "out"
        assert main(["run", str(cfg), "--out", str(out)]) == 0
        rows = read_rows(out / "mini_compare.csv")
        assert rows[0][0] == "q"
        assert "g_PT" in rows[0] and "C_PWT_K1" in rows[0]
        assert len(rows) == 8  # header + 7 grid points
        for cell in rows[1][:-1]:
            float(cell)
        dat = (out / "mini_compare.dat").read_text().splitlines()
        assert dat[0].startswith("# q")
        assert len(dat) == 8
        crossings = read_rows(out / "mini_compare_crossings.csv")
        assert crossings[0] == ["curve_a", "curve_b", "metric", "q_cross"]
        for row in crossings[1:]:
            assert 0.0 < float(row[3]) < 1.0

    def test_manifest_round_trip_is_byte_identical(self, tmp_path):
        cfg = write_config(tmp_path, STOCH_CFG)
        out1 = tmp_path / "a"
        out2 = tmp_path / "b"
        assert main(["run", str(cfg), "--out", str(out1)]) == 0
        manifest = out1 / "mini_stoch_manifest.yaml"
        assert main(["run", str(manifest), "--out", str(out2)]) == 0
        assert (out1 / "mini_stoch.csv").read_bytes() == (out2 / "mini_stoch.csv").read_bytes()
        assert (out1 / "mini_stoch.dat").read_bytes() == (out2 / "mini_stoch.dat").read_bytes()

    def test_seed_override_changes_mc_output(self, tmp_path):
        cfg = write_config(tmp_path, STOCH_CFG)
        out1 = tmp_path / "a"
        out2 = tmp_path / "b"
        assert main(["run", str(cfg), "--out", str(out1)]) == 0
        assert main(["run", str(cfg), "--seed", "999", "--out", str(out2)]) == 0
        assert (out1 / "mini_stoch.csv").read_bytes() != (out2 / "mini_stoch.csv").read_bytes()
        manifest = yaml.safe_load((out2 / "mini_stoch_manifest.yaml").read_text())
        assert manifest["seed"] == 999

    def test_thread_count_does_not_change_bytes(self, tmp_path, monkeypatch):
        cfg = write_config(tmp_path, STOCH_CFG)
        monkeypatch.setenv("TACTICS_LAB_THREADS", "1")
        out1 = tmp_path / "a"
        assert main(["run", str(cfg), "--out", str(out1)]) == 0
        monkeypatch.setenv("TACTICS_LAB_THREADS", "8")
        out2 = tmp_path / "b"
        assert main(["run", str(cfg), "--out", str(out2)]) == 0
        assert (out1 / "mini_stoch.csv").read_bytes() == (out2 / "mini_stoch.csv").read_bytes()


class TestExitCodes:
    def test_missing_file(self, capsys):
        assert main(["run", "/nonexistent/nope.yaml"]) == 2
        assert "config error" in capsys.readouterr().err

    def test_unknown_key_rejected(self, tmp_path, capsys):
        cfg = write_config(tmp_path, COMPARE_CFG + "  typo_key: 1\n")
        assert main(["run", str(cfg)]) == 2
        assert "typo_key" in capsys.readouterr().err

    def test_unknown_command(self, tmp_path, capsys):
        cfg = write_config(tmp_path, "name: x\ncommand: fly\nparams: {}\n")
        assert main(["run", str(cfg)]) == 2
        err = capsys.readouterr().err
        assert "command" in err

    def test_empty_grid(self, tmp_path, capsys):
        bad = COMPARE_CFG.replace("{start: 0.6, stop: 0.9, step: 0.05}",
                                  "{start: 0.9, stop: 0.6, step: 0.05}")
        cfg = write_config(tmp_path, bad)
        assert main(["run", str(cfg)]) == 2
        assert "q_grid" in capsys.readouterr().err

    def test_missing_required_field(self, tmp_path, capsys):
        bad = COMPARE_CFG.replace("  q_a: 0.6\n", "")
        cfg = write_config(tmp_path, bad)
        assert main(["run", str(cfg)]) == 2
        assert "q_a" in capsys.readouterr().err

    def test_infeasible_problem_exit_code(self, tmp_path, capsys):
        bad = STOCH_CFG.replace("X0: 200", "X0: 999999")
        cfg = write_config(tmp_path, bad)
        assert main(["run", str(cfg)]) == 3
        assert "infeasible" in capsys.readouterr().err

    def test_invalid_yaml(self, tmp_path, capsys):
        cfg = write_config(tmp_path, "name: [unclosed\n")
        assert main(["run", str(cfg)]) == 2


class TestListExamples:
    def test_all_figures_present(self, capsys):
        assert main(["list-examples"]) == 0
        out = capsys.readouterr().out
        for fig in range(1, 8):
            assert f"fig{fig}" in out

    def test_packaged_scenarios_parse(self):
        from tactics_lab.cli import load_config
        for path in packaged_scenarios():
            cfg = load_config(path)
            assert cfg["command"]

    def test_run_by_bare_name(self, tmp_path):
        assert main(["run", "allocate_zones", "--out", str(tmp_path)]) == 0
        rows = read_rows(tmp_path / "allocate_zones.csv")
        assert rows[0] == ["zone", "rank", "tactic"]
        assert ["below_lower", "1", "utt"] in rows
