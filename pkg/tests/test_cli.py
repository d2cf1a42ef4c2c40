"""End-to-end CLI tests driving the documented subcommands and exit codes."""

import json
import subprocess
import sys

import pytest

from graphcorr.cli import main


def run_cli(*args):
    return main([str(a) for a in args])


@pytest.fixture
def gen_dir(tmp_path):
    out = tmp_path / "inst"
    code = run_cli(
        "gen", "--n", 16, "--s", 8, "--rho", 0.95, "--hypothesis", "alt",
        "--seed", 7, "--out", out,
    )
    assert code == 0
    return out


class TestGen:
    def test_writes_graphs_and_metadata(self, gen_dir):
        assert (gen_dir / "g1.csv").exists()
        assert (gen_dir / "g2.csv").exists()
        meta = json.loads((gen_dir / "meta.json").read_text())
        assert meta["hypothesis"] == "alt"
        assert len(meta["idx1"]) == 8
        assert len(meta["latent_perm"]) == 16

    def test_null_needs_no_rho(self, tmp_path):
        code = run_cli(
            "gen", "--n", 6, "--s", 3, "--hypothesis", "null", "--seed", 1,
            "--out", tmp_path / "null_inst",
        )
        assert code == 0

    def test_alt_without_rho_is_parameter_error(self, tmp_path):
        code = run_cli(
            "gen", "--n", 6, "--s", 3, "--hypothesis", "alt", "--seed", 1,
            "--out", tmp_path / "x",
        )
        assert code == 2


class TestDetectAndExact:
    def test_detect_prints_result(self, gen_dir, capsys):
        code = run_cli(
            "detect", "--g1", gen_dir / "g1.csv", "--g2", gen_dir / "g2.csv",
            "--kernel", "mse", "--m", 4, "--k1", 3, "--k2", 2,
            "--n1", 20, "--n2", 10, "--tau", -1.0, "--seed", 5,
        )
        out = capsys.readouterr().out
        assert code == 0
        assert "statistic=" in out
        assert "decision=" in out
        assert "mapping=" in out

    def test_exact_prints_result(self, gen_dir, capsys):
        code = run_cli(
            "exact", "--g1", gen_dir / "g1.csv", "--g2", gen_dir / "g2.csv",
            "--kernel", "overlap", "--m", 3,
        )
        out = capsys.readouterr().out
        assert code == 0
        assert "statistic=" in out

    def test_exact_budget_exit_code(self, gen_dir):
        code = run_cli(
            "exact", "--g1", gen_dir / "g1.csv", "--g2", gen_dir / "g2.csv",
            "--kernel", "overlap", "--m", 4, "--budget", 10,
        )
        assert code == 3

    def test_missing_file_exit_code(self, tmp_path):
        code = run_cli(
            "exact", "--g1", tmp_path / "nope.csv", "--g2", tmp_path / "nope.csv",
            "--kernel", "overlap", "--m", 3,
        )
        assert code == 4

    def test_invalid_m_exit_code(self, gen_dir):
        code = run_cli(
            "detect", "--g1", gen_dir / "g1.csv", "--g2", gen_dir / "g2.csv",
            "--kernel", "mse", "--m", 0, "--k1", 3, "--k2", 2,
            "--n1", 20, "--n2", 10, "--tau", -1.0, "--seed", 5,
        )
        assert code == 2

    def test_mle_without_rho_exit_code(self, gen_dir):
        code = run_cli(
            "exact", "--g1", gen_dir / "g1.csv", "--g2", gen_dir / "g2.csv",
            "--kernel", "mle", "--m", 3,
        )
        assert code == 2


class TestExperimentPipeline:
    def make_config(self, tmp_path, out_csv):
        config = {
            "n": 12,
            "s": 6,
            "rho": 0.9,
            "epsilon": 0.1,
            "trials_per_hypothesis": 3,
            "detector": {"type": "clique", "k1": 2, "k2": 1, "n1": 12, "n2": 6},
            "kernel": {"kind": "mse"},
            "root_seed": 99,
            "output_path": str(out_csv),
        }
        path = tmp_path / "config.json"
        path.write_text(json.dumps(config))
        return path

    def test_experiment_then_roc_then_hist(self, tmp_path, capsys):
        trials_csv = tmp_path / "trials.csv"
        config = self.make_config(tmp_path, trials_csv)
        assert run_cli("experiment", "--config", config) == 0
        assert trials_csv.exists()
        out = capsys.readouterr().out
        assert "auc=" in out

        roc_csv = tmp_path / "roc.csv"
        assert run_cli("roc", "--in", trials_csv, "--out", roc_csv) == 0
        lines = roc_csv.read_text().strip().splitlines()
        assert lines[0] == "threshold,fpr,tpr"
        assert lines[-1].startswith("# auc=")

        hist_null = tmp_path / "hist_null.csv"
        hist_alt = tmp_path / "hist_alt.csv"
        assert run_cli(
            "hist", "--in", trials_csv, "--out-null", hist_null,
            "--out-alt", hist_alt, "--bins", 5,
        ) == 0
        assert hist_null.read_text().startswith("bin_left,count")
        assert len(hist_alt.read_text().strip().splitlines()) == 6

    def test_bad_config_exit_code(self, tmp_path):
        path = tmp_path / "config.json"
        path.write_text('{"n": 12}')
        assert run_cli("experiment", "--config", path) == 4

    def test_roc_on_malformed_csv(self, tmp_path):
        bad = tmp_path / "bad.csv"
        bad.write_text("a,b\n1,2\n")
        assert run_cli("roc", "--in", bad, "--out", tmp_path / "roc.csv") == 4


class TestTheoryCheck:
    def test_small_battery_passes(self, capsys):
        code = run_cli("theory-check", "--trials", 20000, "--seed", 1)
        out = capsys.readouterr().out
        assert "checks passed" in out
        assert code == 0


def test_module_entry_point():
    out = subprocess.run(
        [sys.executable, "-m", "graphcorr.cli", "--help"], capture_output=True, text=True
    )
    assert out.returncode == 0
    assert "gen" in out.stdout and "theory-check" in out.stdout
