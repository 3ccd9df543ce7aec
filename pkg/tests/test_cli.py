"""End-to-end tests of the command-line interface."""

import json

import pytest

from crossbar_margin.cli import run_cli
from crossbar_margin.profile_io import dump_profile, load_bundled_profile


@pytest.fixture()
def profile_path(tmp_path):
    path = tmp_path / "22nm.json"
    dump_profile(load_bundled_profile(), path)
    return str(path)


class TestMarginCommand:
    ARGS = ["margin", "--ron", "20e3", "--k", "10", "--n", "512", "--vread", "0.2"]

    def test_reference_point(self, capsys):
        assert run_cli(self.ARGS) == 0
        out = capsys.readouterr().out
        assert "8.67371" in out
        assert "0.867371" in out
        assert "I_on" in out and "I_off" in out

    def test_json_output(self, capsys):
        assert run_cli(self.ARGS + ["--json"]) == 0
        payload = json.loads(capsys.readouterr().out)
        assert payload["ratio_effective"] == pytest.approx(8.6737, abs=1e-4)
        assert payload["margin_normalized"] == pytest.approx(0.86737, abs=1e-5)
        assert payload["i_on_a"] == pytest.approx(8.7237e-06, rel=1e-4)

    def test_explicit_profile_file(self, capsys, profile_path):
        assert run_cli(self.ARGS + ["--profile", profile_path]) == 0
        assert "0.867371" in capsys.readouterr().out

    def test_oracle_engine(self, capsys):
        assert run_cli(self.ARGS + ["--engine", "oracle"]) == 0
        assert "0.8673" in capsys.readouterr().out

    def test_toggles_reach_ideal(self, capsys):
        args = self.ARGS + [
            "--no-line-resistance",
            "--no-transistor-resistance",
            "--no-leakage",
            "--json",
        ]
        assert run_cli(args) == 0
        payload = json.loads(capsys.readouterr().out)
        assert payload["margin_normalized"] == 1.0

    def test_out_of_range_voltage_fails_cleanly(self, capsys):
        args = ["margin", "--ron", "20e3", "--k", "10", "--n", "512", "--vread", "0.9"]
        assert run_cli(args) == 1
        assert "error:" in capsys.readouterr().err


class TestOptimalRangeCommand:
    def test_human_output(self, capsys):
        args = ["optimal-range", "--k", "10", "--n", "1024", "--threshold", "0.8"]
        assert run_cli(args) == 0
        out = capsys.readouterr().out
        assert "optimal R_on range" in out

    def test_json_band(self, capsys):
        args = [
            "optimal-range", "--k", "10", "--n", "1024", "--threshold", "0.8", "--json",
        ]
        assert run_cli(args) == 0
        payload = json.loads(capsys.readouterr().out)
        assert 10e3 <= payload["r_low_ohm"] <= 30e3
        assert 80e3 <= payload["r_high_ohm"] <= 200e3

    def test_empty_band_reported(self, capsys):
        args = [
            "optimal-range", "--k", "10", "--n", "4096", "--threshold", "0.99", "--json",
        ]
        assert run_cli(args) == 0
        payload = json.loads(capsys.readouterr().out)
        assert payload["r_low_ohm"] is None and payload["r_high_ohm"] is None


class TestCompensateCommand:
    def test_max_gain_printed(self, capsys, tmp_path):
        csv_path = tmp_path / "gain.csv"
        args = [
            "compensate", "--k", "10", "--n", "1024", "--valt", "0.4",
            "--csv", str(csv_path),
        ]
        assert run_cli(args) == 0
        out = capsys.readouterr().out
        assert "0.083" in out
        assert "x4" in out  # quadratic read-power cost
        assert csv_path.exists()


class TestValidateCommand:
    def test_quick_grid_passes(self, capsys, tmp_path):
        csv_path = tmp_path / "val.csv"
        args = ["validate", "--grid", "quick", "--csv", str(csv_path)]
        assert run_cli(args) == 0
        out = capsys.readouterr().out
        assert "PASS" in out
        header = csv_path.read_text(encoding="utf-8").splitlines()[0]
        assert header.startswith("r_on_ohm,")

    def test_impossible_tolerance_fails(self, capsys):
        args = ["validate", "--grid", "quick", "--tolerance", "1e-9"]
        assert run_cli(args) == 1
        assert "FAIL" in capsys.readouterr().out


class TestSweepCommand:
    def test_csv_and_svg_outputs(self, tmp_path, capsys):
        csv_path, svg_path = tmp_path / "s.csv", tmp_path / "s.svg"
        args = [
            "sweep", "--k", "10", "--n", "256", "1024", "--ron-points", "10",
            "--csv", str(csv_path), "--svg", str(svg_path),
        ]
        assert run_cli(args) == 0
        lines = csv_path.read_text(encoding="utf-8").splitlines()
        assert len(lines) == 1 + 2 * 10
        assert svg_path.read_text(encoding="utf-8").count("<polyline") == 2

    def test_summary_without_files(self, capsys):
        args = ["sweep", "--k", "10", "--n", "64", "--ron-points", "5"]
        assert run_cli(args) == 0
        assert "margin" in capsys.readouterr().out

    def test_bad_grid_bounds(self, capsys):
        args = ["sweep", "--k", "10", "--ron-min", "1e8", "--ron-max", "1e4"]
        assert run_cli(args) == 1
        assert "error:" in capsys.readouterr().err


class TestAblateCommand:
    def test_outputs(self, tmp_path):
        csv_path, svg_path = tmp_path / "a.csv", tmp_path / "a.svg"
        args = [
            "ablate", "--k", "10", "--n", "1024", "--ron-points", "12",
            "--csv", str(csv_path), "--svg", str(svg_path),
        ]
        assert run_cli(args) == 0
        text = csv_path.read_text(encoding="utf-8")
        for label in ("baseline", "-R_T", "-r", "-I_Tleak"):
            assert label in text
        assert svg_path.read_text(encoding="utf-8").count("<polyline") == 4


class TestFigureCommands:
    def test_fig5_writes_expected_files(self, tmp_path, capsys):
        assert run_cli(["fig5", "--outdir", str(tmp_path)]) == 0
        assert (tmp_path / "fig5.csv").exists()
        assert (tmp_path / "fig5.svg").exists()
        svg = (tmp_path / "fig5.svg").read_text(encoding="utf-8")
        for label in ("baseline", "-R_T", "-r", "-I_Tleak"):
            assert label in svg

    def test_fig3_deterministic(self, tmp_path):
        d1, d2 = tmp_path / "one", tmp_path / "two"
        assert run_cli(["fig3", "--outdir", str(d1)]) == 0
        assert run_cli(["fig3", "--outdir", str(d2)]) == 0
        for name in ("fig3.csv", "fig3a.svg", "fig3b.svg", "fig3c.svg"):
            assert (d1 / name).read_bytes() == (d2 / name).read_bytes()


class TestUsageErrors:
    def test_unknown_subcommand(self, capsys):
        assert run_cli(["transmogrify"]) == 2

    def test_unknown_flag(self, capsys):
        assert run_cli(["margin", "--frequency", "1e9"]) == 2

    def test_missing_required(self, capsys):
        assert run_cli(["margin", "--ron", "20e3"]) == 2

    def test_missing_profile_file(self, capsys, tmp_path):
        args = [
            "margin", "--ron", "20e3", "--k", "10", "--n", "4", "--vread", "0.2",
            "--profile", str(tmp_path / "nope.json"),
        ]
        assert run_cli(args) == 1
        assert "not found" in capsys.readouterr().err

    def test_help_exits_zero(self, capsys):
        assert run_cli(["--help"]) == 0
        assert "crossbar-margin" in capsys.readouterr().out
