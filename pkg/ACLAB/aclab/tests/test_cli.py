import json
import os

import pandas as pd
import pytest
from click.testing import CliRunner

from aclab.cli import main

JC_FLAGS = ["--kind", "generic_two_level_oscillator", "--coupling", "jaynes_cummings", "--g", "0.05", "--n-fock", "4"]


@pytest.fixture
def runner():
    return CliRunner()


def read_json(directory, name):
    with open(os.path.join(directory, name), encoding="utf-8") as handle:
        return json.load(handle)


def test_scan_spectrum_writes_levels_and_summary(runner, tmp_path):
    result = runner.invoke(main, ["scan-spectrum", *JC_FLAGS, "--points", "51", "--output-dir", str(tmp_path)])
    assert result.exit_code == 0, result.output
    frame = pd.read_csv(tmp_path / "generic_two_level_oscillator_scan_spectrum_levels.csv")
    assert list(frame.columns) == [
        "xi[omega_T]", "E_plus[omega_T]", "E_minus[omega_T]", "gap[omega_T]", "p_a_plus", "p_a_minus",
    ]
    assert len(frame) == 51
    summary = read_json(tmp_path, "generic_two_level_oscillator_scan_spectrum_summary.json")
    assert summary["units"] == "omega_T"
    assert summary["structural"]["xi_S"] == pytest.approx(1.0, abs=1e-6)
    assert summary["structural"]["min_gap"] == pytest.approx(0.1, abs=1e-9)
    assert summary["report"]["method"] == "numeric_scan"


def test_outputs_are_reproducible(runner, tmp_path):
    args = ["scan-spectrum", *JC_FLAGS, "--points", "21", "--output-dir", str(tmp_path), "--prefix", "run"]
    contents = []
    for _ in range(2):
        assert runner.invoke(main, args).exit_code == 0
        contents.append(
            [(tmp_path / name).read_bytes() for name in ("run_levels.csv", "run_summary.json")]
        )
    assert contents[0] == contents[1]


def test_find_resonance_for_constant_coupling(runner, tmp_path):
    result = runner.invoke(main, ["find-resonance", *JC_FLAGS, "--order", "10", "--output-dir", str(tmp_path)])
    assert result.exit_code == 0, result.output
    report = read_json(tmp_path, "generic_two_level_oscillator_find_resonance_report.json")
    assert "closed_form" not in report
    assert report["numeric"]["xi_S"] == pytest.approx(1.0, abs=1e-6)
    assert report["numeric"]["xi_D_flip"] == pytest.approx(1.0, abs=1e-5)
    assert report["series"]["method"] == "series_order_k"


def test_find_resonance_reports_closed_forms_for_ss(runner, tmp_path):
    args = ["find-resonance", "--kind", "ss_gate", "--eta", "0.1", "--n-fock", "15", "--output-dir", str(tmp_path)]
    result = runner.invoke(main, args)
    assert result.exit_code == 0, result.output
    report = read_json(tmp_path, "ss_gate_find_resonance_report.json")
    assert report["closed_form"]["method"] == "closed_form_LD"
    assert report["closed_form"]["xi_S"] == pytest.approx(0.9975)
    assert report["delta_d_ratio"] == pytest.approx(1.0, rel=0.15)


def test_flip_prob(runner, tmp_path):
    result = runner.invoke(main, ["flip-prob", *JC_FLAGS, "--points", "41", "--output-dir", str(tmp_path)])
    assert result.exit_code == 0, result.output
    summary = read_json(tmp_path, "generic_two_level_oscillator_flip_prob_summary.json")
    assert summary["pulse"]["rule"] == "effective_pi"
    assert summary["resonance"]["p_max"] == pytest.approx(1.0, abs=1e-9)
    frame = pd.read_csv(tmp_path / "generic_two_level_oscillator_flip_prob_scan.csv")
    assert list(frame.columns) == ["xi[omega_T]", "P", "pulse_rule"]


def test_gate_error_bare_sweep(runner, tmp_path):
    args = [
        "gate-error", "--kind", "ss_gate", "--n-fock", "12", "--tuning", "bare",
        "--grid", "0.05", "--grid", "0.1", "--grid", "0.15", "--output-dir", str(tmp_path),
    ]
    result = runner.invoke(main, args)
    assert result.exit_code == 0, result.output
    frame = pd.read_csv(tmp_path / "ss_gate_gate_error_curves.csv")
    assert len(frame) == 3
    assert set(frame["tuning"]) == {"bare"}
    fit = read_json(tmp_path, "ss_gate_gate_error_fit.json")
    assert fit["fits"]["bare"]["slope"] > 0


@pytest.mark.slow
def test_speed_bound(runner, tmp_path):
    args = [
        "speed-bound", "--kind", "ss_gate", "--eta", "0.1", "--n-fock", "12", "--epsilon-t", "0.05",
        "--grid", "0.1", "--grid", "0.2", "--grid", "0.3", "--output-dir", str(tmp_path),
    ]
    result = runner.invoke(main, args)
    assert result.exit_code == 0, result.output
    report = read_json(tmp_path, "ss_gate_speed_bound_report.json")
    assert report["bound"]["rate"] == pytest.approx(0.1 / 3.141592653589793)
    assert report["bound"]["improvement"] > 1


def test_speed_bound_needs_ss_gate(runner, tmp_path):
    result = runner.invoke(main, ["speed-bound", *JC_FLAGS, "--output-dir", str(tmp_path)])
    assert result.exit_code == 2


def test_invalid_flags_exit_with_config_code(runner, tmp_path):
    result = runner.invoke(main, ["scan-spectrum", "--kind", "ss_gate", "--detuning", "0.5", "--output-dir", str(tmp_path)])
    assert result.exit_code == 2
    assert "detuning" in result.output


def test_config_file_error_names_line(runner, tmp_path):
    config = tmp_path / "run.json"
    config.write_text('{\n  "model": {\n    "kind": "cz_gate",\n    "eta": -0.1\n  }\n}\n')
    result = runner.invoke(main, ["scan-spectrum", "--config", str(config), "--output-dir", str(tmp_path)])
    assert result.exit_code == 2
    assert "line 4" in result.output


def test_config_file_overrides_flags(runner, tmp_path):
    config = tmp_path / "run.json"
    config.write_text(json.dumps({"model": {"g": 0.1}, "points": 31, "prefix": "from_file"}))
    args = ["scan-spectrum", *JC_FLAGS, "--points", "11", "--config", str(config), "--output-dir", str(tmp_path)]
    assert runner.invoke(main, args).exit_code == 0
    summary = read_json(tmp_path, "from_file_summary.json")
    assert summary["model"]["g"] == pytest.approx(0.1)
    assert summary["track"]["points"] == 31


def test_numerical_failure_exit_code(runner, tmp_path):
    args = [
        "scan-spectrum", "--kind", "generic_two_level_oscillator", "--n-fock", "4",
        "--window", "1.0", "1.2", "--points", "21", "--output-dir", str(tmp_path),
    ]
    result = runner.invoke(main, args)
    assert result.exit_code == 3
    assert "window boundary" in result.output
