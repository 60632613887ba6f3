import json

import numpy as np
import pytest

from flexmove.cli import main
from flexmove.timeseries import read_numeric_csv, write_csv

BEAM_DOC = dict(l=0.305, b=0.013, h=0.5e-3, E=2.1e11, m_tip=0.09)


@pytest.fixture
def beam_json(tmp_path):
    path = tmp_path / "beam.json"
    path.write_text(json.dumps(BEAM_DOC))
    return str(path)


def run(capsys, *argv):
    code = main(list(argv))
    captured = capsys.readouterr()
    return code, captured.out, captured.err


class TestPlan:
    def test_writes_setpoints_and_summary(self, tmp_path, capsys):
        out = tmp_path / "plan.csv"
        code, stdout, _ = run(capsys, "plan", "--L", "0.41", "--k", "5.78",
                              "--n", "2", "--mass", "0.09", "--rate", "1500", "--out", str(out))
        assert code == 0
        header, columns = read_numeric_csv(out, n_columns=4)
        assert header == ["t", "s", "v", "a"]
        assert len(columns[0]) == 3262
        assert columns[1][-1] == pytest.approx(0.41, rel=1e-9)
        assert "t1 = " in stdout and "p = " in stdout and "peak acceleration" in stdout

    def test_resonant_multiple_fails(self, tmp_path, capsys):
        code, _, stderr = run(capsys, "plan", "--L", "0.41", "--k", "5.78",
                              "--n", "1", "--mass", "0.09", "--out", str(tmp_path / "x.csv"))
        assert code == 2
        assert "resonant" in stderr

    def test_non_integer_needs_exploratory_flag(self, tmp_path, capsys):
        code, _, stderr = run(capsys, "plan", "--L", "0.41", "--k", "5.78",
                              "--n", "2.5", "--mass", "0.09", "--out", str(tmp_path / "x.csv"))
        assert code == 2
        assert "exploratory" in stderr

    def test_beam_chain_matches_direct_frequency(self, tmp_path, capsys, beam_json):
        direct = tmp_path / "direct.csv"
        chained = tmp_path / "chained.csv"
        assert run(capsys, "plan", "--L", "0.41", "--k", "5.78", "--n", "2",
                   "--mass", "0.09", "--rate", "200", "--out", str(direct))[0] == 0
        assert run(capsys, "plan", "--L", "0.41", "--beam", beam_json, "--n", "2",
                   "--mass", "0.09", "--rate", "200", "--out", str(chained))[0] == 0
        _, direct_cols = read_numeric_csv(direct, n_columns=4)
        _, chained_cols = read_numeric_csv(chained, n_columns=4)
        for a, b in zip(direct_cols[1:], chained_cols[1:]):
            size = min(len(a), len(b))
            scale = np.max(np.abs(a))
            assert np.max(np.abs(a[:size] - b[:size])) <= 5e-3 * scale

    def test_frequency_source_is_exclusive(self, tmp_path, capsys, beam_json):
        code, _, stderr = run(capsys, "plan", "--L", "0.41", "--k", "5.78", "--beam", beam_json,
                              "--n", "2", "--mass", "0.09", "--out", str(tmp_path / "x.csv"))
        assert code == 2 and "not both" in stderr
        code, _, stderr = run(capsys, "plan", "--L", "0.41", "--n", "2",
                              "--mass", "0.09", "--out", str(tmp_path / "x.csv"))
        assert code == 2 and "frequency source" in stderr

    def test_deterministic_output(self, tmp_path, capsys):
        first = tmp_path / "a.csv"
        second = tmp_path / "b.csv"
        argv = ["plan", "--L", "0.41", "--k", "5.78", "--n", "2", "--mass", "0.09", "--rate", "777"]
        assert main(argv + ["--out", str(first)]) == 0
        assert main(argv + ["--out", str(second)]) == 0
        capsys.readouterr()
        assert first.read_bytes() == second.read_bytes()


class TestSimulate:
    def test_matched_move_reports_quiescent(self, capsys):
        code, stdout, _ = run(capsys, "simulate", "--L", "0.41", "--k", "5.78",
                              "--n", "2", "--mass", "0.09")
        assert code == 0
        report = json.loads(stdout)
        assert report["quiescent"] is True
        assert report["amplitude"] <= 1e-6 * 0.41

    def test_mistimed_move_reports_residual(self, capsys):
        code, stdout, _ = run(capsys, "simulate", "--L", "0.41", "--k", "5.78",
                              "--n", "2.5", "--mass", "0.09", "--exploratory")
        assert code == 0
        report = json.loads(stdout)
        assert report["quiescent"] is False
        assert report["amplitude"] > 1e-3

    def test_non_integer_without_flag_fails(self, capsys):
        code, _, stderr = run(capsys, "simulate", "--L", "0.41", "--k", "5.78",
                              "--n", "2.5", "--mass", "0.09")
        assert code == 2
        assert "exploratory" in stderr

    def test_trace_output(self, tmp_path, capsys):
        trace = tmp_path / "trace.csv"
        code, _, _ = run(capsys, "simulate", "--L", "0.41", "--k", "5.78", "--n", "2",
                         "--mass", "0.09", "--trace-out", str(trace))
        assert code == 0
        header, columns = read_numeric_csv(trace, n_columns=4)
        assert header == ["t", "x_r", "v_r", "a_r"]
        assert len(columns[0]) == 20_001


class TestSweep:
    def test_writes_rows(self, tmp_path, capsys):
        out = tmp_path / "sweep.csv"
        code, stdout, _ = run(capsys, "sweep", "--L", "0.41", "--k", "5.78", "--mass", "0.09",
                              "--n-from", "2", "--n-to", "4", "--step", "0.25", "--out", str(out))
        assert code == 0
        assert "9 rows" in stdout
        header, columns = read_numeric_csv(out, n_columns=5)
        assert header == ["n", "t1", "residual", "energy", "quiescent"]
        quiescent = {n: q for n, q in zip(columns[0], columns[4])}
        assert quiescent[2.0] == 1.0 and quiescent[3.0] == 1.0 and quiescent[4.0] == 1.0
        assert quiescent[2.5] == 0.0

    def test_missing_range_fails(self, tmp_path, capsys):
        code, _, stderr = run(capsys, "sweep", "--L", "0.41", "--k", "5.78", "--mass", "0.09",
                              "--out", str(tmp_path / "x.csv"))
        assert code == 2
        assert "--n-from" in stderr


class TestFilter:
    def make_trace(self, tmp_path, values, rate=1500.0):
        path = tmp_path / "input.csv"
        t = np.arange(len(values)) / rate
        write_csv(path, ("t", "a_tip"), (t, values))
        return path

    def test_constant_trace_unchanged(self, tmp_path, capsys):
        inp = self.make_trace(tmp_path, np.full(120, 2.5))
        out = tmp_path / "filtered.csv"
        code, _, _ = run(capsys, "filter", "--in", str(inp), "--out", str(out))
        assert code == 0
        header, (t, values) = read_numeric_csv(out, n_columns=2)
        assert header == ["t", "a_tip"]
        assert np.array_equal(values, np.full(120, 2.5))

    def test_high_frequency_removed(self, tmp_path, capsys):
        rate = 1500.0
        t = np.arange(3000) / rate
        noisy = np.sin(2 * np.pi * 3.0 * t) + 0.5 * np.sin(2 * np.pi * 200.0 * t)
        inp = self.make_trace(tmp_path, noisy)
        out = tmp_path / "filtered.csv"
        assert run(capsys, "filter", "--in", str(inp), "--out", str(out))[0] == 0
        _, (_, values) = read_numeric_csv(out, n_columns=2)
        clean = np.sin(2 * np.pi * 3.0 * t)
        assert np.max(np.abs(values[200:-200] - clean[200:-200])) <= 1e-2

    def test_cutoff_above_nyquist_fails(self, tmp_path, capsys):
        inp = self.make_trace(tmp_path, np.zeros(100), rate=30.0)
        code, _, stderr = run(capsys, "filter", "--in", str(inp),
                              "--out", str(tmp_path / "x.csv"), "--cutoff-hz", "20")
        assert code == 2
        assert "Nyquist" in stderr

    def test_missing_input_is_io_error(self, tmp_path, capsys):
        code, _, stderr = run(capsys, "filter", "--in", str(tmp_path / "absent.csv"),
                              "--out", str(tmp_path / "x.csv"))
        assert code == 1
        assert "error" in stderr


class TestReport:
    def test_prints_table(self, capsys, beam_json, tmp_path):
        out = tmp_path / "table.csv"
        code, stdout, _ = run(capsys, "report", "--beam", beam_json,
                              "--masses", "0.02,0.06,0.075,0.09", "--L", "0.41",
                              "--out", str(out))
        assert code == 0
        assert "mass [kg]" in stdout
        assert "not reproduced" in stdout
        header, columns = read_numeric_csv(out, n_columns=4)
        assert len(columns[0]) == 4

    def test_requires_beam(self, capsys):
        code, _, stderr = run(capsys, "report", "--masses", "0.09", "--L", "0.41")
        assert code == 2
        assert "--beam" in stderr


class TestConfigFile:
    def test_config_supplies_values(self, tmp_path, capsys):
        config = tmp_path / "run.json"
        out = tmp_path / "plan.csv"
        config.write_text(json.dumps(dict(L=0.41, k=5.78, n=2, mass=0.09,
                                          rate=100.0, out=str(out))))
        code, _, _ = run(capsys, "plan", "--config", str(config))
        assert code == 0
        _, columns = read_numeric_csv(out, n_columns=4)
        assert len(columns[0]) == 218  # floor(100 * t1) + 1

    def test_flags_override_config(self, tmp_path, capsys):
        config = tmp_path / "run.json"
        out = tmp_path / "plan.csv"
        config.write_text(json.dumps(dict(L=0.41, k=5.78, n=2, mass=0.09, rate=100.0)))
        code, _, _ = run(capsys, "plan", "--config", str(config),
                         "--rate", "50", "--out", str(out))
        assert code == 0
        _, columns = read_numeric_csv(out, n_columns=4)
        assert len(columns[0]) == 109  # floor(50 * t1) + 1

    def test_exploratory_via_config(self, tmp_path, capsys):
        config = tmp_path / "run.json"
        config.write_text(json.dumps(dict(L=0.41, k=5.78, n=2.5, mass=0.09,
                                          exploratory=True)))
        code, stdout, _ = run(capsys, "simulate", "--config", str(config))
        assert code == 0
        assert json.loads(stdout)["quiescent"] is False
