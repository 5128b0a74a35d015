import json

import pytest

from sparsetrig import FrequencyLattice, build_matrix, deterministic_points
from sparsetrig.cli import cli_main


def run_cli(capsys, *argv):
    code = cli_main(list(argv))
    out = capsys.readouterr().out
    return code, out


class TestPoints:
    def test_deterministic_json(self, capsys):
        code, out = run_cli(capsys, "points", "--n", "5", "--d", "2")
        assert code == 0
        data = json.loads(out)
        assert data["count"] == 5 and data["dimension"] == 2
        assert data["points"][0] == [[1, 5], [1, 5]]
        assert data["points"][4] == [[0, 5], [0, 5]]

    def test_random_requires_seed(self, capsys):
        code, _ = run_cli(capsys, "points", "--n", "4", "--d", "1",
                          "--model", "uniform-continuous")
        assert code == 1

    def test_random_with_seed(self, capsys):
        code, out = run_cli(capsys, "points", "--n", "4", "--d", "1",
                            "--model", "uniform-lattice", "--modulus", "3",
                            "--seed", "7")
        assert code == 0
        assert json.loads(out)["provenance"]["modulus"] == 3

    def test_composite_n_fails_validation(self, capsys):
        code, _ = run_cli(capsys, "points", "--n", "6", "--d", "1")
        assert code == 1


class TestMatrixAndReports:
    def test_matrix_roundtrip_via_file(self, tmp_path, capsys):
        out_file = tmp_path / "matrix.json"
        code, _ = run_cli(capsys, "matrix", "--q", "1", "--d", "2", "--n", "5",
                          "--out", str(out_file))
        assert code == 0
        data = json.loads(out_file.read_text())
        assert data["normalized"] is False
        assert len(data["entries"]) == 5 and len(data["entries"][0]) == 9

    def test_coherence_report(self, capsys):
        code, out = run_cli(capsys, "coherence", "--q", "1", "--d", "2", "--n", "5")
        assert code == 0
        report = json.loads(out)
        assert report["mu"] <= 0.4473
        assert report["N"] == 5 and report["D"] == 9

    def test_weil_check(self, capsys):
        code, out = run_cli(capsys, "weil-check", "--p", "5", "--coeffs", "0,1")
        assert code == 0
        report = json.loads(out)
        assert report["holds"] is True
        assert report["magnitude"] == pytest.approx(5**0.5, abs=1e-9)

    def test_rip_report(self, capsys):
        code, out = run_cli(capsys, "rip", "--q", "2", "--d", "2", "--n", "11",
                            "--k", "2")
        assert code == 0
        report = json.loads(out)
        assert report["delta_min"] == pytest.approx(1 / 11**0.5, abs=1e-9)

    def test_strip_estimate(self, capsys):
        code, out = run_cli(capsys, "strip", "--q", "2", "--d", "2", "--n", "11",
                            "--k", "1", "--delta", "0.5", "--trials", "50",
                            "--seed", "3")
        assert code == 0
        assert json.loads(out)["probability"] == 1.0

    def test_strip_requires_seed(self, capsys):
        code, _ = run_cli(capsys, "strip", "--q", "2", "--d", "2", "--n", "11",
                          "--k", "1", "--delta", "0.5", "--trials", "50")
        assert code == 1


class TestRecover:
    def test_one_shot_decode(self, tmp_path, capsys):
        matrix = build_matrix(deterministic_points(11, 2), FrequencyLattice.uniform(2, 2))
        col = matrix.lattice.index_of((1, -1))
        y = matrix.entries[:, col]
        y_file = tmp_path / "y.json"
        y_file.write_text(json.dumps([[v.real, v.imag] for v in y]))
        code, out = run_cli(capsys, "recover", "--q", "2", "--d", "2", "--n", "11",
                            "--y", str(y_file), "--decoder", "omp",
                            "--max-sparsity", "1")
        assert code == 0
        result = json.loads(out)
        assert result["support"] == [[1, -1]]
        assert result["converged"] is True

    def test_decode_from_serialized_matrix(self, tmp_path, capsys):
        matrix = build_matrix(deterministic_points(5, 1), FrequencyLattice.uniform(2, 1))
        matrix_file = tmp_path / "m.json"
        matrix_file.write_text(json.dumps(matrix.to_json()))
        y = matrix.entries[:, matrix.lattice.index_of((1,))]
        y_file = tmp_path / "y.json"
        y_file.write_text(json.dumps([[v.real, v.imag] for v in y]))
        code, out = run_cli(capsys, "recover", "--matrix", str(matrix_file),
                            "--y", str(y_file), "--decoder", "bp")
        assert code == 0
        assert json.loads(out)["support"] == [[1]]

    def test_degenerate_instance_exits_two(self, tmp_path, capsys):
        # duplicated lattice points make the row Gram singular for bp
        from sparsetrig import random_points_lattice
        pts = random_points_lattice(4, 1, 2, seed=3)
        matrix = build_matrix(pts, FrequencyLattice.uniform(1, 1))
        matrix_file = tmp_path / "m.json"
        matrix_file.write_text(json.dumps(matrix.to_json()))
        y_file = tmp_path / "y.json"
        y_file.write_text(json.dumps([[1.0, 0.0]] * 4))
        code, _ = run_cli(capsys, "recover", "--matrix", str(matrix_file),
                          "--y", str(y_file), "--decoder", "bp")
        assert code == 2


class TestExperimentCommand:
    def test_success_run(self, tmp_path, capsys):
        out_csv = tmp_path / "success.csv"
        cfg = tmp_path / "cfg.toml"
        cfg.write_text(
            'q = 1\nd = 1\nn = 5\nseed = 4\nm_values = [1, 2]\ntrials = 5\n'
            f'decoder = "omp"\nmodels = ["deterministic"]\noutput = "{out_csv}"\n')
        code, out = run_cli(capsys, "experiment", "success", "--config", str(cfg))
        assert code == 0
        lines = out_csv.read_text().strip().splitlines()
        assert lines[0] == "model,decoder,M,trials,successes,rate,mean_runtime_ms"
        assert len(lines) == 3

    def test_eigen_run_with_output_override(self, tmp_path, capsys):
        cfg = tmp_path / "cfg.toml"
        cfg.write_text('q = 1\nd = 1\nn = 5\nseed = 4\nm_values = [1]\n'
                       'eigen_samples = 20\nmodels = ["deterministic"]\n')
        target = tmp_path / "eigen.csv"
        code, _ = run_cli(capsys, "experiment", "eigen", "--config", str(cfg),
                          "--output", str(target))
        assert code == 0
        assert target.exists()

    def test_bad_config_key_exits_one(self, tmp_path, capsys):
        cfg = tmp_path / "cfg.toml"
        cfg.write_text("q = 1\nd = 1\nn = 5\nseed = 4\nnope = 3\n")
        code, _ = run_cli(capsys, "experiment", "success", "--config", str(cfg))
        assert code == 1

    def test_missing_config_file(self, capsys):
        code, _ = run_cli(capsys, "experiment", "success", "--config", "/nonexistent.toml")
        assert code == 1


class TestExitCodes:
    def test_unknown_flag(self, capsys):
        assert cli_main(["points", "--n", "5", "--d", "1", "--bogus"]) == 1

    def test_unknown_command(self, capsys):
        assert cli_main(["frobnicate"]) == 1

    def test_validation_error_names_field(self, tmp_path, capsys):
        code = cli_main(["rip", "--q", "2", "--d", "3", "--n", "11", "--k", "5"])
        err = capsys.readouterr().err
        assert code == 1
        assert "guard" in err
