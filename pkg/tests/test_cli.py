# tests/test_cli.py

import csv
import io
import json

import pytest
from typer.testing import CliRunner

from cli.app import app
from cli.commands_maps import MAP_COLUMNS
from cli.commands_spectrum import SPECTRUM_COLUMNS
from services.kernel.kernelIO import loadKernel

runner = CliRunner()


def _invoke(*args):
    return runner.invoke(app, [str(a) for a in args])


def _csv(text):
    return list(csv.reader(io.StringIO(text)))


class TestEvalMaps:
    """eval-maps"""

    def test_csv_table(self):
        result = _invoke("eval-maps", "--a", 0.5, "--b", 0.5, "--depth", 3)
        assert result.exit_code == 0, result.output
        rows = _csv(result.stdout)
        assert tuple(rows[0]) == MAP_COLUMNS
        assert len(rows) == 1 + 199
        assert rows[1][3] == "-0.99"

    def test_output_is_deterministic(self):
        a = _invoke("eval-maps", "--a", 1, "--b", 1)
        b = _invoke("eval-maps", "--a", 1, "--b", 1)
        assert a.stdout == b.stdout

    def test_json(self):
        result = _invoke("eval-maps", "--a", 0, "--b", 1, "--format", "json")
        assert result.exit_code == 0, result.output
        doc = json.loads(result.stdout)
        assert doc["config"]["command"] == "eval-maps"
        assert len(doc["rows"]) == 199

    @pytest.mark.parametrize(
        "args",
        [("--a", 0.5), ("--delta-grid", "--a", 1, "--b", 1)],
    )
    def test_bad_pair_options(self, args):
        result = _invoke("eval-maps", *args)
        assert result.exit_code == 2


class TestDatasetAndSpectrum:
    def test_generate_then_spectrum(self, tmp_path):
        path = tmp_path / "d.csv"
        result = _invoke("gen-dataset", "--n", 5, "--dim", 3, "--seed", 4, "--out", path)
        assert result.exit_code == 0, result.output
        assert len(path.read_text(encoding="utf-8").splitlines()) == 5
        assert path.with_suffix(".json").exists()

        result = _invoke("spectrum", "--dataset", path, "--depth", 6, "--a", 0.5, "--b", 0.5)
        assert result.exit_code == 0, result.output
        doc = json.loads(result.stdout)
        assert "workers" not in doc["config"]
        assert doc["config"]["dataset"] == str(path)
        assert len(doc["report"]["eigenvalues"]) == 5

    def test_spectrum_to_file(self, tmp_path):
        out = tmp_path / "report.json"
        result = _invoke("spectrum", "--n", 6, "--dim", 4, "--depth", 4, "--out", out)
        assert result.exit_code == 0, result.output
        doc = json.loads(out.read_text(encoding="utf-8"))
        assert doc["report"]["depth"] == 4

    def test_spectrum_csv_row(self):
        result = _invoke("spectrum", "--n", 6, "--dim", 4, "--depth", 5, "--format", "csv")
        assert result.exit_code == 0, result.output
        rows = _csv(result.stdout)
        assert tuple(rows[0]) == SPECTRUM_COLUMNS
        assert len(rows) == 2
        row = dict(zip(rows[0], rows[1]))
        assert row["l"] == "5"
        assert float(row["lambda1"]) >= float(row["lambda_bulk_max"]) >= float(row["lambda_min"]) > 0.0
        assert float(row["kappa"]) == pytest.approx(float(row["lambda1"]) / float(row["lambda_min"]), rel=1e-10)

    def test_kernel_out(self, tmp_path):
        path = tmp_path / "kernel.csv"
        result = _invoke("spectrum", "--n", 6, "--dim", 4, "--depth", 3, "--ml", 2, "--kernel-out", path)
        assert result.exit_code == 0, result.output
        assert path.read_text(encoding="utf-8").splitlines()[0] == "# n=6 l=3 m_l=2"
        K = loadKernel(path)
        assert K.block.shape == (6, 6)
        assert K.depth == 3 and K.multiplicity == 2
        doc = json.loads(result.stdout)
        assert doc["config"]["kernel_output"] == str(path)

    def test_delta_zero_is_an_error(self):
        result = _invoke("spectrum", "--a", 1, "--b", 0, "--n", 4, "--dim", 3)
        assert result.exit_code == 2

    def test_invalid_config(self):
        result = _invoke("spectrum", "--n", 1)
        assert result.exit_code == 2


class TestDualCheck:
    def test_passes(self):
        result = _invoke("dual-check", "--a", 0.5, "--b", 0.5)
        assert result.exit_code == 0, result.output
        rows = _csv(result.stdout)
        assert rows[0] == ["a", "b", "kind", "max_error", "argmax"]
        assert [r[2] for r in rows[1:]] == ["abs", "sgn", "ab_phi", "ab_phi_prime"]

    def test_coarse_hermite_fails(self):
        result = _invoke("dual-check", "--a", 0, "--b", 1, "--scheme", "hermite", "--order", 8)
        assert result.exit_code == 1

    def test_bad_order(self):
        result = _invoke("dual-check", "--a", 0.5, "--b", 0.5, "--order", 1)
        assert result.exit_code == 2


class TestVerifyBounds:
    def test_single_pair(self, tmp_path):
        out = tmp_path / "bounds.json"
        result = _invoke(
            "verify-bounds", "--a", 0.5, "--b", 0.5, "--k-max", 300, "--sandwich-k-max", 100, "--out", out
        )
        assert result.exit_code == 0, result.output
        doc = json.loads(out.read_text(encoding="utf-8"))
        assert doc["report"]["passed"] is True
        assert doc["config"]["k_max"] == 300


class TestSweepDepth:
    ARGS = ("sweep-depth", "--a", 0.5, "--b", 0.5, "--n", 6, "--dim", 4, "--seeds", 2, "--depth", 2, "--depth-max", 6)

    def test_curve_file(self, tmp_path):
        result = _invoke(*self.ARGS, "--out", tmp_path)
        assert result.exit_code == 0, result.output
        rows = _csv((tmp_path / "kappa_delta_0.5.csv").read_text(encoding="utf-8"))
        assert rows[0] == ["Step", "Value"]
        assert [r[0] for r in rows[1:]] == ["2", "3", "4", "5", "6"]

    def test_workers_give_same_bytes(self, tmp_path):
        _invoke(*self.ARGS, "--workers", 1, "--out", tmp_path / "one")
        _invoke(*self.ARGS, "--workers", 2, "--out", tmp_path / "two")
        one = (tmp_path / "one" / "kappa_delta_0.5.csv").read_bytes()
        two = (tmp_path / "two" / "kappa_delta_0.5.csv").read_bytes()
        assert one == two

    def test_json(self):
        result = _invoke(*self.ARGS, "--format", "json")
        assert result.exit_code == 0, result.output
        doc = json.loads(result.stdout)
        assert doc["curves"][0]["depths"] == [2, 3, 4, 5, 6]


class TestEmpirical:
    def test_rows(self):
        result = _invoke("empirical", "--width", 8, "--width", 16, "--width", 32, "--trials", 3, "--depth", 2)
        assert result.exit_code == 0, result.output
        rows = _csv(result.stdout)
        assert rows[0] == ["width", "mean_rel_error", "stderr", "slope_so_far"]
        assert [r[0] for r in rows[1:]] == ["8", "16", "32"]

    def test_too_few_trials(self):
        result = _invoke("empirical", "--trials", 2, "--width", 8)
        assert result.exit_code == 2
