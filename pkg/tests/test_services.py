# tests/test_services.py

import numpy as np
import pytest

from services.boundService import PROPAGATION_STARTS, runBoundVerification
from services.dualCheckService import DUAL_TOL, runDualCheck
from services.empiricalService import runEmpirical
from services.kernel.dataset import sampleSphereDataset
from services.kernel.kernelIO import loadKernel, saveDataset
from services.kernel.ntkAssembly import ntkMatrix
from services.maps.activation import CANONICAL_DELTA_GRID, makeActivation
from services.maps.mapErrors import NotApplicableError
from services.schemas.runSchemas import CommandName, RunConfig
from services.spectral.jacobiEigen import conditionNumber, eigenSymmetric
from services.spectral.theoremQuantities import kappaLimit
from services.spectrumService import runSpectrum
from services.sweepService import runDepthSweep


class TestDualCheckService:
    def test_split_scheme_passes(self):
        config = RunConfig(command=CommandName.DUAL_CHECK, pairs=[(0.5, 0.5)])
        report = runDualCheck(config)
        assert len(report.rows) == 4
        assert report.tolerance == DUAL_TOL
        assert report.passed
        assert all(-0.99 <= r.argmax <= 0.99 for r in report.rows)

    def test_hermite_scheme_misses_kinks(self):
        config = RunConfig(command=CommandName.DUAL_CHECK, pairs=[(0.0, 1.0)], order=8, scheme="hermite")
        report = runDualCheck(config)
        assert not report.passed


class TestBoundService:
    def test_skips_delta_zero(self):
        config = RunConfig(
            command=CommandName.VERIFY_BOUNDS,
            pairs=[(0.5, 0.5), (1.0, 0.0)],
            k_max=500,
            sandwich_k_max=150,
        )
        report = runBoundVerification(config)
        assert report.skipped == [(1.0, 0.0)]
        assert len(report.propagation) == len(PROPAGATION_STARTS)
        assert len(report.sandwich) == 1
        row = report.sandwich[0]
        assert row.starts == 199 and row.k_max == 150
        assert row.upper_violations == 0 and row.lower_violations == 0
        assert report.passed


class TestSpectrumService:
    """spectrum 보고서 생성"""

    def test_report(self):
        config = RunConfig(command=CommandName.SPECTRUM, pairs=[(1.0, 1.0)], n=8, dim=4, depth=8)
        report = runSpectrum(config)
        assert report.n == 8 and report.depth == 8
        assert report.delta == pytest.approx(0.5)
        assert report.passed

    def test_uses_first_pair_only(self):
        config = RunConfig(
            command=CommandName.SPECTRUM,
            pairs=[(0.0, 1.0), (0.5, 0.5)],
            n=5,
            dim=3,
            depth=4,
        )
        assert runSpectrum(config).delta == pytest.approx(1.0)

    def test_kernel_output_file(self, tmp_path):
        path = tmp_path / "k" / "kernel.csv"
        config = RunConfig(
            command=CommandName.SPECTRUM, n=6, dim=4, depth=4, ml=3, kernel_output=str(path)
        )
        runSpectrum(config)
        K = loadKernel(path)
        expected = ntkMatrix(makeActivation(0.5, 0.5), sampleSphereDataset(6, 4, seed=2024), 4, ml=3)
        np.testing.assert_allclose(K.block, expected.block, rtol=1e-11)
        assert K.multiplicity == 3

    def test_delta_zero_not_applicable(self):
        config = RunConfig(command=CommandName.SPECTRUM, pairs=[(1.0, 0.0)], n=5, dim=3, depth=4)
        with pytest.raises(NotApplicableError):
            runSpectrum(config)


class TestSweepService:
    def _config(self, **kw):
        base = dict(
            command=CommandName.SWEEP_DEPTH,
            pairs=[(0.0, 1.0), (1.0, 0.0), (0.5, 0.5)],
            n=6,
            dim=8,
            seeds=3,
            seed=17,
            depth_min=2,
            depth_max=10,
        )
        base.update(kw)
        return RunConfig(**base)

    def test_curves_sorted_by_delta(self):
        curves = runDepthSweep(self._config())
        assert [c.delta for c in curves] == pytest.approx([0.0, 0.5, 1.0])
        for c in curves:
            np.testing.assert_array_equal(c.depths, np.arange(2, 11))
            assert c.kappa_mean.shape == (9,)
            assert np.all(c.kappa_mean >= 1.0)

    def test_matches_direct_computation(self):
        curves = runDepthSweep(self._config())
        relu = makeActivation(0.5, 0.5)
        l = 5
        kappas = []
        for s in range(3):
            d = sampleSphereDataset(6, 8, seed=17, stream=s)
            kappas.append(conditionNumber(eigenSymmetric(ntkMatrix(relu, d, l).block)))
        curve = curves[1]
        assert curve.kappa_mean[l - 2] == pytest.approx(np.mean(kappas), rel=1e-10)
        assert curve.kappa_std[l - 2] == pytest.approx(np.std(kappas), rel=1e-8, abs=1e-12)

    def test_identity_activation_keeps_condition_number(self):
        curve = runDepthSweep(self._config(pairs=[(1.0, 0.0)]))[0]
        np.testing.assert_allclose(curve.kappa_mean, curve.kappa_mean[0], rtol=1e-10)

    def test_workers_do_not_change_result(self):
        one = runDepthSweep(self._config(workers=1))
        many = runDepthSweep(self._config(workers=3))
        for a, b in zip(one, many):
            np.testing.assert_array_equal(a.kappa_mean, b.kappa_mean)
            np.testing.assert_array_equal(a.kappa_std, b.kappa_std)

    def test_single_dataset_file(self, tmp_path):
        csvPath, _ = saveDataset(sampleSphereDataset(5, 3, seed=2), tmp_path / "d.csv")
        curve = runDepthSweep(self._config(pairs=[(0.5, 0.5)], dataset=str(csvPath)))[0]
        np.testing.assert_array_equal(curve.kappa_std, np.zeros(9))

    @pytest.mark.slow
    def test_full_scale_ordering(self):
        """n=32, dim=16, 100 데이터셋, l ∈ [4, 64]"""
        config = self._config(
            pairs=[(a, b) for _, a, b in CANONICAL_DELTA_GRID],
            n=32,
            dim=16,
            seeds=100,
            seed=2024,
            depth_min=4,
            depth_max=64,
            workers=4,
        )
        curves = runDepthSweep(config)
        limit = kappaLimit(32)
        for c in curves:
            assert c.kappa_mean[-1] < c.kappa_mean[8 - 4]
        deepest = [c.kappa_mean[-1] for c in curves]
        assert np.all(np.diff(deepest) <= 0.0)
        assert all(np.all(np.isfinite(c.kappa_std)) for c in curves)
        assert limit < curves[-1].kappa_mean[-1] < 2.0 * limit


class TestEmpiricalService:
    def test_widths_sorted_and_exact_at_depth_one(self):
        config = RunConfig(
            command=CommandName.EMPIRICAL,
            pairs=[(1.0, 1.0)],
            n=4,
            dim=8,
            depth=1,
            widths=[16, 4, 8],
            trials=3,
        )
        rows = runEmpirical(config)
        assert [r.width for r in rows] == [4, 8, 16]
        assert all(r.mean_rel_error == 0.0 for r in rows)
