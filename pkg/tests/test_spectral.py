# tests/test_spectral.py

import math

import numpy as np
import pytest

from services.kernel.dataset import makeDataset, sampleSphereDataset
from services.kernel.ntkAssembly import ntkMatrix, wMatrix
from services.maps.activation import makeActivation
from services.maps.inverseDistance import omega, wStar
from services.maps.mapErrors import NotApplicableError
from services.spectral.distanceBounds import (
    BoundQuantityError,
    distanceBoundQuantities,
    distanceSpectrumChecks,
    omegaPower,
    reflectedGenerators,
    restrictedEigenvalues,
)
from services.spectral.jacobiEigen import eigenSymmetric
from services.spectral.theoremQuantities import (
    kappaLimit,
    kernelSpectrum,
    mixingCoefficient,
    referenceEigenvalues,
    solveW,
    theoremReport,
    xi,
)

ASSERTED = {"perron_lower", "perron_upper", "lambda2"}


class TestRestricted:
    """1⊥ 로 제한한 고유값"""

    def test_all_ones_vanishes(self):
        lam = restrictedEigenvalues(np.ones((5, 5)))
        assert lam.shape == (4,)
        np.testing.assert_allclose(lam, 0.0, atol=1e-13)

    def test_identity(self):
        np.testing.assert_allclose(restrictedEigenvalues(np.eye(6)), np.ones(5), atol=1e-13)

    def test_batch(self):
        stack = np.stack([np.eye(4), 2.0 * np.eye(4)])
        lam = restrictedEigenvalues(stack)
        assert lam.shape == (2, 3)
        np.testing.assert_allclose(lam[1], 2.0, atol=1e-13)


class TestGenerators:
    def test_omega_power(self):
        assert omegaPower(0.5, 2.0, 0) == 2.0
        assert float(omegaPower(0.5, 2.0, 2)) == pytest.approx(omega(0.5, omega(0.5, 2.0)), rel=1e-15)

    def test_no_reflection_when_w_star_is_one(self, relu, sphere16):
        np.testing.assert_array_equal(reflectedGenerators(relu, sphere16), wMatrix(relu, sphere16, 1).entries)

    def test_reflection_preserves_omega(self, absolute, sphere16):
        ws = wStar(1.0)
        raw = wMatrix(absolute, sphere16, 1).entries
        gen = reflectedGenerators(absolute, sphere16)
        off = ~np.eye(16, dtype=bool)
        assert np.any(raw[off] < ws)
        assert np.all(gen[off] >= ws * (1.0 - 1e-12))
        np.testing.assert_allclose(omega(1.0, gen[off]), omega(1.0, raw[off]), rtol=1e-9)
        np.testing.assert_array_equal(np.diag(gen), np.zeros(16))

    def test_quantities_ordering(self, relu, smallSphere):
        q = distanceBoundQuantities(relu, smallSphere)
        assert 1.0 <= q.w_low <= q.w_hat <= q.w_high
        assert q.w_tilde > 0 and q.delta_tilde > 0

    def test_quantities_size_limit(self, relu):
        d = sampleSphereDataset(65, 3, seed=1)
        with pytest.raises(BoundQuantityError):
            distanceBoundQuantities(relu, d)


class TestDistanceChecks:
    """W̄_k 스펙트럼 부등식"""

    @pytest.mark.parametrize("a,b", [(0.5, 0.5), (0.0, 1.0)])
    @pytest.mark.parametrize("k", [2, 8, 32])
    def test_asserted_checks_hold(self, a, b, k):
        params = makeActivation(a, b)
        for stream in range(3):
            d = sampleSphereDataset(8, 4, seed=11, stream=stream)
            checks = distanceSpectrumChecks(params, d, k)
            names = {ch.name for ch in checks}
            assert ASSERTED <= names
            assert all(ch.layer == k for ch in checks)
            assert all(ch.passed for ch in checks if ch.asserted)

    def test_report_only_checks_are_not_asserted(self, relu, smallSphere):
        checks = distanceSpectrumChecks(relu, smallSphere, 4)
        for ch in checks:
            assert ch.asserted == (ch.name in ASSERTED)


class TestTheoremQuantities:
    def test_xi_formula(self, absolute):
        W = math.sqrt(2.0)
        expected = 0.375 * (math.pi / 2.0 * W + math.log(3.0 * math.pi / 4.0 * W) - 1.0)
        assert xi(absolute, W, 1) == pytest.approx(expected, rel=1e-14)
        assert xi(absolute, W, 1) == pytest.approx(0.9094, abs=1e-4)

    def test_xi_leading_term_scales_with_inverse_delta(self, relu, absolute):
        W = 3.0
        assert xi(relu, W, 5) - xi(absolute, W, 5) == pytest.approx(
            0.375 * (math.pi / 2.0 * W + math.log(1.5 * math.pi * W + 4.0) - math.log(0.75 * math.pi * W + 4.0)),
            rel=1e-12,
        )

    def test_mixing_coefficient_at_depth_one(self, relu):
        assert mixingCoefficient(relu, 2.0, 1) == pytest.approx(3.0 * math.pi / 16.0 / 0.5 * 2.0 - 0.125)

    def test_not_applicable_when_delta_zero(self, identity, smallSphere):
        with pytest.raises(NotApplicableError):
            xi(identity, 2.0, 3)
        with pytest.raises(NotApplicableError):
            theoremReport(identity, smallSphere, 4)

    def test_reference_unit_norms(self):
        ref = referenceEigenvalues(0.25, np.ones(4), 4, 4)
        assert ref.top == pytest.approx(1.75)
        assert ref.bulk == pytest.approx(0.75)
        assert ref.bulk_multiplicity == 3
        assert ref.in_regime
        M = 4 / 4 * (0.75 * np.eye(4) + 0.25 * np.ones((4, 4)))
        np.testing.assert_allclose(eigenSymmetric(M), [1.75, 0.75, 0.75, 0.75], atol=1e-12)

    def test_reference_brackets_for_varying_norms(self):
        rng = np.random.default_rng(4)
        tau = rng.uniform(0.5, 2.0, size=6)
        c, l, n = 0.4, 3, 6
        ref = referenceEigenvalues(c, tau, l, n)
        M = l / n * ((1.0 - c) * np.diag(tau ** 2) + c * np.outer(tau, tau))
        eig = eigenSymmetric(M)
        slack = 1e-12
        assert eig[0] <= ref.top_interval[1] + slack
        assert ref.top_interval[0] - slack <= eig[0]
        assert ref.bulk_interval[0] - slack <= eig[-1]
        assert eig[1] <= ref.bulk_interval[1] + slack

    def test_reference_out_of_regime(self):
        assert not referenceEigenvalues(1.2, np.ones(3), 2, 3).in_regime

    def test_kappa_limit(self):
        assert kappaLimit(32) == pytest.approx(35.0 / 3.0)
        with pytest.raises(ValueError):
            kappaLimit(1)

    def test_kernel_spectrum_repeats_multiplicity(self, relu, smallSphere):
        K = ntkMatrix(relu, smallSphere, 3, ml=4)
        eigs = kernelSpectrum(K)
        assert eigs.size == 24
        np.testing.assert_array_equal(eigs[:4], np.full(4, eigs[0]))


class TestSolveW:
    def test_two_points(self, relu, orthonormalPair):
        assert solveW(relu, orthonormalPair, 5) == pytest.approx(math.sqrt(2.0), rel=1e-15)

    def test_equicorrelated(self, relu):
        # 정삼각형 꼭짓점: 모든 코사인 -1/2
        pts = [[1.0, 0.0], [-0.5, math.sqrt(3) / 2], [-0.5, -math.sqrt(3) / 2]]
        d = makeDataset(pts)
        W = solveW(relu, d, 4)
        assert W == pytest.approx(1.0 / math.sqrt(0.75), rel=1e-12)

    def test_satisfies_defining_equation(self, relu, sphere16):
        l = 8
        W = solveW(relu, sphere16, l)
        gen = reflectedGenerators(relu, sphere16)
        off = gen[~np.eye(16, dtype=bool)]
        assert off.min() <= W <= off.max()
        lam1 = eigenSymmetric(wMatrix(relu, sphere16, l).entries)[0]
        assert 15.0 * float(omegaPower(0.5, W, l - 1)) == pytest.approx(lam1, rel=1e-8)


class TestTheoremReport:
    def test_report_fields(self, relu, smallSphere):
        report = theoremReport(relu, smallSphere, 8, ml=2, referenceDepth=16)
        assert report.n == 6 and report.depth == 8 and report.multiplicity == 2
        assert len(report.eigenvalues) == 6
        assert np.all(np.diff(report.eigenvalues) <= 0)
        assert report.kappa == pytest.approx(report.eigenvalues[0] / report.eigenvalues[-1])
        assert report.c == pytest.approx(mixingCoefficient(relu, report.W, 8))
        assert report.W_reference is not None
        assert set(report.predictions) == {"lambda1", "bulk_upper", "bulk_lower", "kappa"}
        assert report.residuals["kappa"] == pytest.approx(report.kappa - report.predictions["kappa"])
        assert report.passed

    @pytest.mark.slow
    def test_condition_number_approaches_limit(self, relu):
        d = sampleSphereDataset(6, 4, seed=3)
        kappa = theoremReport(relu, d, 4000).kappa
        assert abs(kappa - kappaLimit(6)) < 0.1


class TestDepthTrends:
    """깊이가 커질 때의 추세"""

    def test_rank_one_gap_shrinks(self, relu, sphere16):
        gaps = [theoremReport(relu, sphere16, l).rank_one_gap for l in (4, 16, 64)]
        assert gaps[0] > gaps[1] > gaps[2]

    def test_w_settles_with_depth(self, relu):
        d = sampleSphereDataset(32, 16, seed=2024)
        shallow = solveW(relu, d, 8)
        deep = solveW(relu, d, 64)
        assert abs(shallow - deep) / deep < 1e-3

    def test_reference_depth_drift(self, relu):
        d = sampleSphereDataset(32, 16, seed=2024)
        report = theoremReport(relu, d, 8, referenceDepth=64)
        assert report.W_reference == pytest.approx(report.W, rel=1e-3)

    @pytest.mark.slow
    @pytest.mark.parametrize("a,b", [(0.5, 0.5), (1.0, 2.0)])
    def test_distance_checks_over_many_datasets(self, a, b):
        params = makeActivation(a, b)
        for stream in range(20):
            d = sampleSphereDataset(16, 8, seed=2024, stream=stream)
            for k in (2, 16, 64):
                checks = distanceSpectrumChecks(params, d, k)
                failed = [ch.name for ch in checks if ch.asserted and not ch.passed]
                assert failed == [], (stream, k, failed)
