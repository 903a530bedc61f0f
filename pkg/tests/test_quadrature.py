# tests/test_quadrature.py

import math

import numpy as np
import pytest

from services.maps.activation import makeActivation
from services.quadrature.dualClosed import QuadratureError, dualClosed, dualFunction
from services.quadrature.dualMonteCarlo import MC_CHUNK, dualMonteCarlo
from services.quadrature.dualQuadrature import dualQuadrature
from services.schemas.dualSchemas import DualKind, DualMethod

RHOS = [-0.99, -0.5, 0.0, 0.3, 0.75, 0.99]


class TestClosedForms:
    def test_known_values(self):
        assert dualClosed("sgn", 0.0) == 0.0
        assert dualClosed("abs", 1.0) == pytest.approx(1.0)
        assert dualClosed("abs", 0.0) == pytest.approx(2.0 / math.pi)
        assert dualClosed("sgn", -1.0) == pytest.approx(-1.0)
        assert dualClosed("sgn", 0.5) == pytest.approx(1.0 / 3.0)

    def test_relu_phi_at_zero(self, relu):
        assert dualClosed(DualKind.AB_PHI, 0.0, relu) == pytest.approx(1.0 / (2.0 * math.pi))

    def test_eoc_scaling_gives_cosine_map(self, relu):
        # σ² dual(φ)(1) = 1, σ² dual(φ')(1) = 1
        assert relu.sigma ** 2 * dualClosed(DualKind.AB_PHI, 1.0, relu) == pytest.approx(1.0)
        assert relu.sigma ** 2 * dualClosed(DualKind.AB_PHI_PRIME, 1.0, relu) == pytest.approx(1.0)

    def test_requires_params(self):
        with pytest.raises(QuadratureError):
            dualClosed(DualKind.AB_PHI, 0.1)

    def test_rejects_rho_out_of_range(self):
        with pytest.raises(QuadratureError):
            dualClosed("abs", 1.5)


class TestQuadrature:
    """결정적 수치적분 vs 닫힌 형태"""

    @pytest.mark.parametrize("kind", list(DualKind))
    def test_split_matches_closed(self, kind, relu):
        f = dualFunction(kind, relu)
        for rho in RHOS:
            est = dualQuadrature(f, rho)
            assert est.method is DualMethod.QUADRATURE
            assert est.scheme == "split"
            assert abs(est.value - dualClosed(kind, rho, relu)) <= 1e-8

    def test_asymmetric_activation(self):
        p = makeActivation(1.0, 2.0)
        for kind in (DualKind.AB_PHI, DualKind.AB_PHI_PRIME):
            f = dualFunction(kind, p)
            for rho in (-0.7, 0.2):
                assert dualQuadrature(f, rho).value == pytest.approx(dualClosed(kind, rho, p), abs=1e-8)

    @pytest.mark.parametrize("rho", [-0.4, 0.0, 0.6])
    def test_hermite_exact_on_polynomials(self, rho):
        # E[U1² U2²] = 1 + 2ρ²
        est = dualQuadrature(np.square, rho, order=12, scheme="hermite")
        assert est.value == pytest.approx(1.0 + 2.0 * rho ** 2, rel=1e-12)

    @pytest.mark.parametrize("rho", [-0.8, 0.1, 0.9])
    def test_identity_gives_rho(self, rho):
        assert dualQuadrature(lambda s: s, rho, order=2, scheme="hermite").value == pytest.approx(rho, abs=1e-14)
        assert dualQuadrature(lambda s: s, rho, kinks=()).value == pytest.approx(rho, abs=1e-10)

    def test_endpoints(self):
        assert dualQuadrature(np.abs, 1.0).value == pytest.approx(1.0, abs=1e-8)
        assert dualQuadrature(np.sign, -1.0).value == pytest.approx(-1.0, abs=1e-8)

    def test_deterministic(self):
        a = dualQuadrature(np.abs, 0.37)
        b = dualQuadrature(np.abs, 0.37)
        assert a.value == b.value

    @pytest.mark.parametrize(
        "kwargs",
        [{"order": 1}, {"order": 5000}, {"scheme": "gauss"}],
    )
    def test_rejects_bad_arguments(self, kwargs):
        with pytest.raises(QuadratureError):
            dualQuadrature(np.abs, 0.1, **kwargs)


class TestMonteCarlo:
    def test_close_to_closed_form(self):
        est = dualMonteCarlo(np.abs, 0.3, 20000, seed=11)
        assert est.method is DualMethod.MONTE_CARLO
        assert est.samples == 20000
        assert est.stderr > 0
        assert abs(est.value - dualClosed("abs", 0.3)) < 5 * est.stderr

    def test_workers_do_not_change_result(self):
        samples = 2 * MC_CHUNK + 1234
        one = dualMonteCarlo(np.sign, -0.2, samples, seed=5, workers=1)
        many = dualMonteCarlo(np.sign, -0.2, samples, seed=5, workers=4)
        assert one.value == many.value
        assert one.stderr == many.stderr

    def test_seed_changes_result(self):
        a = dualMonteCarlo(np.abs, 0.0, 5000, seed=1)
        b = dualMonteCarlo(np.abs, 0.0, 5000, seed=2)
        assert a.value != b.value

    def test_rejects_small_sample(self):
        with pytest.raises(QuadratureError):
            dualMonteCarlo(np.abs, 0.0, 999, seed=1)
