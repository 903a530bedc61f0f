# tests/test_propagation.py

import math

import numpy as np
import pytest

from services.maps.inverseDistance import iterateOmega
from services.maps.mapErrors import NotApplicableError
from services.maps.mapIteration import iterate
from services.maps.propagation import (
    countViolations,
    lowerBoundConstant,
    propagationDeviation,
    propagationEnvelope,
    propagationEstimate,
    uBounds,
    uUpperBound,
)


class TestPropagationEstimate:
    """w_k 닫힌 형태 추정과 편차"""

    def test_first_layer(self):
        delta, w = 0.5, 2.0
        expected = w + delta * (2.0 / math.pi) * math.log(3.0 * math.pi / (4.0 * delta) * w)
        assert propagationEstimate(delta, w, 1) == pytest.approx(expected, rel=1e-14)

    def test_array_layers(self):
        est = propagationEstimate(0.25, 3.0, np.arange(1, 6))
        assert est.shape == (5,)
        assert np.all(np.diff(est) > 0)

    @pytest.mark.parametrize("delta", [0.25, 0.5, 1.0])
    def test_deviation_plateaus(self, delta):
        dev = propagationDeviation(delta, 2.0, 1000)
        assert dev.shape == (1000,)
        assert np.all(np.isfinite(dev))
        early = dev[9:100].max()
        late = dev[99:].max()
        assert late - early < 0.1

    def test_rejects_layer_zero(self):
        with pytest.raises(ValueError):
            propagationEstimate(0.5, 2.0, 0)

    def test_not_applicable_when_delta_zero(self):
        with pytest.raises(NotApplicableError):
            propagationEstimate(0.0, 2.0, 3)
        with pytest.raises(NotApplicableError):
            propagationEnvelope(0.0, 2.0, 3)


class TestEnvelope:
    @pytest.mark.parametrize("delta", [0.25, 0.5, 1.0])
    def test_iterates_stay_inside(self, delta):
        w = 10.0
        k = np.arange(1, 201)
        wk = iterateOmega(delta, w, 199)
        lower, upper = propagationEnvelope(delta, w, k)
        tol = 1e-9 * np.maximum(1.0, np.abs(wk))
        assert np.all(wk >= lower - tol)
        assert np.all(wk <= upper + tol)

    def test_scalar_layer(self):
        lower, upper = propagationEnvelope(0.5, 10.0, 1)
        assert lower == pytest.approx(10.0)
        assert upper == pytest.approx(10.0)


class TestUBounds:
    """u_k 상·하한"""

    @pytest.mark.parametrize("delta", [1 / 8, 0.5, 1.0])
    def test_no_violations_on_grid(self, delta):
        starts = np.arange(-99, 100) / 100.0
        trace = iterate(delta, starts, 200)
        lower, upper, c = uBounds(delta, trace)
        assert lower.shape == trace.u.shape
        assert c.shape == starts.shape
        assert countViolations(trace.u, upper, "upper") == 0
        assert countViolations(trace.u, lower, "lower") == 0

    def test_constant_undefined_at_rho_one(self):
        trace = iterate(0.5, np.array([1.0, 0.2]), 5)
        c = lowerBoundConstant(0.5, trace)
        assert np.isnan(c[0])
        assert np.isfinite(c[1])

    def test_upper_bound_values(self):
        assert uUpperBound(0.5, 4.0) == pytest.approx(3.0 * math.pi / 16.0 / 0.5 * 4.0 - 0.125)
        assert uUpperBound(0.5, math.inf) == math.inf
        with pytest.raises(NotApplicableError):
            uUpperBound(0.0, 2.0)


class TestCountViolations:
    def test_sides(self):
        assert countViolations([1.0, 2.0, 3.0], 2.0) == 1
        assert countViolations([1.0, 2.0, 3.0], 2.0, "lower") == 1

    def test_relative_tolerance(self):
        assert countViolations([1.0 + 1e-10], 1.0) == 0
        assert countViolations([1e6 + 1e-4], 1e6) == 0
        assert countViolations([1.0 + 1e-6], 1.0) == 1

    def test_infinite_bound(self):
        assert countViolations([5.0], -math.inf, "lower") == 0
        assert countViolations([5.0], math.inf, "upper") == 0

    def test_rejects_unknown_side(self):
        with pytest.raises(ValueError):
            countViolations([1.0], 1.0, "middle")


class TestTailDecay:
    @pytest.mark.parametrize("delta", [0.25, 0.5])
    def test_z_decays_like_inverse_square(self, delta):
        trace = iterate(delta, np.array([0.3]), 4000)
        z = trace.z[:, 0]
        slope = (math.log(z[3999]) - math.log(z[999])) / math.log(4.0)
        assert abs(slope + 2.0) < 0.05
