# services/maps/propagation.py

"""
propagation.py

functions:
    propagationEstimate  | w_k 의 닫힌 형태 추정 w + Δ(4/3π)(k-1) + Δ(2/π)log(Δ^-1(3π/4)w + k - 1)
    propagationDeviation | |ω^{∘(k-1)}(w) - 추정| (k = 1..kMax)
    propagationEnvelope  | w_k 의 보장된 하한/상한 (digamma, trigamma)
    uUpperBound          | u_k <= Δ^-1(3π/16)w_k - 1/8
    lowerBoundConstant   | u_k 하한의 상수 c (시작점별)
    uBounds              | MapTrace 전체에 대한 (하한, 상한, c)
    countViolations      | 허용오차 1e-9·max(1,|bound|) 기준 위반 개수

설명:
    하한 상수 c 는 두 값의 최댓값이다.
      - 귀납 단계 상수: 2 + ½b_3^-1 ε(w_1) z_1/ζ(z_1) + ¼b_3^-1 T(z_1)/ζ(z_1),
        T(z) = Σ_{r>=5} r b_r z^{(r-3)/2}
      - 초기 단계 상수: ζ'(z_k) >= 0 이 처음 성립하는 층까지의 (UB_k - u_k)/(k z_k)
    k = 1 의 초기 단계 값은 2 + ¼ s^-1 z_1^(-3/2) - (9/8) z_1^-1 (s = Δ b_3/2) 와 같다.
"""
from __future__ import annotations

import logging
import math

import mpmath
import numpy as np

from services.maps.cosineMaps import asOutput, zetaPrimeValues, zetaValues
from services.maps.inverseDistance import (
    FOUR_OVER_3PI,
    checkW,
    epsilonRemainder,
    iterateOmega,
)
from services.maps.mapErrors import NotApplicableError
from services.maps.seriesExpansion import seriesCoefficient, tailSum
from services.schemas.mapSchemas import MapTrace

logger = logging.getLogger(__name__)

UB_SLOPE = 3.0 * math.pi / 16.0
VIOLATION_RTOL = 1e-9


def _requirePositive(delta: float, what: str) -> None:
    if delta <= 0.0:
        raise NotApplicableError(f"Δ_φ = 0 에서는 {what} 이(가) 정의되지 않습니다.")


def propagationEstimate(delta: float, w: float, k):
    """
    function: propagationEstimate
    입력:
        delta : Δ_φ ∈ (0, 1]
        w     : w_1 > 1
        k     : 층 (>= 1, 배열 가능)
    출력:
        w + Δ(4/3π)(k-1) + Δ(2/π)·log(Δ^-1(3π/4)w + k - 1)
    """
    _requirePositive(delta, "propagation estimate")
    k = np.asarray(k, dtype=float)
    if np.any(k < 1):
        raise ValueError("k 는 1 이상이어야 합니다.")
    est = (
        w
        + delta * FOUR_OVER_3PI * (k - 1.0)
        + delta * (2.0 / math.pi) * np.log((3.0 * math.pi / (4.0 * delta)) * w + k - 1.0)
    )
    return asOutput(est)


def propagationDeviation(delta: float, w: float, kMax: int) -> np.ndarray:
    """k = 1..kMax 에 대한 |w_k - estimate(k)|, w_k = ω^{∘(k-1)}(w)"""
    wk = iterateOmega(delta, w, kMax - 1)
    k = np.arange(1, kMax + 1)
    return np.abs(wk - propagationEstimate(delta, w, k))


def propagationEnvelope(delta: float, w: float, k):
    """
    function: propagationEnvelope
    입력:
        delta : Δ_φ ∈ (0, 1]
        w     : w_1
        k     : 층 (배열 가능)
    출력:
        (lower, upper)

    설명:
        s = Δ b_3 / 2, k_0 = w/s - 1 일 때
            lower = w + s(k-1)
            upper = lower + (3/2)s(ψ(k_0+k) - ψ(k_0+1))
                          + Δ ε(w) s^-2 (ψ'(k_0+1) - ψ'(k_0+k))
        상한은 [w, ∞) 에서 ε 이 감소한다는 사실에 기대므로 w 가 너무 1 에 가까우면 쓰지 않는다.
    """
    _requirePositive(delta, "propagation envelope")
    w = float(checkW(w))
    s = delta * seriesCoefficient(3) / 2.0
    k0 = w / s - 1.0
    eps = epsilonRemainder(delta, w)
    ks = np.atleast_1d(np.asarray(k, dtype=float))

    lower = w + s * (ks - 1.0)
    correction = np.empty_like(ks)
    for i, kk in enumerate(ks):
        dig = mpmath.digamma(k0 + kk) - mpmath.digamma(k0 + 1.0)
        tri = mpmath.psi(1, k0 + 1.0) - mpmath.psi(1, k0 + kk)
        correction[i] = float(1.5 * s * dig + delta * eps * tri / (s * s))
    upper = lower + correction

    if np.ndim(k) == 0:
        return float(lower[0]), float(upper[0])
    return lower, upper


def uUpperBound(delta: float, w):
    """Δ^-1 (3π/16) w - 1/8 (w = inf 이면 inf)"""
    _requirePositive(delta, "u 상한")
    w = np.asarray(w, dtype=float)
    return asOutput(UB_SLOPE / delta * w - 0.125)


def lowerBoundConstant(delta: float, trace: MapTrace) -> np.ndarray:
    """
    function: lowerBoundConstant
    입력:
        delta : Δ_φ ∈ (0, 1]
        trace : iterate 결과
    출력:
        시작점별 c (시작점 배열 모양). ρ_1 = 1 처럼 정의되지 않는 곳은 NaN.
    """
    _requirePositive(delta, "하한 상수")
    b3 = seriesCoefficient(3)
    z1 = np.asarray(trace.z[0], dtype=float)
    zeta1 = zetaValues(delta, z1)
    valid = (z1 > 0.0) & (zeta1 > 0.0)

    safeZ = np.where(valid, z1, 0.25)
    safeZeta = np.where(valid, zeta1, 1.0)
    eps1 = np.asarray(epsilonRemainder(delta, 1.0 / np.sqrt(safeZ)))
    induction = (
        2.0
        + 0.5 / b3 * eps1 * safeZ / safeZeta
        + 0.25 / b3 * np.asarray(tailSum(safeZ)) / safeZeta
    )

    z = trace.z
    depthIdx = np.arange(trace.depth).reshape((-1,) + (1,) * z1.ndim)
    k = depthIdx + 1.0
    with np.errstate(divide="ignore", invalid="ignore"):
        ub = UB_SLOPE / delta * trace.w - 0.125
        base = (ub - trace.u) / (k * z)
    nonneg = zetaPrimeValues(delta, z) >= 0.0
    firstNonneg = np.where(nonneg.any(axis=0), np.argmax(nonneg, axis=0), trace.depth - 1)
    include = (depthIdx <= firstNonneg) & (z > 0.0)
    baseMax = np.max(np.where(include, base, -np.inf), axis=0)

    c = np.where(valid, np.maximum(induction, baseMax), np.nan)
    logger.debug("[Maps] lower bound constant delta=%.6g max c=%.6g", delta, np.nanmax(c))
    return c


def uBounds(delta: float, trace: MapTrace) -> tuple[np.ndarray, np.ndarray, np.ndarray]:
    """
    function: uBounds
    입력:
        delta, trace
    출력:
        (lower, upper, c). 모양은 trace.u 와 같고 c 는 시작점 모양.
        z_k = 0 인 곳은 하한을 -inf 로 둔다.
    """
    upper = np.asarray(uUpperBound(delta, trace.w))
    c = lowerBoundConstant(delta, trace)
    k = np.arange(1, trace.depth + 1).reshape((-1,) + (1,) * np.ndim(c))
    with np.errstate(invalid="ignore"):
        lower = upper - c * k * trace.z
    lower = np.where((trace.z > 0.0) & np.isfinite(lower), lower, -np.inf)
    return lower, upper, c


def countViolations(values, bound, side: str = "upper") -> int:
    """
    function: countViolations
    입력:
        values : 검사할 값
        bound  : 경계
        side   : "upper" (values <= bound) | "lower" (values >= bound)
    출력:
        위반 개수 (허용오차 1e-9·max(1, |bound|))
    """
    values = np.asarray(values, dtype=float)
    bound = np.asarray(bound, dtype=float)
    with np.errstate(invalid="ignore"):
        tol = VIOLATION_RTOL * np.maximum(1.0, np.abs(np.where(np.isfinite(bound), bound, 0.0)))
        if side == "upper":
            bad = values > bound + tol
        elif side == "lower":
            bad = values < bound - tol
        else:
            raise ValueError(f"side 는 'upper' 또는 'lower' 여야 합니다: {side}")
    return int(np.count_nonzero(bad))


__all__ = [
    "propagationEstimate",
    "propagationDeviation",
    "propagationEnvelope",
    "uUpperBound",
    "lowerBoundConstant",
    "uBounds",
    "countViolations",
]
