# services/maps/inverseDistance.py

"""
inverseDistance.py

functions:
    omega             | 역코사인거리 맵 ω(w) = ζ(w^-2)^(-1/2)
    omegaPrime        | ω'(w) = (ω/w)³ ζ'(w^-2)
    omegaExcess       | ω(w) - w (상쇄 없이)
    omegaAtOne        | lim_{w→1+} ω(w) = (1-Δ)^(-1/2)
    iterateOmega      | (w, ω(w), ..., ω^{∘count}(w))
    wStar             | ω' ∈ [0,1) 이 보장되는 임계값 w*
    epsilonRemainder  | ω 의 3차 나머지 ε(w) (mpmath 고정밀)

helpers:
    _ratioArray       | g(w) = 1 - ζ(w^-2)/w^-2
    checkW            | w >= 1 검사 (1e-12 이내 clamp)

설명:
    ω(w) = w + Δ(4/3π) + (3/2)(Δ·4/3π)² w^-1 + Δ ε(w) w^-2.
    ω - w = w·((1-g)^(-1/2) - 1) = w·expm1(-½·log1p(-g)) 로 계산해
    큰 w 에서도 자릿수 손실이 없다.
"""
from __future__ import annotations

import logging
import math

import mpmath
import numpy as np

from services.maps.cosineMaps import (
    CLAMP_TOL,
    SERIES_SWITCH,
    zetaValues,
    zetaPrimeValues,
    asOutput,
)
from services.maps.mapErrors import (
    MapDomainError,
    MapSingularityError,
    NotApplicableError,
)
from services.maps.seriesExpansion import ratioSeries

logger = logging.getLogger(__name__)

FOUR_OVER_3PI = 4.0 / (3.0 * math.pi)


def checkW(w) -> np.ndarray:
    arr = np.asarray(w, dtype=float)
    bad = np.isnan(arr) | (arr < 1.0 - CLAMP_TOL)
    if np.any(bad):
        first = float(np.atleast_1d(arr)[np.atleast_1d(bad)][0])
        raise MapDomainError(f"w={first!r} 는 1 이상이어야 합니다.")
    return np.maximum(arr, 1.0)


def _ratioArray(delta: float, w: np.ndarray) -> np.ndarray:
    """
    helper: _ratioArray
    g(w) = 1 - ζ(z)/z, z = w^-2. z 가 작으면 급수 Δ Σ b_r w^-(r-2).
    w = inf 이면 0.
    """
    with np.errstate(divide="ignore", invalid="ignore"):
        v = np.where(np.isinf(w), 0.0, 1.0 / w)
        z = v * v
        closed = 1.0 - zetaValues(delta, z) / z
    series = ratioSeries(delta, np.minimum(v, math.sqrt(SERIES_SWITCH)))
    g = np.where(z < SERIES_SWITCH, series, closed)
    if np.any(g >= 1.0):
        raise MapSingularityError(
            "ζ(w^-2) = 0 이 되어 ω 가 발산합니다 (Δ_φ=1, w→1)."
        )
    return g


def _excessArray(delta: float, w: np.ndarray) -> np.ndarray:
    g = _ratioArray(delta, w)
    finite = np.isfinite(w)
    with np.errstate(invalid="ignore"):
        ex = w * np.expm1(-0.5 * np.log1p(-g))
    return np.where(finite, ex, delta * FOUR_OVER_3PI)


def omega(delta: float, w):
    """
    function: omega
    입력:
        delta : Δ_φ
        w     : >= 1 (inf 허용, 배열 가능)
    출력:
        ω(w) > 1.  Δ_φ = 0 이면 w 그대로.

    설명:
        w = 1 은 ρ = -1 (반대 방향 쌍) 에 해당하며 Δ_φ < 1 이면 ω(1) = (1-Δ)^(-1/2).
        Δ_φ = 1 이면 ζ(1) = 0 이라 MapSingularityError.
    """
    w = checkW(w)
    if delta == 0.0:
        return asOutput(w)
    return asOutput(np.where(np.isinf(w), np.inf, w + _excessArray(delta, w)))


def omegaExcess(delta: float, w):
    """ω(w) - w. w = inf 이면 극한값 Δ·4/(3π)."""
    w = checkW(w)
    if delta == 0.0:
        return asOutput(np.zeros_like(w))
    return asOutput(_excessArray(delta, w))


def omegaPrime(delta: float, w):
    """
    function: omegaPrime
    입력:
        delta, w
    출력:
        ω'(w) = (ω/w)³ ζ'(w^-2).  w >= w* 이면 [0, 1).
    """
    w = checkW(w)
    if delta == 0.0:
        return asOutput(np.ones_like(w))
    finite = np.isfinite(w)
    wf = np.where(finite, w, 2.0)
    ratio = 1.0 + _excessArray(delta, wf) / wf
    zp = zetaPrimeValues(delta, 1.0 / (wf * wf))
    return asOutput(np.where(finite, ratio ** 3 * zp, 1.0))


def omegaAtOne(delta: float) -> float:
    if delta >= 1.0:
        return math.inf
    return 1.0 / math.sqrt(1.0 - delta)


def iterateOmega(delta: float, w: float, count: int) -> np.ndarray:
    """
    function: iterateOmega
    입력:
        delta : Δ_φ
        w     : 시작값
        count : 적용 횟수
    출력:
        길이 count+1 배열 (w, ω(w), ..., ω^{∘count}(w))
    """
    if count < 0:
        raise ValueError("count 는 0 이상이어야 합니다.")
    out = np.empty(count + 1)
    cur = float(checkW(w))
    out[0] = cur
    for k in range(1, count + 1):
        cur = omega(delta, cur)
        out[k] = cur
    return out


def wStar(delta: float) -> float:
    """
    function: wStar
    입력:
        delta : Δ_φ ∈ (0, 1]
    출력:
        ((1 - cos(min(π/(2Δ), π)))/2)^(-1/2).  Δ <= 1/2 이면 1.
    """
    if delta <= 0.0:
        raise NotApplicableError("Δ_φ = 0 에서는 w* 가 필요하지 않습니다.")
    angle = min(math.pi / (2.0 * delta), math.pi)
    return ((1.0 - math.cos(angle)) / 2.0) ** -0.5


def _epsilonScalar(delta: float, w: float) -> float:
    dps = int(40 + 8 * math.log10(max(w, 10.0)))
    with mpmath.workdps(dps):
        W = mpmath.mpf(w)
        d = mpmath.mpf(delta)
        z = 1 / (W * W)
        arc = 2 * mpmath.asin(mpmath.sqrt(z))
        zt = z - (d / mpmath.pi) * (2 * mpmath.sqrt(z * (1 - z)) - (1 - 2 * z) * arc)
        if zt <= 0:
            raise MapSingularityError(f"ζ(w^-2) = 0 (w={w})")
        om = 1 / mpmath.sqrt(zt)
        s = d * 4 / (3 * mpmath.pi)
        eps = (om - W - s - mpmath.mpf(3) / 2 * s * s / W) * W * W / d
        return float(eps)


def epsilonRemainder(delta: float, w):
    """
    function: epsilonRemainder
    입력:
        delta : Δ_φ ∈ (0, 1]
        w     : > 1 (배열 가능)
    출력:
        ε(w) = (ω(w) - w - Δ·4/3π - (3/2)(Δ·4/3π)² w^-1)·w²/Δ

    설명:
        w^-2 로 나눈 3차 나머지라 double 로는 자릿수가 남지 않는다.
        mpmath 로 ζ 닫힌 형태부터 다시 계산하며 정밀도는 w 크기에 따라 늘린다.
        w → ∞ 에서 b_5/2 + Δ²(5/16)b_3³ 로 수렴한다.
    """
    if delta <= 0.0:
        raise NotApplicableError("Δ_φ = 0 에서는 ε(w) 가 정의되지 않습니다.")
    arr = checkW(w)
    if np.any(np.isinf(arr)):
        raise MapDomainError("ε(w) 는 유한한 w 에서만 계산합니다.")
    out = np.array([_epsilonScalar(delta, float(x)) for x in arr.ravel()])
    return asOutput(out.reshape(arr.shape))


__all__ = [
    "FOUR_OVER_3PI",
    "checkW",
    "omega",
    "omegaExcess",
    "omegaPrime",
    "omegaAtOne",
    "iterateOmega",
    "wStar",
    "epsilonRemainder",
]
