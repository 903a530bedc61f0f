# services/maps/cosineMaps.py

"""
cosineMaps.py

functions:
    rhoMap      | 코사인 맵 ϱ(ρ) = ρ + Δ(2/π)(√(1-ρ²) - ρ·arccos ρ)
    rhoPrime    | ϱ'(ρ) = 1 - Δ(2/π)arccos ρ
    zeta        | 제곱 코사인거리 맵 ζ(z) = (1 - ϱ(1-2z))/2
    zetaPrime   | ζ'(z) = 1 - Δ(2/π)arccos(1-2z)
    zetaSecond  | ζ''(z) = -Δ(2/π)(1-z)^(-1/2) z^(-1/2), z ∈ (0,1)

helpers:
    clampDomain     | [lo, hi] 밖 1e-12 이내는 잘라내고, 그 이상은 MapDomainError
    arccosOneMinus2z | arccos(1-2z) 를 arcsin 형태로 계산
    asOutput        | 0차원 결과는 float 로 변환
    zetaValues      | 검사 없이 배열에 ζ 적용 (다른 맵 모듈에서 재사용)
    zetaPrimeValues | 검사 없이 배열에 ζ' 적용

설명:
    모든 맵은 ζ 를 기준으로 계산한다. ϱ(ρ) = 1 - 2ζ((1-ρ)/2), ϱ'(ρ) = ζ'((1-ρ)/2).
    z < EOCNTK_SERIES_SWITCH 이면 b_r 급수(r <= 61)를, 그 외에는 닫힌 형태를 쓴다.
    Δ_φ = 0 이면 모든 맵이 항등이 되도록 명시적으로 분기한다.
"""
from __future__ import annotations

import logging
import math
import os

import numpy as np

from services.maps.mapErrors import MapDomainError, MapSingularityError
from services.maps.seriesExpansion import zetaPrimeSeries, zetaSeries

logger = logging.getLogger(__name__)

SERIES_SWITCH = float(os.getenv("EOCNTK_SERIES_SWITCH", "1e-4"))
CLAMP_TOL = 1e-12


def clampDomain(x, lo: float, hi: float, name: str) -> np.ndarray:
    """
    helper: clampDomain
    입력:
        x      : 스칼라 또는 배열
        lo, hi : 정의역
        name   : 오류 메시지용 변수 이름
    출력:
        [lo, hi] 로 잘린 float 배열
    """
    arr = np.asarray(x, dtype=float)
    bad = np.isnan(arr) | (arr < lo - CLAMP_TOL) | (arr > hi + CLAMP_TOL)
    if np.any(bad):
        first = float(np.atleast_1d(arr)[np.atleast_1d(bad)][0])
        raise MapDomainError(f"{name}={first!r} 가 정의역 [{lo}, {hi}] 밖입니다.")
    return np.clip(arr, lo, hi)


def arccosOneMinus2z(z: np.ndarray) -> np.ndarray:
    """arccos(1-2z) = 2·arcsin√z. z > 1/2 에서는 π - 2·arcsin√(1-z)."""
    return np.where(
        z <= 0.5,
        2.0 * np.arcsin(np.sqrt(z)),
        math.pi - 2.0 * np.arcsin(np.sqrt(1.0 - z)),
    )


def asOutput(arr):
    arr = np.asarray(arr, dtype=float)
    return float(arr) if arr.ndim == 0 else arr


def zetaValues(delta: float, z: np.ndarray) -> np.ndarray:
    if delta == 0.0:
        return z.copy()
    closed = z - (delta / math.pi) * (
        2.0 * np.sqrt(z * (1.0 - z)) - (1.0 - 2.0 * z) * arccosOneMinus2z(z)
    )
    series = zetaSeries(delta, np.minimum(z, SERIES_SWITCH))
    out = np.where(z < SERIES_SWITCH, series, closed)
    return np.clip(out, 0.0, 1.0)


def zetaPrimeValues(delta: float, z: np.ndarray) -> np.ndarray:
    if delta == 0.0:
        return np.ones_like(z)
    closed = 1.0 - delta * (2.0 / math.pi) * arccosOneMinus2z(z)
    series = zetaPrimeSeries(delta, np.minimum(z, SERIES_SWITCH))
    return np.where(z < SERIES_SWITCH, series, closed)


def zeta(delta: float, z):
    """
    function: zeta
    입력:
        delta : Δ_φ ∈ [0, 1]
        z     : [0, 1] (배열 가능)
    출력:
        ζ(z) ∈ [0, 1],  ζ(0) = 0, ζ(1) = 1 - Δ_φ
    """
    z = clampDomain(z, 0.0, 1.0, "z")
    return asOutput(zetaValues(delta, z))


def zetaPrime(delta: float, z):
    """ζ'(z) ∈ [1-2Δ, 1]"""
    z = clampDomain(z, 0.0, 1.0, "z")
    return asOutput(zetaPrimeValues(delta, z))


def zetaSecond(delta: float, z):
    """
    function: zetaSecond
    입력:
        delta : Δ_φ
        z     : (0, 1) 열린 구간
    출력:
        ζ''(z) = -Δ(2/π)(1-z)^(-1/2) z^(-1/2)

    설명:
        끝점 0, 1 에서는 발산하므로 MapSingularityError.
        Δ_φ = 0 이면 ζ 가 항등이라 0 을 돌려준다.
    """
    z = clampDomain(z, 0.0, 1.0, "z")
    if delta == 0.0:
        return asOutput(np.zeros_like(z))
    if np.any((z <= 0.0) | (z >= 1.0)):
        raise MapSingularityError("ζ'' 는 z = 0, 1 에서 정의되지 않습니다.")
    return asOutput(-delta * (2.0 / math.pi) / np.sqrt(z * (1.0 - z)))


def rhoMap(delta: float, rho):
    """
    function: rhoMap
    입력:
        delta : Δ_φ
        rho   : [-1, 1] (배열 가능)
    출력:
        ϱ(ρ) ∈ [-1, 1],  ϱ(1) = 1, ϱ(-1) = -1 + 2Δ_φ
    """
    rho = clampDomain(rho, -1.0, 1.0, "rho")
    return asOutput(1.0 - 2.0 * zetaValues(delta, 0.5 * (1.0 - rho)))


def rhoPrime(delta: float, rho):
    """ϱ'(ρ) ∈ [1-2Δ, 1]"""
    rho = clampDomain(rho, -1.0, 1.0, "rho")
    return asOutput(zetaPrimeValues(delta, 0.5 * (1.0 - rho)))


__all__ = [
    "SERIES_SWITCH",
    "CLAMP_TOL",
    "clampDomain",
    "arccosOneMinus2z",
    "asOutput",
    "zetaValues",
    "zetaPrimeValues",
    "zeta",
    "zetaPrime",
    "zetaSecond",
    "rhoMap",
    "rhoPrime",
]
