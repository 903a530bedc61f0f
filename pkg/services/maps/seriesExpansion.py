# services/maps/seriesExpansion.py

"""
seriesExpansion.py

functions:
    seriesCoefficient   | b_r (r 홀수, r >= 3)
    seriesCoefficients  | b_3, b_5, ..., b_R 배열 (읽기 전용, 캐시)
    seriesPartialSum    | Σ_{r<=R} b_r 와 꼬리 추정 b_R·R/3
    zetaSeries          | z - Δ Σ_{r<=R} b_r z^{r/2}
    tailSum             | Σ_{r>=5} r b_r z^{(r-3)/2}

helpers:
    _logCoefficients    | log b_r 누적 계산
    _polyCoefficients   | √z 다항식 계수 배열 (index = 거듭제곱)

설명:
    ζ(z) = z - Δ_φ Σ_{r∈2N+3} b_r z^{r/2},  Σ b_r = 1.
    b_r = (2/π)·4(r-1)/(r-2)² · t_r,  t_r = ((r-2)!!)²/r!,
    t_3 = 1/6, t_{r+2}/t_r = r²/((r+1)(r+2)).
    큰 r 에서 (r-2)!! 와 r! 이 overflow 되므로 log 영역에서 누적한다.
"""
from __future__ import annotations

import logging
import math
import os
from functools import lru_cache

import numpy as np
from numpy.polynomial import polynomial as P

from services.maps.mapErrors import MapDomainError

logger = logging.getLogger(__name__)

SERIES_MAX_R = int(os.getenv("EOCNTK_SERIES_MAX_R", "100001"))
# ζ, ζ', ω 의 작은-z 분기에서 쓰는 차수
SERIES_TERMS_R = 61


def _checkOrder(r: int) -> int:
    if int(r) != r or r < 3 or r % 2 == 0:
        raise MapDomainError(f"r 은 3 이상의 홀수여야 합니다: {r}")
    return int(r)


@lru_cache(maxsize=8)
def _logCoefficients(rMax: int) -> np.ndarray:
    """
    helper: _logCoefficients
    입력:
        rMax : 최대 홀수 차수
    출력:
        log b_r, r = 3, 5, ..., rMax (읽기 전용 배열)
    """
    r = np.arange(3, rMax + 1, 2, dtype=float)
    # log t_r: t_3 = 1/6 에서 시작해 비율을 누적
    steps = 2.0 * np.log(r[:-1]) - np.log(r[:-1] + 1.0) - np.log(r[:-1] + 2.0)
    logT = np.concatenate(([-math.log(6.0)], -math.log(6.0) + np.cumsum(steps)))
    logB = (
        math.log(2.0 / math.pi)
        + np.log(4.0 * (r - 1.0))
        - 2.0 * np.log(r - 2.0)
        + logT
    )
    logB.setflags(write=False)
    return logB


def seriesCoefficients(rMax: int = SERIES_TERMS_R) -> np.ndarray:
    """b_3, b_5, ..., b_rMax"""
    rMax = _checkOrder(rMax)
    out = np.exp(_logCoefficients(rMax))
    out.setflags(write=False)
    return out


def seriesCoefficient(r: int) -> float:
    """
    function: seriesCoefficient
    입력:
        r : 3 이상의 홀수
    출력:
        b_r (>= 0)
    """
    r = _checkOrder(r)
    return float(math.exp(_logCoefficients(r)[-1]))


def seriesPartialSum(rMax: int = SERIES_MAX_R) -> tuple[float, float]:
    """
    function: seriesPartialSum
    입력:
        rMax : 부분합 상한 (홀수)
    출력:
        (Σ_{r<=rMax} b_r, 꼬리 추정값)

    설명:
        b_r ~ r^(-5/2) 로 감소하므로 Σ_{r>R} b_r 은 적분 비교로 대략 b_R·R/3 이다.
        두 값의 합은 1 에 가까워야 한다.
    """
    b = seriesCoefficients(rMax)
    total = float(np.sum(b[::-1]))
    tail = float(b[-1] * rMax / 3.0)
    logger.debug("[Maps] partial sum R=%d sum=%.15g tail=%.3g", rMax, total, tail)
    return total, tail


@lru_cache(maxsize=4)
def _polyCoefficients(rMax: int) -> np.ndarray:
    """
    helper: _polyCoefficients
    s = √z 에 대한 다항식 계수. index r 에 b_r, 나머지는 0.
    """
    coef = np.zeros(rMax + 1)
    coef[3::2] = seriesCoefficients(rMax)
    coef.setflags(write=False)
    return coef


def zetaSeries(delta: float, z, rMax: int = SERIES_TERMS_R):
    """z - Δ Σ_{r<=rMax} b_r z^{r/2}, z >= 0 가정"""
    z = np.asarray(z, dtype=float)
    s = np.sqrt(z)
    return z - delta * P.polyval(s, _polyCoefficients(_checkOrder(rMax)))


def zetaPrimeSeries(delta: float, z, rMax: int = SERIES_TERMS_R):
    """1 - Δ Σ (r/2) b_r z^{(r-2)/2}"""
    z = np.asarray(z, dtype=float)
    s = np.sqrt(z)
    coef = P.polyder(_polyCoefficients(_checkOrder(rMax)))
    # d/ds Σ b_r s^r = Σ r b_r s^{r-1},  dζ/dz 는 여기에 1/(2s) 를 곱한 것
    return 1.0 - delta * 0.5 * P.polyval(s, coef[1:])


def ratioSeries(delta: float, v, rMax: int = SERIES_TERMS_R):
    """
    g(w) = 1 - ζ(w^-2)/w^-2 = Δ Σ b_r v^{r-2},  v = 1/w.
    ω 의 큰-w 분기에서 사용한다.
    """
    v = np.asarray(v, dtype=float)
    return delta * P.polyval(v, _polyCoefficients(_checkOrder(rMax))[2:])


def tailSum(z, rMax: int = SERIES_TERMS_R):
    """
    function: tailSum
    입력:
        z : [0, 1] 값 (배열 가능)
    출력:
        Σ_{r>=5} r b_r z^{(r-3)/2}

    설명:
        닫힌 형태 z^(-1/2)(4/π)arccos(1-2z) - 3b_3 는 z→0 에서 상쇄가 크므로
        z < 1e-2 에서는 급수를 쓴다.
    """
    z = np.asarray(z, dtype=float)
    s = np.sqrt(z)
    coef = np.zeros(rMax + 1)
    r = np.arange(5, rMax + 1, 2)
    coef[r - 3] = r * seriesCoefficients(rMax)[1:]
    series = P.polyval(s, coef)
    with np.errstate(divide="ignore", invalid="ignore"):
        arc = np.where(
            z <= 0.5,
            2.0 * np.arcsin(np.sqrt(z)),
            math.pi - 2.0 * np.arcsin(np.sqrt(np.clip(1.0 - z, 0.0, None))),
        )
        closed = arc * (4.0 / math.pi) / s - 3.0 * seriesCoefficient(3)
    out = np.where(z < 1e-2, series, closed)
    return float(out) if out.ndim == 0 else out


__all__ = [
    "SERIES_MAX_R",
    "SERIES_TERMS_R",
    "seriesCoefficient",
    "seriesCoefficients",
    "seriesPartialSum",
    "zetaSeries",
    "zetaPrimeSeries",
    "ratioSeries",
    "tailSum",
]
