# services/maps/activation.py

"""
activation.py

functions:
    makeActivation  | (a, b) 로 ActivationParams 생성 (Δ_φ, EOC σ, Lipschitz)
    phi             | φ(s) = a·s + b·|s|
    phiPrime        | φ'(s) = a + b·sgn(s), φ'(0) = a
    isEoc           | σ²(a²+b²) = 1 여부
    canonicalGrid   | 표준 Δ_φ 8개에 대응하는 (a, b) 쌍 목록

설명:
    (a,b)-ReLU 는 항등(1,0), ReLU(½,½), 절댓값(0,1) 을 모두 포함한다.
    σ 는 항상 EOC 값 (a²+b²)^(-1/2) 로 정해진다.
"""
from __future__ import annotations

import logging
import math

import numpy as np

from services.schemas.mapSchemas import ActivationParams

logger = logging.getLogger(__name__)

EOC_TOL = 1e-12

# (Δ_φ, a, b): b=1 또는 a=1 로 맞춘 표준 쌍
CANONICAL_DELTA_GRID: tuple[tuple[float, float, float], ...] = (
    (1 / 8, math.sqrt(7.0), 1.0),
    (1 / 4, math.sqrt(3.0), 1.0),
    (3 / 8, math.sqrt(5.0), math.sqrt(3.0)),
    (1 / 2, 1.0, 1.0),
    (5 / 8, math.sqrt(3.0), math.sqrt(5.0)),
    (3 / 4, 1.0, math.sqrt(3.0)),
    (7 / 8, 1.0, math.sqrt(7.0)),
    (1.0, 0.0, 1.0),
)


class ActivationError(ValueError):
    """(a,b) 가 (0,0) 이거나 유한하지 않을 때 발생하는 예외"""
    pass


def makeActivation(a: float, b: float) -> ActivationParams:
    """
    function: makeActivation
    입력:
        a, b : 활성함수 계수
    출력:
        ActivationParams

    설명:
        Δ_φ = b²/(a²+b²), σ = (a²+b²)^(-1/2), lipschitz = |a|+|b|.
        b = 0 이면 Δ_φ 는 정확히 0, a = 0 이면 정확히 1 이 되도록 분기한다.
    """
    a = float(a)
    b = float(b)
    if not (math.isfinite(a) and math.isfinite(b)):
        raise ActivationError(f"(a, b) 는 유한해야 합니다: ({a}, {b})")
    if a == 0.0 and b == 0.0:
        raise ActivationError("(a, b) = (0, 0) 은 허용되지 않습니다.")

    norm2 = a * a + b * b
    if b == 0.0:
        delta = 0.0
    elif a == 0.0:
        delta = 1.0
    else:
        delta = (b * b) / norm2

    params = ActivationParams(
        a=a,
        b=b,
        delta=delta,
        sigma=1.0 / math.sqrt(norm2),
        lipschitz=abs(a) + abs(b),
    )
    logger.debug("[Maps] activation a=%.6g b=%.6g delta=%.6g", a, b, delta)
    return params


def phi(params: ActivationParams, s):
    """φ(s) = a·s + b·|s| (스칼라/배열 모두)"""
    return params.a * np.asarray(s, dtype=float) + params.b * np.abs(s)


def phiPrime(params: ActivationParams, s):
    """φ'(s) = a + b·sgn(s), np.sign(0) = 0 이라 φ'(0) = a"""
    return params.a + params.b * np.sign(np.asarray(s, dtype=float))


def isEoc(params: ActivationParams, tol: float = EOC_TOL) -> bool:
    return abs(params.sigma ** 2 * (params.a ** 2 + params.b ** 2) - 1.0) <= tol


def canonicalGrid() -> list[ActivationParams]:
    return [makeActivation(a, b) for _, a, b in CANONICAL_DELTA_GRID]


__all__ = [
    "ActivationError",
    "CANONICAL_DELTA_GRID",
    "makeActivation",
    "phi",
    "phiPrime",
    "isEoc",
    "canonicalGrid",
]
