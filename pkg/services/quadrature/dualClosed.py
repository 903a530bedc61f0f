# services/quadrature/dualClosed.py

"""
dualClosed.py

functions:
    dualClosed     | |·|, sgn, φ, φ' 의 dual 함수 닫힌 형태
    dualFunction   | 종류에 해당하는 스칼라 함수 f (quadrature / monte-carlo 입력용)
    checkRho       | ρ ∈ [-1, 1] 검사 (1e-12 이내 clamp)

설명:
    dual(|·|)(ρ) = (2/π)(ρ·arcsin ρ + √(1-ρ²))
    dual(sgn)(ρ) = (2/π)·arcsin ρ
    φ = a·id + b·|·| 에서 홀함수·짝함수 교차항은 0 이므로
    dual(φ) = a²ρ + b²·dual(|·|),  dual(φ') = a² + b²·dual(sgn).
    EOC 에서는 σ²·dual(φ) = ϱ, σ²·dual(φ') = ϱ'.
"""
from __future__ import annotations

import logging
import math
from typing import Callable

import numpy as np

from services.maps.activation import phi, phiPrime
from services.maps.cosineMaps import asOutput, clampDomain
from services.maps.mapErrors import MapDomainError
from services.schemas.dualSchemas import DualKind
from services.schemas.mapSchemas import ActivationParams

logger = logging.getLogger(__name__)


class QuadratureError(ValueError):
    """ρ 범위, 노드 수, 표본 수, params 누락 등 dual 계산 입력 오류"""
    pass


def checkRho(rho) -> np.ndarray:
    try:
        return clampDomain(rho, -1.0, 1.0, "rho")
    except MapDomainError as e:
        raise QuadratureError(str(e)) from e


def _requireParams(kind: DualKind, params: ActivationParams | None) -> ActivationParams:
    if params is None:
        raise QuadratureError(f"{kind.value} 에는 ActivationParams 가 필요합니다.")
    return params


def dualClosed(kind: DualKind | str, rho, params: ActivationParams | None = None):
    """
    function: dualClosed
    입력:
        kind   : DualKind (abs, sgn, ab_phi, ab_phi_prime)
        rho    : [-1, 1] (배열 가능)
        params : ab_* 종류에서 필수
    출력:
        dual 함수 값
    """
    kind = DualKind(kind)
    rho = checkRho(rho)
    asin = np.arcsin(rho)
    dualAbs = (2.0 / math.pi) * (rho * asin + np.sqrt(np.clip(1.0 - rho * rho, 0.0, None)))
    dualSgn = (2.0 / math.pi) * asin

    if kind is DualKind.ABS:
        out = dualAbs
    elif kind is DualKind.SGN:
        out = dualSgn
    elif kind is DualKind.AB_PHI:
        p = _requireParams(kind, params)
        out = p.a ** 2 * rho + p.b ** 2 * dualAbs
    else:
        p = _requireParams(kind, params)
        out = p.a ** 2 + p.b ** 2 * dualSgn
    return asOutput(out)


def dualFunction(kind: DualKind | str, params: ActivationParams | None = None) -> Callable:
    """
    function: dualFunction
    입력:
        kind, params
    출력:
        벡터화된 f. quadrature 의 kink 는 모두 0 이다.
    """
    kind = DualKind(kind)
    if kind is DualKind.ABS:
        return np.abs
    if kind is DualKind.SGN:
        return np.sign
    p = _requireParams(kind, params)
    if kind is DualKind.AB_PHI:
        return lambda s: phi(p, s)
    return lambda s: phiPrime(p, s)


__all__ = ["QuadratureError", "checkRho", "dualClosed", "dualFunction"]
