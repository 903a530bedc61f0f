# services/kernel/innerProducts.py

"""
innerProducts.py

functions:
    limitingInnerProducts | X̄_k, X̄'_k (k = 1..l) 를 dual 함수 정의대로 계산
    ntkFromInnerProducts  | K̄ = Σ_k X̄_k Π_{k'>k} X̄'_{k'}

설명:
    X̄_1 = <x1, x2>,  d_i = ||x_i||²
    X̄_{k+1} = σ² √(d_1 d_2) · dual(φ)(ρ_k),  ρ_k = X̄_k / √(d_1 d_2)
    X̄'_{k+1} = σ² · dual(φ')(ρ_k)
    d_i ← σ²(a²+b²) d_i  (EOC 에서는 그대로)
    EOC 가 아닌 σ 에서도 정의대로 계산한다. 닫힌 형태 NTK(u_l) 와의 교차검증용이다.
"""
from __future__ import annotations

import logging
import math

import numpy as np

from services.quadrature.dualClosed import dualClosed, dualFunction
from services.quadrature.dualQuadrature import dualQuadrature
from services.schemas.dualSchemas import DualKind
from services.schemas.mapSchemas import ActivationParams

logger = logging.getLogger(__name__)


def _dual(kind: DualKind, params: ActivationParams, rho: float, method: str, order: int) -> float:
    if method == "closed":
        return float(dualClosed(kind, rho, params))
    if method == "quadrature":
        return dualQuadrature(dualFunction(kind, params), rho, order=order).value
    raise ValueError(f"method 는 'closed' 또는 'quadrature' 여야 합니다: {method}")


def limitingInnerProducts(
    params: ActivationParams,
    x1,
    x2,
    l: int,
    method: str = "closed",
    order: int = 64,
) -> tuple[np.ndarray, np.ndarray]:
    """
    function: limitingInnerProducts
    입력:
        params : ActivationParams (σ 는 params.sigma)
        x1, x2 : 입력 벡터
        l      : 층 수
        method : "closed" | "quadrature"
    출력:
        (X, Xp) 길이 l 배열. Xp[0] 은 쓰이지 않으며 1 로 둔다.
    """
    if l < 1:
        raise ValueError("l 은 1 이상이어야 합니다.")
    x1 = np.asarray(x1, dtype=float)
    x2 = np.asarray(x2, dtype=float)
    s2 = params.sigma ** 2

    X = np.empty(l)
    Xp = np.ones(l)
    X[0] = float(np.sum(x1 * x2))
    d1 = float(np.sum(x1 * x1))
    d2 = float(np.sum(x2 * x2))
    for k in range(1, l):
        scale = math.sqrt(d1 * d2)
        rho = min(1.0, max(-1.0, X[k - 1] / scale))
        X[k] = s2 * scale * _dual(DualKind.AB_PHI, params, rho, method, order)
        Xp[k] = s2 * _dual(DualKind.AB_PHI_PRIME, params, rho, method, order)
        gain = s2 * (params.a ** 2 + params.b ** 2)
        d1 *= gain
        d2 *= gain
    return X, Xp


def ntkFromInnerProducts(X: np.ndarray, Xp: np.ndarray) -> float:
    """Horner 형태: K = X_1, K ← K·X'_k + X_k (k = 2..l). l = 1 이면 X_1 그대로."""
    K = float(X[0])
    for k in range(1, len(X)):
        K = K * float(Xp[k]) + float(X[k])
    return K


__all__ = ["limitingInnerProducts", "ntkFromInnerProducts"]
