# services/schemas/mapSchemas.py

"""
mapSchemas.py

dataclasses:
    ActivationParams  | (a,b)-ReLU 계수와 파생량(Δ_φ, EOC σ, Lipschitz 상수)
    MapTrace          | 한 입력쌍의 깊이별 {ρ_k, z_k, w_k, u_k} 기록

스칼라 맵(ϱ, ζ, ω)과 깊이 반복에서 공통으로 쓰는 타입 정의 모듈.
"""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np


@dataclass(frozen=True)
class ActivationParams:
    """
    dataclass: ActivationParams

    - a         : 선형 기울기 계수
    - b         : 절댓값 계수
    - delta     : Δ_φ = b²/(a²+b²), [0,1]
    - sigma     : EOC 초기화 스케일 σ = (a²+b²)^(-1/2)
    - lipschitz : φ 의 Lipschitz 상수 |a|+|b|

    services.maps.activation.makeActivation 으로만 생성하는 것을 전제로 한다.
    직접 생성해서 σ 를 바꾸면 kernel 조립 단계에서 EocViolationError 가 난다.
    """
    a: float
    b: float
    delta: float
    sigma: float
    lipschitz: float


@dataclass
class MapTrace:
    """
    dataclass: MapTrace

    - rho             : ρ_k, shape (depth,) 또는 (depth, *start.shape)
    - z               : z_k = (1-ρ_k)/2
    - w               : w_k = z_k^(-1/2) (z_k = 0 이면 inf)
    - u               : u_k (u_1 = ρ_1, u_{k+1} = ζ'(z_k)u_k + 1 - 2ζ(z_k))
    - depth           : 기록된 층 수
    - delta           : 사용한 Δ_φ
    - antipodal_start : ρ_1 = -1 에서 시작한 경우 True (Δ_φ=1 이면 한 번에 1로 붕괴)

    첫 축이 항상 깊이(k-1) 인덱스다. 시작점을 배열로 주면 나머지 축은 시작점 배열 모양을 따른다.
    """
    rho: np.ndarray
    z: np.ndarray
    w: np.ndarray
    u: np.ndarray
    depth: int
    delta: float
    antipodal_start: bool = False


__all__ = ["ActivationParams", "MapTrace"]
