# services/maps/mapIteration.py

"""
mapIteration.py

functions:
    iterate    | ρ_1 (또는 w_1) 에서 시작해 depth 층까지 MapTrace 기록
    walkDepth  | 층마다 (k, z_k, u_k) 를 넘겨주는 generator (기록 없이 깊이 순회)

설명:
    반복은 z 좌표에서 한다.
        z_{k+1} = ζ(z_k)
        u_{k+1} = ζ'(z_k)·u_k + 1 - 2ζ(z_k),  u_1 = ρ_1
    ϱ(ρ_k) = 1 - 2ζ(z_k), ϱ'(ρ_k) = ζ'(z_k) 이므로 ρ 반복과 같다.
    ρ_1 = 1 이면 z 가 0 에 머물고 u_k = k 가 된다.
"""
from __future__ import annotations

import logging
from typing import Iterator

import numpy as np

from services.maps.cosineMaps import clampDomain, zetaPrimeValues, zetaValues
from services.maps.inverseDistance import checkW
from services.schemas.mapSchemas import MapTrace

logger = logging.getLogger(__name__)


def _startZ(start, startKind: str) -> np.ndarray:
    if startKind == "rho":
        rho = clampDomain(start, -1.0, 1.0, "rho")
        return 0.5 * (1.0 - rho)
    if startKind == "w":
        w = checkW(start)
        with np.errstate(divide="ignore"):
            return np.where(np.isinf(w), 0.0, 1.0 / (w * w))
    raise ValueError(f"startKind 는 'rho' 또는 'w' 여야 합니다: {startKind}")


def walkDepth(
    delta: float,
    start,
    depth: int,
    startKind: str = "rho",
) -> Iterator[tuple[int, np.ndarray, np.ndarray]]:
    """
    function: walkDepth
    입력:
        delta     : Δ_φ
        start     : ρ_1 (또는 w_1) 스칼라/배열
        depth     : 마지막 층 l
        startKind : "rho" | "w"
    출력:
        (k, z_k, u_k) 를 k = 1..depth 순서로 yield

    설명:
        여러 깊이의 NTK 를 한 번의 순회로 만들 때 쓴다. 메모리는 시작점 배열 크기만 쓴다.
    """
    if depth < 1:
        raise ValueError("depth 는 1 이상이어야 합니다.")
    z = _startZ(start, startKind)
    u = 1.0 - 2.0 * z
    for k in range(1, depth + 1):
        yield k, z, u
        if k == depth:
            break
        zt = zetaValues(delta, z)
        u = zetaPrimeValues(delta, z) * u + 1.0 - 2.0 * zt
        z = zt


def iterate(delta: float, start, depth: int, startKind: str = "rho") -> MapTrace:
    """
    function: iterate
    입력:
        delta     : Δ_φ
        start     : ρ_1 (startKind="rho") 또는 w_1 (startKind="w")
        depth     : 층 수 (>= 1)
    출력:
        MapTrace (각 배열의 첫 축이 층)

    설명:
        ρ_1 = -1 에서 시작하는 경우는 허용하되 antipodal_start 로 표시한다.
        Δ_φ = 1 이면 한 번에 ρ_2 = 1 로 붕괴한다.
    """
    zs, us = [], []
    for _, z, u in walkDepth(delta, start, depth, startKind):
        zs.append(z)
        us.append(u)

    z = np.stack(zs)
    u = np.stack(us)
    rho = 1.0 - 2.0 * z
    with np.errstate(divide="ignore"):
        w = np.where(z > 0.0, 1.0 / np.sqrt(np.where(z > 0.0, z, 1.0)), np.inf)

    antipodal = bool(np.any(rho[0] == -1.0))
    if antipodal:
        logger.info("[Maps] 반대 방향 시작점(ρ_1 = -1) 이 포함된 trace (delta=%.6g)", delta)

    return MapTrace(
        rho=rho,
        z=z,
        w=w,
        u=u,
        depth=depth,
        delta=delta,
        antipodal_start=antipodal,
    )


__all__ = ["iterate", "walkDepth"]
