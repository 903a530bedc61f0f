# services/quadrature/dualQuadrature.py

"""
dualQuadrature.py

functions:
    dualQuadrature  | E[f(U1)f(U2)] 의 결정적 수치적분 (split / hermite)

helpers:
    _legendreNodes  | [-1,1] Gauss-Legendre 노드 캐시
    _segments       | 각 행의 구간 분할점 → (노드, 가중치·pdf)
    _outerBreaks    | 바깥 적분 분할점 (kink 주변 기하 분할)
    _splitScheme    | kink 에서 나눈 중첩 Gauss-Legendre
    _hermiteScheme  | 텐서 Gauss-Hermite

설명:
    (U1, U2) = (g1, ρg1 + √(1-ρ²)g2), g1, g2 ~ N(0,1) 독립.
    "split" (기본) : g1, g2 를 [-9, 9] 로 자르고 f 의 kink(인자=0) 에서 구간을 나눠
                     각 구간에 order 개 Legendre 노드를 둔다. 안쪽 적분의 kink 는
                     c = (kink - ρ g1)/√(1-ρ²) 이다. kink 가 있는 적분도 1e-8 아래로 수렴한다.
    "hermite"      : hermgauss 노드 t = √2 x, 가중치 w/√π 의 텐서 격자.
                     다항식에는 정확하지만 kink 에서는 대수적으로만 수렴한다.
"""
from __future__ import annotations

import logging
import math
from functools import lru_cache
from typing import Callable, Sequence

import numpy as np
from numpy.polynomial.hermite import hermgauss
from numpy.polynomial.legendre import leggauss

from services.quadrature.dualClosed import QuadratureError, checkRho
from services.schemas.dualSchemas import DualEstimate, DualMethod

logger = logging.getLogger(__name__)

TRUNCATION = 9.0
MAX_ORDER = 1024
SCHEMES = ("split", "hermite")


@lru_cache(maxsize=16)
def _legendreNodes(order: int) -> tuple[np.ndarray, np.ndarray]:
    x, w = leggauss(order)
    x.setflags(write=False)
    w.setflags(write=False)
    return x, w


def _normalPdf(x: np.ndarray) -> np.ndarray:
    return np.exp(-0.5 * x * x) / math.sqrt(2.0 * math.pi)


def _segments(breaks: np.ndarray, order: int) -> tuple[np.ndarray, np.ndarray]:
    """
    helper: _segments
    입력:
        breaks : (M, K) 오름차순 분할점 (양 끝 ±9 포함)
        order  : 구간당 노드 수
    출력:
        nodes, weights : (M, (K-1)·order). weights 에는 표준정규 pdf 가 곱해져 있다.
    """
    x, w = _legendreNodes(order)
    lo = breaks[:, :-1, None]
    hi = breaks[:, 1:, None]
    half = 0.5 * (hi - lo)
    nodes = half * x + 0.5 * (hi + lo)
    weights = half * w * _normalPdf(nodes)
    m = breaks.shape[0]
    return nodes.reshape(m, -1), weights.reshape(m, -1)


def _outerBreaks(kinks: np.ndarray, rho: float, s: float) -> np.ndarray:
    """
    helper: _outerBreaks
    바깥 적분의 분할점. 안쪽 적분값은 kink 근처에서 폭 s/|ρ| 로 변하므로
    kink ± width·2^j 에 분할점을 더 둔다.
    """
    L = TRUNCATION
    width = s / max(abs(rho), s) if s > 0.0 else 1.0
    pts = [-L, L]
    for k in kinks:
        pts.append(k)
        step = width
        while step < 1.0:
            pts.extend((k - step, k + step))
            step *= 2.0
    pts = np.unique(np.clip(pts, -L, L))
    return pts[None, :]


def _splitScheme(f: Callable, rho: float, order: int, kinks: Sequence[float]) -> float:
    L = TRUNCATION
    kinks = np.asarray(sorted(k for k in kinks if -L < k < L), dtype=float)
    s = math.sqrt(max(0.0, 1.0 - rho * rho))

    g1, w1 = _segments(_outerBreaks(kinks, rho, s), order)
    g1, w1 = g1[0], w1[0]
    f1 = f(g1)

    if s == 0.0:
        return float(np.sum(w1 * f1 * f(rho * g1)))

    if kinks.size:
        inner = np.clip((kinks[None, :] - rho * g1[:, None]) / s, -L, L)
        inner.sort(axis=1)
    else:
        inner = np.empty((g1.size, 0))
    innerBreaks = np.concatenate(
        (np.full((g1.size, 1), -L), inner, np.full((g1.size, 1), L)),
        axis=1,
    )
    g2, w2 = _segments(innerBreaks, order)
    f2 = f(rho * g1[:, None] + s * g2)
    innerVals = np.sum(w2 * f2, axis=1)
    return float(np.sum(w1 * f1 * innerVals))


def _hermiteScheme(f: Callable, rho: float, order: int) -> float:
    x, w = hermgauss(order)
    t = math.sqrt(2.0) * x
    wt = w / math.sqrt(math.pi)
    s = math.sqrt(max(0.0, 1.0 - rho * rho))
    u1 = t[:, None]
    u2 = rho * t[:, None] + s * t[None, :]
    return float(np.sum(wt[:, None] * wt[None, :] * f(u1) * f(u2)))


def dualQuadrature(
    f: Callable,
    rho: float,
    order: int = 64,
    scheme: str = "split",
    kinks: Sequence[float] = (0.0,),
) -> DualEstimate:
    """
    function: dualQuadrature
    입력:
        f      : 벡터화된 스칼라 함수 (다항식 증가 이하)
        rho    : 상관계수 [-1, 1]
        order  : 축(또는 구간)당 노드 수, 2 이상
        scheme : "split" | "hermite"
        kinks  : f 가 매끄럽지 않은 점 (split 에서만 사용)
    출력:
        DualEstimate (결정적)

    설명:
        |ρ| 가 1 에 매우 가까우면 안쪽 분할점이 ±9 밖으로 밀려 hermite 는 정확도가 떨어진다.
        split 은 s = 0 (|ρ| = 1) 을 따로 처리한다.
    """
    rho = float(checkRho(rho))
    order = int(order)
    if order < 2:
        raise QuadratureError(f"order 는 2 이상이어야 합니다: {order}")
    if order > MAX_ORDER:
        raise QuadratureError(f"order 가 너무 큽니다 (최대 {MAX_ORDER}): {order}")
    if scheme not in SCHEMES:
        raise QuadratureError(f"알 수 없는 scheme: {scheme}")

    if scheme == "split":
        value = _splitScheme(f, rho, order, kinks)
    else:
        value = _hermiteScheme(f, rho, order)

    return DualEstimate(
        value=value,
        method=DualMethod.QUADRATURE,
        order=order,
        stderr=0.0,
        scheme=scheme,
    )


__all__ = ["TRUNCATION", "MAX_ORDER", "SCHEMES", "dualQuadrature"]
