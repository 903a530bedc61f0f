# services/quadrature/dualMonteCarlo.py

"""
dualMonteCarlo.py

functions:
    dualMonteCarlo  | 상관 이변량 정규 표본으로 E[f(U1)f(U2)] 추정 (stderr 포함)

helpers:
    _chunkMoments   | 한 청크의 (count, mean, M2)
    _combine        | Chan 병렬 분산 결합

설명:
    표본은 EOCNTK_MC_CHUNK 크기 청크로 나뉜다. 청크 i 는 SeedSequence(seed).spawn() 의
    i 번째 자식으로 만든 Philox 생성기를 쓴다. 청크 결과는 순서대로 결합되므로
    workers 수와 상관없이 같은 값이 나온다.
"""
from __future__ import annotations

import logging
import math
import os
from concurrent.futures import ThreadPoolExecutor
from typing import Callable

import numpy as np

from services.quadrature.dualClosed import QuadratureError, checkRho
from services.schemas.dualSchemas import DualEstimate, DualMethod

logger = logging.getLogger(__name__)

MC_CHUNK = int(os.getenv("EOCNTK_MC_CHUNK", "65536"))
MIN_SAMPLES = 1000


def _chunkMoments(
    f: Callable,
    rho: float,
    size: int,
    seedSeq: np.random.SeedSequence,
) -> tuple[int, float, float]:
    rng = np.random.Generator(np.random.Philox(seedSeq))
    g = rng.standard_normal((2, size))
    s = math.sqrt(max(0.0, 1.0 - rho * rho))
    vals = f(g[0]) * f(rho * g[0] + s * g[1])
    mean = float(np.mean(vals))
    m2 = float(np.sum((vals - mean) ** 2))
    return size, mean, m2


def _combine(
    a: tuple[int, float, float],
    b: tuple[int, float, float],
) -> tuple[int, float, float]:
    na, ma, m2a = a
    nb, mb, m2b = b
    n = na + nb
    d = mb - ma
    return n, ma + d * nb / n, m2a + m2b + d * d * na * nb / n


def dualMonteCarlo(
    f: Callable,
    rho: float,
    samples: int,
    seed: int,
    workers: int = 1,
) -> DualEstimate:
    """
    function: dualMonteCarlo
    입력:
        f       : 벡터화된 스칼라 함수
        rho     : 상관계수
        samples : 표본 수 (>= 1000)
        seed    : 기본 시드
        workers : 청크 병렬 스레드 수 (결과에는 영향 없음)
    출력:
        DualEstimate (value, samples, stderr = 표본표준편차/√samples)
    """
    rho = float(checkRho(rho))
    samples = int(samples)
    if samples < MIN_SAMPLES:
        raise QuadratureError(f"samples 는 {MIN_SAMPLES} 이상이어야 합니다: {samples}")

    nChunks = -(-samples // MC_CHUNK)
    sizes = [MC_CHUNK] * (nChunks - 1) + [samples - MC_CHUNK * (nChunks - 1)]
    children = np.random.SeedSequence(seed).spawn(nChunks)

    with ThreadPoolExecutor(max_workers=max(1, workers)) as pool:
        parts = list(
            pool.map(lambda args: _chunkMoments(f, rho, *args), zip(sizes, children))
        )

    total = parts[0]
    for part in parts[1:]:
        total = _combine(total, part)
    n, mean, m2 = total
    stderr = math.sqrt(m2 / (n - 1)) / math.sqrt(n)

    logger.debug(
        "[Quadrature] monte-carlo rho=%.6g samples=%d chunks=%d mean=%.8g stderr=%.3g",
        rho, n, nChunks, mean, stderr,
    )
    return DualEstimate(
        value=mean,
        method=DualMethod.MONTE_CARLO,
        samples=n,
        stderr=stderr,
    )


__all__ = ["MC_CHUNK", "MIN_SAMPLES", "dualMonteCarlo"]
