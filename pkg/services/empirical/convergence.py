# services/empirical/convergence.py

"""
convergence.py

functions:
    limitingEntries   | 데이터셋 모든 쌍 (i <= j) 의 극한 NTK 값 (내적 재귀의 정의대로)
    trialErrors       | 한 폭·한 시행의 쌍별 상대오차
    convergenceSweep  | 폭별 평균 상대오차, 표준오차, 누적 log-log 기울기

helpers:
    _relativeError    | |K - K̄|/|K̄|, K̄ = 0 이면 |K - K̄|
    _slope            | log(오차) ~ log(폭) 1차 적합 기울기

설명:
    폭 w 의 네트워크는 (m_0, w, ..., w, m_l) 이고 은닉층이 depth-1 개다.
    비교 값은 블록의 trace/m_l 이다. depth = 1 이면 선형 모델이라 오차가 정확히 0 이다.
    시행 t 는 stream = t 로 가중치를 만들므로 workers 수와 무관하게 같은 표가 나온다.
"""
from __future__ import annotations

import logging
import math
from concurrent.futures import ThreadPoolExecutor
from typing import Sequence

import numpy as np

from services.empirical.empiricalNtk import empiricalKernel
from services.empirical.network import NetworkError, initNetwork
from services.kernel.innerProducts import limitingInnerProducts, ntkFromInnerProducts
from services.schemas.kernelSchemas import Dataset
from services.schemas.mapSchemas import ActivationParams
from services.schemas.networkSchemas import ConvergenceRow

logger = logging.getLogger(__name__)

MIN_TRIALS = 3
MIN_SLOPE_POINTS = 3


def limitingEntries(params: ActivationParams, d: Dataset, depth: int) -> np.ndarray:
    """(n(n+1)/2,) triu_indices(n, 0) 순서의 K̄(x_i, x_j)"""
    iu, ju = np.triu_indices(d.n)
    out = np.empty(iu.size)
    for p, (i, j) in enumerate(zip(iu, ju)):
        X, Xp = limitingInnerProducts(params, d.points[i], d.points[j], depth)
        out[p] = ntkFromInnerProducts(X, Xp)
    return out


def _relativeError(actual: np.ndarray, limit: np.ndarray) -> np.ndarray:
    diff = np.abs(actual - limit)
    scale = np.abs(limit)
    return np.where(scale > 0.0, diff / np.where(scale > 0.0, scale, 1.0), diff)


def trialErrors(
    params: ActivationParams,
    d: Dataset,
    widths: Sequence[int],
    limit: np.ndarray,
    seed: int,
    trial: int,
) -> np.ndarray:
    net = initNetwork(widths, params, seed, stream=trial)
    scalar = empiricalKernel(net, d.points).scalarEntries()
    iu, ju = np.triu_indices(d.n)
    return _relativeError(scalar[iu, ju], limit)


def _slope(widths: Sequence[int], errors: Sequence[float]) -> float:
    errors = np.asarray(errors, dtype=float)
    if len(errors) < MIN_SLOPE_POINTS or np.any(errors <= 0.0):
        return math.nan
    return float(np.polyfit(np.log(widths), np.log(errors), 1)[0])


def convergenceSweep(
    params: ActivationParams,
    dataset: Dataset,
    widths: Sequence[int],
    depth: int,
    trials: int,
    baseSeed: int,
    outputWidth: int = 1,
    workers: int = 1,
) -> list[ConvergenceRow]:
    """
    function: convergenceSweep
    입력:
        params      : EOC ActivationParams
        dataset     : 입력 점
        widths      : 은닉층 폭 목록 (오름차순 권장)
        depth       : l (>= 1)
        trials      : 폭당 시행 수 (>= 3)
        baseSeed    : 가중치 기본 시드
        outputWidth : m_l
        workers     : 시행 병렬 스레드 수
    출력:
        ConvergenceRow 목록 (widths 순서)
    """
    if trials < MIN_TRIALS:
        raise ValueError(f"trials 는 {MIN_TRIALS} 이상이어야 합니다: {trials}")
    if depth < 1:
        raise NetworkError("depth 는 1 이상이어야 합니다.")

    limit = limitingEntries(params, dataset, depth)
    rows: list[ConvergenceRow] = []
    means: list[float] = []

    with ThreadPoolExecutor(max_workers=max(1, workers)) as pool:
        for width in widths:
            profile = (dataset.dim,) + (int(width),) * (depth - 1) + (outputWidth,)
            perTrial = list(
                pool.map(
                    lambda t: float(np.mean(trialErrors(params, dataset, profile, limit, baseSeed, t))),
                    range(trials),
                )
            )
            mean = float(np.mean(perTrial))
            stderr = float(np.std(perTrial, ddof=1) / math.sqrt(trials))
            means.append(mean)
            slope = _slope(widths[: len(means)], means)
            rows.append(
                ConvergenceRow(
                    width=int(width),
                    mean_rel_error=mean,
                    stderr=stderr,
                    slope_so_far=slope,
                )
            )
            logger.info(
                "[Empirical] width=%d mean_rel_error=%.6g stderr=%.3g slope=%.4g",
                width, mean, stderr, slope,
            )
    return rows


__all__ = ["limitingEntries", "trialErrors", "convergenceSweep"]
