# services/sweepService.py

"""
sweepService.py

functions:
    runDepthSweep   | Δ_φ 마다 깊이 [depth_min, depth_max] 에서 데이터셋 평균 κ(K̄)

helpers:
    _datasets       | seeds 개의 데이터셋 (stream 0..S-1), 모든 Δ 가 공유
    _sweepOne       | 한 Δ 의 곡선. 깊이를 한 번만 걸어가며 모든 블록을 모은 뒤 한 번에 고유값 계산

설명:
    같은 seed 로는 Δ 값들이 같은 데이터셋을 본다.
    Δ 값들은 ThreadPoolExecutor 로 나눠 돌리고 로그 컨텍스트는 contextvars 로 넘긴다.
    결과는 workers 수와 무관하며 delta 오름차순으로 돌려준다.
"""
from __future__ import annotations

import contextvars
import logging
import time
from concurrent.futures import ThreadPoolExecutor

import numpy as np
from tqdm import tqdm

from loggerConfig import service_log_context
from services.kernel.dataset import gramCosines
from services.kernel.kernelIO import resolveDataset
from services.kernel.ntkAssembly import blockFromUpper
from services.maps.activation import makeActivation
from services.maps.mapIteration import walkDepth
from services.schemas.boundSchemas import SweepCurve
from services.schemas.kernelSchemas import Dataset
from services.schemas.mapSchemas import ActivationParams
from services.schemas.runSchemas import RunConfig
from services.spectral.jacobiEigen import conditionNumber, eigenSymmetric

logger = logging.getLogger(__name__)


def _datasets(config: RunConfig) -> list[Dataset]:
    if config.dataset:
        if config.seeds > 1:
            logger.warning("[Sweep] --dataset 이 주어져 seeds=%d 를 무시합니다.", config.seeds)
        return [resolveDataset(config)]
    return [resolveDataset(config, stream=s) for s in range(config.seeds)]


def _sweepOne(
    params: ActivationParams,
    datasets: list[Dataset],
    depthMin: int,
    depthMax: int,
) -> SweepCurve:
    n = datasets[0].n
    iu, ju = np.triu_indices(n, k=1)
    cos = np.stack([gramCosines(d)[iu, ju] for d in datasets])
    norms = np.stack([d.norms for d in datasets])

    blocks = []
    for k, _, u in walkDepth(params.delta, cos, depthMax):
        if k >= depthMin:
            blocks.append(blockFromUpper(norms, u, k))

    S = len(datasets)
    stack = np.stack(blocks).reshape(-1, n, n)
    eig = eigenSymmetric(stack).reshape(len(blocks), S, n)
    kappa = conditionNumber(eig)

    return SweepCurve(
        a=params.a,
        b=params.b,
        delta=params.delta,
        depths=np.arange(depthMin, depthMax + 1),
        kappa_mean=kappa.mean(axis=1),
        kappa_std=kappa.std(axis=1),
    )


def runDepthSweep(config: RunConfig) -> list[SweepCurve]:
    """
    function: runDepthSweep
    입력:
        config : RunConfig (pairs, n, dim, seeds, seed, bias, depth_min, depth_max, workers)
    출력:
        SweepCurve 목록 (delta 오름차순)
    """
    with service_log_context("sweepService"):
        t0 = time.time()
        datasets = _datasets(config)
        sizes = {d.n for d in datasets}
        if len(sizes) != 1:
            raise ValueError(f"데이터셋 크기가 서로 다릅니다: {sorted(sizes)}")
        paramsList = [makeActivation(a, b) for a, b in config.pairs]
        logger.info(
            "[Sweep] sweep-depth 시작: deltas=%d seeds=%d n=%d l=%d..%d workers=%d",
            len(paramsList), len(datasets), datasets[0].n,
            config.depth_min, config.depth_max, config.workers,
        )

        def task(p: ActivationParams) -> SweepCurve:
            curve = _sweepOne(p, datasets, config.depth_min, config.depth_max)
            logger.info(
                "[Sweep] delta=%.6g kappa(l=%d)=%.8g",
                p.delta, config.depth_max, curve.kappa_mean[-1],
            )
            return curve

        with ThreadPoolExecutor(max_workers=max(1, config.workers)) as pool:
            futures = [pool.submit(contextvars.copy_context().run, task, p) for p in paramsList]
            curves = [f.result() for f in tqdm(futures, desc="sweep-depth", disable=None)]

        curves.sort(key=lambda c: c.delta)
        logger.info("[Sweep] sweep-depth 완료: elapsed=%.1fs", time.time() - t0)
        return curves


__all__ = ["runDepthSweep"]
