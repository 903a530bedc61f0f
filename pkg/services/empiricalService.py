# services/empiricalService.py

"""
empiricalService.py

functions:
    runEmpirical   | 유한폭 네트워크의 경험적 NTK 가 극한값으로 수렴하는지 폭별로 측정

설명:
    widths 가 비어 있으면 DEFAULT_WIDTHS 를 쓴다. 출력 폭은 m_l (config.ml) 이다.
    가중치 시드는 config.seed, 시행 t 는 stream = t.
"""
from __future__ import annotations

import logging
import time

from loggerConfig import service_log_context
from services.empirical.convergence import convergenceSweep
from services.kernel.kernelIO import resolveDataset
from services.maps.activation import makeActivation
from services.schemas.networkSchemas import ConvergenceRow
from services.schemas.runSchemas import RunConfig

logger = logging.getLogger(__name__)

DEFAULT_WIDTHS = (64, 256, 1024, 4096)


def runEmpirical(config: RunConfig) -> list[ConvergenceRow]:
    with service_log_context("empiricalService"):
        t0 = time.time()
        a, b = config.pairs[0]
        params = makeActivation(a, b)
        d = resolveDataset(config)
        widths = sorted(config.widths) if config.widths else list(DEFAULT_WIDTHS)
        logger.info(
            "[Empirical] empirical 시작: n=%d l=%d widths=%s trials=%d delta=%.6g",
            d.n, config.depth, widths, config.trials, params.delta,
        )

        rows = convergenceSweep(
            params,
            d,
            widths,
            config.depth,
            config.trials,
            config.seed,
            outputWidth=config.ml,
            workers=config.workers,
        )
        logger.info("[Empirical] empirical 완료: elapsed=%.1fs", time.time() - t0)
        return rows


__all__ = ["DEFAULT_WIDTHS", "runEmpirical"]
