# services/spectrumService.py

"""
spectrumService.py

functions:
    runSpectrum   | 한 데이터셋·한 깊이의 NTK 스펙트럼 보고서

설명:
    데이터셋은 --dataset CSV 가 있으면 그것을, 없으면 (seed, stream=0) 구 표본을 쓴다.
    (a, b) 는 pairs 의 첫 쌍만 쓴다.
    kernel_output 이 있으면 K̄ block 도 CSV 로 남긴다.
"""
from __future__ import annotations

import logging
import time

from loggerConfig import service_log_context
from services.kernel.kernelIO import resolveDataset, saveKernel
from services.kernel.ntkAssembly import ntkMatrix
from services.maps.activation import makeActivation
from services.schemas.runSchemas import RunConfig
from services.schemas.spectralSchemas import SpectralReport
from services.spectral.theoremQuantities import theoremReport

logger = logging.getLogger(__name__)


def runSpectrum(config: RunConfig) -> SpectralReport:
    with service_log_context("spectrumService"):
        t0 = time.time()
        a, b = config.pairs[0]
        if len(config.pairs) > 1:
            logger.warning("[Spectral] spectrum 은 첫 (a, b) 쌍만 씁니다: (%.6g, %.6g)", a, b)
        params = makeActivation(a, b)
        d = resolveDataset(config)
        logger.info(
            "[Spectral] spectrum 시작: n=%d dim=%d l=%d m_l=%d delta=%.6g",
            d.n, d.dim, config.depth, config.ml, params.delta,
        )

        report = theoremReport(
            params,
            d,
            config.depth,
            ml=config.ml,
            referenceDepth=config.reference_depth,
        )
        if config.kernel_output:
            saveKernel(ntkMatrix(params, d, config.depth, config.ml), config.kernel_output)
        failed = [ch.name for ch in report.checks if ch.asserted and not ch.passed]
        if failed:
            logger.warning("[Spectral] 부등식 위반: %s", failed)
        logger.info(
            "[Spectral] spectrum 완료: kappa=%.8g in_regime=%s elapsed=%.1fs",
            report.kappa, report.in_regime, time.time() - t0,
        )
        return report


__all__ = ["runSpectrum"]
