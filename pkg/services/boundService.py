# services/boundService.py

"""
boundService.py

functions:
    runBoundVerification | 전파 편차 plateau 검사 + u_k 상·하한 검사

helpers:
    _propagationRow      | 한 (Δ, w) 의 편차 구간별 최댓값
    _sandwichRow         | 한 Δ 에서 ρ_1 격자 전체의 위반 개수

설명:
    전파: |ω^{∘(k-1)}(w) - 추정| 의 k ∈ [100, k_max] 최댓값이 k ∈ [10, 100] 최댓값보다
          PLATEAU_SLACK (0.1) 이상 커지면 실패.
    u_k : ρ_1 ∈ {-0.99, ..., 0.99}, k <= sandwich_k_max 에서 상한·하한 위반이 0 이어야 한다.
    Δ_φ = 0 인 쌍은 경계가 정의되지 않으므로 skipped 에 넣고 경고만 남긴다.
"""
from __future__ import annotations

import logging
import time

import numpy as np

from loggerConfig import service_log_context
from services.maps.activation import makeActivation
from services.maps.mapIteration import iterate
from services.maps.propagation import countViolations, propagationDeviation, uBounds
from services.schemas.boundSchemas import BoundReport, PropagationRow, SandwichRow
from services.schemas.runSchemas import RunConfig

logger = logging.getLogger(__name__)

PROPAGATION_STARTS = (1.1, 2.0, 10.0)
PLATEAU_SLACK = 0.1
EARLY_WINDOW = (10, 100)


def _propagationRow(delta: float, w: float, kMax: int) -> PropagationRow:
    dev = propagationDeviation(delta, w, kMax)
    lo, hi = EARLY_WINDOW
    early = float(np.max(dev[lo - 1:min(hi, kMax)])) if kMax >= lo else 0.0
    late = float(np.max(dev[hi - 1:])) if kMax >= hi else early
    gap = late - early
    return PropagationRow(
        delta=delta,
        w=w,
        k_max=kMax,
        early_max=early,
        late_max=late,
        plateau_gap=gap,
        passed=gap < PLATEAU_SLACK,
    )


def _sandwichRow(delta: float, kMax: int) -> SandwichRow:
    starts = np.arange(-99, 100) / 100.0
    trace = iterate(delta, starts, kMax)
    lower, upper, c = uBounds(delta, trace)
    upperBad = countViolations(trace.u, upper, "upper")
    lowerBad = countViolations(trace.u, lower, "lower")
    return SandwichRow(
        delta=delta,
        starts=starts.size,
        k_max=kMax,
        upper_violations=upperBad,
        lower_violations=lowerBad,
        c_max=float(np.nanmax(c)) if np.any(np.isfinite(c)) else float("nan"),
        passed=upperBad == 0 and lowerBad == 0,
    )


def runBoundVerification(config: RunConfig) -> BoundReport:
    """
    function: runBoundVerification
    입력:
        config : RunConfig (pairs, k_max, sandwich_k_max)
    출력:
        BoundReport
    """
    with service_log_context("boundService"):
        t0 = time.time()
        propagation: list[PropagationRow] = []
        sandwich: list[SandwichRow] = []
        skipped: list[tuple[float, float]] = []

        for a, b in config.pairs:
            params = makeActivation(a, b)
            if params.delta == 0.0:
                logger.warning("[Maps] Δ_φ = 0 (a=%.6g, b=%.6g) 는 경계 검사에서 제외합니다.", a, b)
                skipped.append((a, b))
                continue

            for w in PROPAGATION_STARTS:
                row = _propagationRow(params.delta, w, config.k_max)
                propagation.append(row)
                logger.info(
                    "[Maps] propagation delta=%.6g w=%.3g early=%.6g late=%.6g passed=%s",
                    row.delta, w, row.early_max, row.late_max, row.passed,
                )

            row = _sandwichRow(params.delta, config.sandwich_k_max)
            sandwich.append(row)
            logger.info(
                "[Maps] sandwich delta=%.6g upper_viol=%d lower_viol=%d c_max=%.6g",
                row.delta, row.upper_violations, row.lower_violations, row.c_max,
            )

        passed = all(r.passed for r in propagation) and all(r.passed for r in sandwich)
        logger.info(
            "[Maps] verify-bounds 완료: passed=%s elapsed=%.1fs", passed, time.time() - t0,
        )
        return BoundReport(
            propagation=propagation,
            sandwich=sandwich,
            skipped=skipped,
            passed=passed,
        )


__all__ = ["PROPAGATION_STARTS", "PLATEAU_SLACK", "runBoundVerification"]
