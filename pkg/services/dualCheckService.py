# services/dualCheckService.py

"""
dualCheckService.py

functions:
    runDualCheck   | (a, b) 쌍마다 abs / sgn / φ / φ' 의 dual 닫힌 형태와 수치적분 비교

helpers:
    _rhoGrid       | ρ ∈ {-0.99, -0.98, ..., 0.99}
    _checkKind     | 한 함수의 격자 최대 오차와 그 위치

설명:
    closed 와 quadrature 의 최대 차이가 DUAL_TOL (1e-8) 을 넘는 행이 하나라도 있으면 passed = False.
    abs, sgn 는 (a, b) 와 무관하지만 행 구분을 위해 쌍마다 기록한다.
"""
from __future__ import annotations

import logging
import time

import numpy as np

from loggerConfig import service_log_context
from services.maps.activation import makeActivation
from services.quadrature.dualClosed import dualClosed, dualFunction
from services.quadrature.dualQuadrature import dualQuadrature
from services.schemas.dualSchemas import DualCheckReport, DualCheckRow, DualKind
from services.schemas.mapSchemas import ActivationParams
from services.schemas.runSchemas import RunConfig

logger = logging.getLogger(__name__)

DUAL_TOL = 1e-8
DUAL_CHECK_PAIRS: tuple[tuple[float, float], ...] = ((1.0, 0.0), (0.5, 0.5), (0.0, 1.0), (1.0, 2.0))


def _rhoGrid() -> np.ndarray:
    return np.arange(-99, 100) / 100.0


def _checkKind(
    kind: DualKind,
    params: ActivationParams,
    grid: np.ndarray,
    order: int,
    scheme: str,
) -> DualCheckRow:
    f = dualFunction(kind, params)
    closed = np.asarray(dualClosed(kind, grid, params), dtype=float)
    quad = np.array([dualQuadrature(f, r, order=order, scheme=scheme).value for r in grid])
    err = np.abs(closed - quad)
    i = int(np.argmax(err))
    return DualCheckRow(
        a=params.a,
        b=params.b,
        kind=kind,
        max_error=float(err[i]),
        argmax=float(grid[i]),
    )


def runDualCheck(config: RunConfig) -> DualCheckReport:
    """
    function: runDualCheck
    입력:
        config : RunConfig (pairs, order, scheme)
    출력:
        DualCheckReport
    """
    with service_log_context("dualCheckService"):
        t0 = time.time()
        grid = _rhoGrid()
        rows = []
        for a, b in config.pairs:
            params = makeActivation(a, b)
            for kind in DualKind:
                row = _checkKind(kind, params, grid, config.order, config.scheme)
                rows.append(row)
                logger.info(
                    "[Quadrature] a=%.6g b=%.6g kind=%s max_error=%.3g at rho=%.2f",
                    a, b, kind.value, row.max_error, row.argmax,
                )

        passed = all(row.max_error <= DUAL_TOL for row in rows)
        logger.info(
            "[Quadrature] dual-check 완료: rows=%d passed=%s elapsed=%.1fs",
            len(rows), passed, time.time() - t0,
        )
        return DualCheckReport(order=config.order, tolerance=DUAL_TOL, rows=rows, passed=passed)


__all__ = ["DUAL_TOL", "DUAL_CHECK_PAIRS", "runDualCheck"]
