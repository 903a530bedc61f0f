# cli/writers.py

"""
writers.py

functions:
    formatNumber    | 숫자 하나를 %.12g 문자열로 (정수는 그대로)
    roundFloats     | JSON 으로 보낼 객체 안의 실수를 %.12g 로 맞추고 nan/inf 는 None
    writeCsv        | 헤더 + 행을 CSV 로. path 가 없으면 stdout
    writeJson       | {"config": RunConfig, <key>: 결과} 를 JSON 으로. path 가 없으면 stdout
    writeSweepCurves| Δ_φ 마다 kappa_delta_<Δ>.csv (Step,Value) 파일

설명:
    모든 출력은 UTF-8, LF, %.12g. 같은 RunConfig 면 같은 바이트가 나온다.
"""
from __future__ import annotations

import json
import logging
import math
from pathlib import Path
from typing import Any, Iterable, Sequence

import numpy as np
import typer

from services.kernel.kernelIO import NUMBER_FORMAT
from services.schemas.boundSchemas import SweepCurve
from services.schemas.runSchemas import RunConfig

logger = logging.getLogger(__name__)


def formatNumber(v: Any) -> str:
    if isinstance(v, (bool, np.bool_)):
        return str(bool(v)).lower()
    if isinstance(v, (int, np.integer)):
        return str(int(v))
    if isinstance(v, (float, np.floating)):
        return NUMBER_FORMAT % float(v)
    return str(v)


def roundFloats(obj: Any) -> Any:
    if isinstance(obj, dict):
        return {k: roundFloats(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [roundFloats(v) for v in obj]
    if isinstance(obj, np.ndarray):
        return [roundFloats(v) for v in obj.tolist()]
    if isinstance(obj, (bool, np.bool_)):
        return bool(obj)
    if isinstance(obj, (int, np.integer)):
        return int(obj)
    if isinstance(obj, (float, np.floating)):
        v = float(obj)
        if not math.isfinite(v):
            return None
        return float(NUMBER_FORMAT % v)
    return obj


def _emit(text: str, path: str | Path | None) -> Path | None:
    if path is None:
        typer.echo(text, nl=False)
        return None
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    path.write_text(text, encoding="utf-8", newline="\n")
    logger.info("[CLI] 저장: %s", path)
    return path


def writeCsv(
    header: Sequence[str],
    rows: Iterable[Sequence[Any]],
    path: str | Path | None = None,
) -> Path | None:
    lines = [",".join(header)]
    for row in rows:
        lines.append(",".join(formatNumber(v) for v in row))
    return _emit("\n".join(lines) + "\n", path)


def writeJson(
    config: RunConfig,
    key: str,
    payload: Any,
    path: str | Path | None = None,
) -> Path | None:
    """
    function: writeJson
    입력:
        config  : 실행 설정 (workers 는 model_dump 에서 빠진다)
        key     : 결과를 담을 키 이름 (report, rows, curves ...)
        payload : pydantic 모델, dict, list
        path    : 출력 파일. None 이면 stdout
    출력:
        저장한 경로 (stdout 이면 None)
    """
    if hasattr(payload, "model_dump"):
        payload = payload.model_dump(mode="json")
    doc = {
        "config": roundFloats(config.model_dump(mode="json")),
        key: roundFloats(payload),
    }
    text = json.dumps(doc, indent=2, ensure_ascii=False, allow_nan=False)
    return _emit(text + "\n", path)


def _curveFileName(delta: float) -> str:
    return f"kappa_delta_{NUMBER_FORMAT % delta}.csv"


def writeSweepCurves(curves: Sequence[SweepCurve], outDir: str | Path) -> list[Path]:
    """Δ_φ 오름차순으로 파일을 쓴다. 열은 Step (깊이), Value (평균 κ)."""
    outDir = Path(outDir)
    written = []
    for curve in sorted(curves, key=lambda c: c.delta):
        rows = zip(curve.depths, curve.kappa_mean)
        written.append(writeCsv(("Step", "Value"), rows, outDir / _curveFileName(curve.delta)))
    return written


__all__ = [
    "formatNumber",
    "roundFloats",
    "writeCsv",
    "writeJson",
    "writeSweepCurves",
]
