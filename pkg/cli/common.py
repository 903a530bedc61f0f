# cli/common.py

"""
common.py

functions:
    resolvePairs    | --a/--b, --delta-grid 로 (a, b) 목록 결정
    buildConfig     | None 이 아닌 옵션만 모아 RunConfig 생성 (검증 실패 시 종료코드 2)
    guardedRun      | 도메인 예외를 로그로 남기고 종료코드 2 로 바꾸는 with 블록
    finish          | 단언된 부등식 위반이 있으면 종료코드 1
    outputPath      | --out 이 없을 때의 기본 경로 (stdout 을 쓰는 명령은 None)

설명:
    명령마다 같은 옵션을 쓰므로 Annotated 별칭으로 한 곳에 모아 둔다.
"""
from __future__ import annotations

import logging
import os
from contextlib import contextmanager
from typing import Annotated, Iterator, List, Optional

import typer
from pydantic import ValidationError

from cli.config import Config
from services.empirical.network import NetworkError
from services.kernel.dataset import DegenerateDatasetError
from services.kernel.kernelIO import KernelFileError
from services.kernel.ntkAssembly import DistanceOverflowError, EocViolationError
from services.maps.activation import CANONICAL_DELTA_GRID, ActivationError
from services.maps.mapErrors import MapDomainError, MapSingularityError, NotApplicableError
from services.quadrature.dualClosed import QuadratureError
from services.schemas.runSchemas import CommandName, RunConfig
from services.spectral.distanceBounds import BoundQuantityError
from services.spectral.jacobiEigen import ConvergenceError, EigenSolverError
from services.spectral.theoremQuantities import BracketingError

logger = logging.getLogger(__name__)

ERROR_FAMILIES = (
    ActivationError,
    MapDomainError,
    MapSingularityError,
    NotApplicableError,
    QuadratureError,
    DegenerateDatasetError,
    EocViolationError,
    DistanceOverflowError,
    EigenSolverError,
    ConvergenceError,
    BracketingError,
    BoundQuantityError,
    NetworkError,
    KernelFileError,
    OSError,
)

# ---------------------------------------------------------
# 공통 옵션
# ---------------------------------------------------------
AOption = Annotated[Optional[float], typer.Option("--a", help="활성함수 계수 a (φ(s) = a·s + b·|s|)")]
BOption = Annotated[Optional[float], typer.Option("--b", help="활성함수 계수 b")]
DeltaGridOption = Annotated[
    bool,
    typer.Option("--delta-grid", help="Δ_φ ∈ {1/8, ..., 1} 표준 8쌍을 사용"),
]
NOption = Annotated[int, typer.Option("--n", help="데이터 점 개수")]
DimOption = Annotated[int, typer.Option("--dim", help="입력 차원")]
SeedOption = Annotated[
    int,
    typer.Option("--seed", help="기본 시드. 데이터셋 i 는 (seed, stream=i) 하위 스트림"),
]
BiasOption = Annotated[Optional[float], typer.Option("--bias", help="편향 증강 β > 0")]
MlOption = Annotated[int, typer.Option("--ml", help="출력 중복도 m_l")]
DatasetOption = Annotated[
    Optional[str],
    typer.Option("--dataset", help="구 표본 대신 읽을 데이터셋 CSV (gen-dataset 출력)"),
]
OutOption = Annotated[Optional[str], typer.Option("--out", help="출력 경로")]
WorkersOption = Annotated[
    int,
    typer.Option("--workers", help="스레드 수 (EOCNTK_WORKERS 보다 우선, 결과와 무관)"),
]
WidthOption = Annotated[
    Optional[List[int]],
    typer.Option("--width", help="은닉층 폭 (여러 번 지정)"),
]


def resolvePairs(
    a: float | None,
    b: float | None,
    deltaGrid: bool,
    default: tuple[tuple[float, float], ...],
) -> list[tuple[float, float]]:
    if deltaGrid:
        if a is not None or b is not None:
            raise typer.BadParameter("--delta-grid 와 --a/--b 는 함께 쓸 수 없습니다.")
        return [(ga, gb) for _, ga, gb in CANONICAL_DELTA_GRID]
    if a is None and b is None:
        return [tuple(p) for p in default]
    if a is None or b is None:
        raise typer.BadParameter("--a 와 --b 는 함께 지정해야 합니다.")
    return [(a, b)]


def buildConfig(command: CommandName, **fields) -> RunConfig:
    """
    function: buildConfig
    입력:
        command : CommandName
        fields  : RunConfig 필드. 값이 None 이면 모델 기본값을 쓴다.
    출력:
        RunConfig
    """
    fields = {k: v for k, v in fields.items() if v is not None}
    try:
        config = RunConfig(command=command, **fields)
    except ValidationError as e:
        logger.error("[CLI] 잘못된 설정 (%s): %s", command.value, e)
        raise typer.Exit(code=2) from e
    logger.debug("[CLI] config=%s", config.model_dump_json())
    return config


@contextmanager
def guardedRun(command: CommandName) -> Iterator[None]:
    try:
        yield
    except ERROR_FAMILIES as e:
        logger.error("[CLI] %s 실패: %s: %s", command.value, type(e).__name__, e)
        raise typer.Exit(code=2) from e


def finish(command: CommandName, passed: bool) -> None:
    if passed:
        logger.info("[CLI] %s 통과", command.value)
        return
    logger.warning("[CLI] %s: 단언된 부등식 위반이 있습니다.", command.value)
    raise typer.Exit(code=1)


def outputPath(out: str | None, command: CommandName, suffix: str | None) -> str | None:
    """--out 이 있으면 그대로. suffix 가 None 이면 stdout, 아니면 OUTPUT_DIR/<command><suffix>."""
    if out is not None:
        return out
    if suffix is None:
        return None
    return os.path.join(Config.OUTPUT_DIR, command.value + suffix)


__all__ = [
    "ERROR_FAMILIES",
    "resolvePairs",
    "buildConfig",
    "guardedRun",
    "finish",
    "outputPath",
]
