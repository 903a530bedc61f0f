# services/schemas/runSchemas.py

"""
runSchemas.py

pydantic:
    CommandName | CLI 명령 이름
    OutputFormat | csv / json
    RunConfig   | 한 번의 CLI 실행을 완전히 결정하는 설정

같은 RunConfig 면 같은 출력 바이트가 나와야 한다. workers 는 결과에 영향을 주지 않으므로
JSON 에 기록할 때 제외한다.
"""
from __future__ import annotations

from enum import Enum

from pydantic import BaseModel, Field, field_validator, model_validator


class CommandName(str, Enum):
    GEN_DATASET = "gen-dataset"
    EVAL_MAPS = "eval-maps"
    DUAL_CHECK = "dual-check"
    VERIFY_BOUNDS = "verify-bounds"
    SPECTRUM = "spectrum"
    SWEEP_DEPTH = "sweep-depth"
    EMPIRICAL = "empirical"


class OutputFormat(str, Enum):
    CSV = "csv"
    JSON = "json"


class RunConfig(BaseModel):
    """
    pydantic: RunConfig

    - command       : 실행 명령
    - pairs         : (a, b) 목록. --delta-grid 면 표준 8쌍
    - n, dim        : 데이터셋 크기
    - depth         : 단일 깊이 l (spectrum, empirical)
    - depth_min/max : sweep 깊이 범위
    - ml            : 출력 중복도 m_l
    - seeds, seed   : 데이터셋 개수와 기본 시드
    - stream        : gen-dataset 이 뽑을 하위 스트림 (데이터셋 인덱스)
    - bias          : 편향 증강 β
    - widths        : empirical 폭 목록
    - trials        : empirical 시행 수
    - order         : dual-check Gauss 노드 수
    - scheme        : dual-check 적분 격자 ("split" | "hermite")
    - k_max         : verify-bounds 전파 편차 검사 최대 층
    - sandwich_k_max: verify-bounds u_k 상·하한 검사 최대 층
    - dataset       : 구 표본 대신 읽을 데이터셋 CSV (gen-dataset 출력)
    - reference_depth : spectrum 에서 W drift 를 비교할 깊이
    - output        : 출력 경로 (파일 또는 디렉터리)
    - kernel_output : spectrum 에서 K̄ block 을 저장할 CSV (`# n= l= m_l=` 헤더)
    - format        : 출력 형식
    - workers       : 스레드 수 (결과 무관)
    """
    command: CommandName
    pairs: list[tuple[float, float]] = Field(default_factory=lambda: [(0.5, 0.5)])
    n: int = 32
    dim: int = 16
    depth: int = 8
    depth_min: int = 4
    depth_max: int = 64
    ml: int = 1
    seeds: int = 1
    seed: int = 2024
    stream: int = 0
    bias: float | None = None
    widths: list[int] = Field(default_factory=list)
    trials: int = 10
    order: int = 64
    scheme: str = "split"
    k_max: int = 10_000
    sandwich_k_max: int = 1_000
    dataset: str | None = None
    reference_depth: int | None = None
    output: str | None = None
    kernel_output: str | None = None
    format: OutputFormat = OutputFormat.CSV
    workers: int = Field(default=1, exclude=True)

    @field_validator("n", "dim")
    @classmethod
    def _checkSize(cls, v: int) -> int:
        if v < 2:
            raise ValueError("n, dim 은 2 이상이어야 합니다.")
        return v

    @field_validator("trials")
    @classmethod
    def _checkTrials(cls, v: int) -> int:
        if v < 3:
            raise ValueError("trials 는 3 이상이어야 합니다 (표준오차 계산).")
        return v

    @field_validator("depth", "ml", "seeds", "workers", "k_max", "sandwich_k_max")
    @classmethod
    def _checkPositive(cls, v: int) -> int:
        if v < 1:
            raise ValueError("1 이상이어야 합니다.")
        return v

    @field_validator("stream")
    @classmethod
    def _checkStream(cls, v: int) -> int:
        if v < 0:
            raise ValueError("stream 은 0 이상이어야 합니다.")
        return v

    @field_validator("scheme")
    @classmethod
    def _checkScheme(cls, v: str) -> str:
        if v not in ("split", "hermite"):
            raise ValueError(f"scheme 은 split 또는 hermite 여야 합니다: {v}")
        return v

    @field_validator("bias")
    @classmethod
    def _checkBias(cls, v: float | None) -> float | None:
        if v is not None and v <= 0:
            raise ValueError("bias 는 양수여야 합니다.")
        return v

    @model_validator(mode="after")
    def _checkDepthRange(self) -> "RunConfig":
        if self.depth_min < 1 or self.depth_max < self.depth_min:
            raise ValueError("depth 범위가 올바르지 않습니다.")
        return self


__all__ = ["CommandName", "OutputFormat", "RunConfig"]
