# services/schemas/boundSchemas.py

"""
boundSchemas.py

pydantic:
    PropagationRow  | 한 (Δ, w) 에 대한 전파 추정 편차의 구간별 최댓값
    SandwichRow     | 한 Δ 에서 ρ_1 격자 전체의 u_k 상·하한 위반 개수
    BoundReport     | verify-bounds 전체 결과

dataclass:
    SweepCurve      | 한 Δ_φ 의 깊이별 평균 κ (sweep-depth 결과)
"""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np
from pydantic import BaseModel, Field


class PropagationRow(BaseModel):
    """
    pydantic: PropagationRow

    - delta, w    : Δ_φ, 시작 w_1
    - k_max       : 검사한 최대 층
    - early_max   : k ∈ [10, 100] 편차 최댓값
    - late_max    : k ∈ [100, k_max] 편차 최댓값
    - plateau_gap : late_max - early_max
    - passed      : plateau_gap < 허용 증가량
    """
    delta: float
    w: float
    k_max: int
    early_max: float
    late_max: float
    plateau_gap: float
    passed: bool


class SandwichRow(BaseModel):
    """
    pydantic: SandwichRow

    - delta            : Δ_φ
    - starts           : ρ_1 격자 크기
    - k_max            : 검사한 최대 층
    - upper_violations : u_k > Δ^-1(3π/16)w_k - 1/8 개수
    - lower_violations : u_k < 상한 - c·k·z_k 개수
    - c_max            : 격자에서 가장 큰 하한 상수
    - passed           : 두 위반 개수가 모두 0
    """
    delta: float
    starts: int
    k_max: int
    upper_violations: int
    lower_violations: int
    c_max: float
    passed: bool


class BoundReport(BaseModel):
    """
    pydantic: BoundReport

    - propagation : PropagationRow 목록
    - sandwich    : SandwichRow 목록
    - skipped     : Δ_φ = 0 이라 제외한 (a, b)
    - passed      : 모든 행 통과
    """
    propagation: list[PropagationRow] = Field(default_factory=list)
    sandwich: list[SandwichRow] = Field(default_factory=list)
    skipped: list[tuple[float, float]] = Field(default_factory=list)
    passed: bool


@dataclass(frozen=True)
class SweepCurve:
    """
    dataclass: SweepCurve

    - a, b, delta : 활성함수
    - depths      : l 값 (오름차순)
    - kappa_mean  : 데이터셋 평균 κ(K̄)
    - kappa_std   : 데이터셋 표준편차 (ddof=0)
    """
    a: float
    b: float
    delta: float
    depths: np.ndarray
    kappa_mean: np.ndarray
    kappa_std: np.ndarray


__all__ = ["PropagationRow", "SandwichRow", "BoundReport", "SweepCurve"]
