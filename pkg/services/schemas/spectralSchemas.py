# services/schemas/spectralSchemas.py

"""
spectralSchemas.py

dataclass:
    DistanceBoundQuantities | W̄ 행렬 스펙트럼 경계 계산용 보조량 (W̲, W̄, Ŵ, W̃, Δ̃)

pydantic:
    ReferenceEigenvalues    | rank-one 기준 행렬의 top/bulk 고유값과 구간
    BoundCheck              | 한 부등식의 lhs/rhs/통과 여부
    SpectralReport          | 한 데이터셋·한 깊이의 전체 스펙트럼 보고서
"""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np
from pydantic import BaseModel, Field


@dataclass(frozen=True)
class DistanceBoundQuantities:
    """
    dataclass: DistanceBoundQuantities

    - generators  : 층 1 의 반사된 W̄ 행렬 (w* 미만 항목은 ω 등가값으로 치환, 대각 0)
    - w_low       : W̲ = 비대각 최솟값
    - w_high      : W̄ = 비대각 최댓값
    - w_hat       : Ŵ = 비대각 평균
    - w_tilde     : W̃ (수정 행렬들의 최소 고유값에서 역산)
    - delta_tilde : Δ̃ (수정 행렬들의 λ₂ 최댓값 보정)
    """
    generators: np.ndarray
    w_low: float
    w_high: float
    w_hat: float
    w_tilde: float
    delta_tilde: float


class ReferenceEigenvalues(BaseModel):
    """
    pydantic: ReferenceEigenvalues

    - top, bulk       : 단위노름일 때의 정확한 값 (일반 τ 에서는 τ̄² 기준 값)
    - top_interval    : Perron-Frobenius 구간 [τ̲² 값, τ̄² 값]
    - bulk_interval   : interlacing 구간
    - bulk_multiplicity : n-1
    - in_regime       : c ∈ (0,1) 여부
    """
    top: float
    bulk: float
    top_interval: tuple[float, float]
    bulk_interval: tuple[float, float]
    bulk_multiplicity: int
    in_regime: bool


class BoundCheck(BaseModel):
    """
    pydantic: BoundCheck

    - name     : 부등식 이름 (perron_lower, perron_upper, lambda2, restricted_min, lambda_n)
    - layer    : 층 k
    - lhs, rhs : lhs <= rhs 형태로 정규화한 값
    - passed   : slack 포함 통과 여부
    - asserted : True 면 실패 시 CLI 종료코드 1, False 면 보고만
    """
    name: str
    layer: int
    lhs: float
    rhs: float
    passed: bool
    asserted: bool = True


class SpectralReport(BaseModel):
    """
    pydantic: SpectralReport

    - n, depth, multiplicity : 데이터 크기, l, m_l
    - a, b, delta            : 활성함수
    - eigenvalues            : block 고유값 (내림차순)
    - kappa                  : λ₁/λ_n
    - xi, W, c               : 선행차수 보조량
    - W_reference            : 기준 깊이에서의 W (drift 보고용, 없으면 None)
    - reference              : ReferenceEigenvalues
    - predictions            : lambda1 / bulk_upper / bulk_lower / kappa 예측값
    - residuals              : 실제 - 예측
    - rank_one_gap           : ||block - 기준행렬|| / λ₁
    - checks                 : W̄_l 에 대한 정확한 부등식 결과
    - in_regime              : c ∈ (0,1)
    """
    n: int
    depth: int
    multiplicity: int
    a: float
    b: float
    delta: float
    eigenvalues: list[float]
    kappa: float
    xi: float
    W: float
    W_reference: float | None = None
    c: float
    reference: ReferenceEigenvalues
    predictions: dict[str, float] = Field(default_factory=dict)
    residuals: dict[str, float] = Field(default_factory=dict)
    rank_one_gap: float
    checks: list[BoundCheck] = Field(default_factory=list)
    in_regime: bool

    @property
    def passed(self) -> bool:
        return all(ch.passed for ch in self.checks if ch.asserted)


__all__ = [
    "DistanceBoundQuantities",
    "ReferenceEigenvalues",
    "BoundCheck",
    "SpectralReport",
]
