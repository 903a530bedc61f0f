# services/schemas/kernelSchemas.py

"""
kernelSchemas.py

dataclasses:
    Dataset          | n 개 입력 벡터, 노름 τ, 비퇴화 여부
    KernelMatrix     | 극한 NTK 의 n×n 스칼라 블록 + 출력 중복도 m_l
    DistanceMatrix   | 층 k 의 역코사인거리 행렬 W̄_k

pydantic:
    DatasetDescriptor | 데이터셋 CSV 옆에 저장하는 JSON 설명자 (n, dim, seed, bias ...)
"""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np
from pydantic import BaseModel


@dataclass(frozen=True)
class Dataset:
    """
    dataclass: Dataset

    - points             : (n, m0) 입력 행렬, 한 행이 한 점
    - norms              : τ_i = ||x_i||, 모두 양수
    - n                  : 점 개수 (>= 2)
    - dim                : 입력 차원 m0
    - parallel_tolerance : |cos| >= 1 - tol 이면 평행으로 본다
    - nondegenerate      : 평행(반평행 포함) 쌍이 없으면 True
    - seed, stream       : 구 표본일 때 사용한 시드와 하위 스트림 (그 외 None)
    - bias               : append_bias 로 붙인 β (없으면 None)
    """
    points: np.ndarray
    norms: np.ndarray
    n: int
    dim: int
    parallel_tolerance: float
    nondegenerate: bool
    seed: int | None = None
    stream: int | None = None
    bias: float | None = None


@dataclass(frozen=True)
class KernelMatrix:
    """
    dataclass: KernelMatrix

    - block        : (1/n) D_τ U D_τ, 대칭
    - multiplicity : m_l. K̄ = block ⊠ I_{m_l} 이며 실제 nm_l×nm_l 행렬은 만들지 않는다.
    - depth        : 층 수 l
    """
    block: np.ndarray
    multiplicity: int
    depth: int


@dataclass(frozen=True)
class DistanceMatrix:
    """
    dataclass: DistanceMatrix

    - entries : 대각 0, 비대각 w_k(x_i, x_j) >= 1
    - layer   : k
    """
    entries: np.ndarray
    layer: int


class DatasetDescriptor(BaseModel):
    """
    pydantic: DatasetDescriptor

    - n, dim             : 크기
    - seed, stream       : 재현용 시드 (외부 CSV 를 읽은 경우 None)
    - bias               : 편향 증강 β
    - parallel_tolerance : 비퇴화 판정 허용오차
    - nondegenerate      : 판정 결과
    """
    n: int
    dim: int
    seed: int | None = None
    stream: int | None = None
    bias: float | None = None
    parallel_tolerance: float
    nondegenerate: bool


__all__ = ["Dataset", "KernelMatrix", "DistanceMatrix", "DatasetDescriptor"]
