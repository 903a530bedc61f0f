# services/schemas/networkSchemas.py

"""
networkSchemas.py

dataclasses:
    MlpNetwork       | EOC 초기화된 유한폭 MLP (가중치, 폭, 활성함수)
    ForwardCache     | 한 입력의 전방 계산 결과 (h_k, φ(h_k))
    EmpiricalKernel  | n×n 블록 각각이 m_l×m_l 인 경험적 NTK
    ConvergenceRow   | 폭별 평균 상대오차 한 줄
"""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from services.schemas.mapSchemas import ActivationParams


@dataclass(frozen=True)
class MlpNetwork:
    """
    dataclass: MlpNetwork

    - widths  : (m_0, m_1, ..., m_l)
    - weights : 층별 (m_k, m_{k-1}) 행렬, 항목은 iid N(0,1)
    - params  : ActivationParams (σ 포함)
    - seed    : 가중치 시드
    - stream  : 시행(trial) 인덱스
    """
    widths: tuple[int, ...]
    weights: tuple[np.ndarray, ...]
    params: ActivationParams
    seed: int
    stream: int = 0

    @property
    def depth(self) -> int:
        return len(self.widths) - 1


@dataclass(frozen=True)
class ForwardCache:
    """
    dataclass: ForwardCache

    - x           : 입력
    - pre         : (h_1, ..., h_l)
    - post        : (φ(h_1), ..., φ(h_{l-1}))  마지막 층은 선형 출력이라 없음
    """
    x: np.ndarray
    pre: tuple[np.ndarray, ...]
    post: tuple[np.ndarray, ...]

    @property
    def output(self) -> np.ndarray:
        return self.pre[-1]


@dataclass(frozen=True)
class EmpiricalKernel:
    """
    dataclass: EmpiricalKernel

    - blocks        : shape (n, n, m_l, m_l)
    - width_profile : 네트워크 폭
    - seed          : 네트워크 시드
    """
    blocks: np.ndarray
    width_profile: tuple[int, ...]
    seed: int

    def scalarEntries(self) -> np.ndarray:
        """블록별 trace/m_l, shape (n, n)"""
        m = self.blocks.shape[-1]
        return np.trace(self.blocks, axis1=2, axis2=3) / m


@dataclass(frozen=True)
class ConvergenceRow:
    """
    dataclass: ConvergenceRow

    - width          : 은닉층 폭
    - mean_rel_error : 시행·쌍 평균 상대오차
    - stderr         : 시행 평균들의 표준오차
    - slope_so_far   : 지금까지의 폭에 대한 log-log 기울기 (3개 미만이면 NaN)
    """
    width: int
    mean_rel_error: float
    stderr: float
    slope_so_far: float


__all__ = ["MlpNetwork", "ForwardCache", "EmpiricalKernel", "ConvergenceRow"]
