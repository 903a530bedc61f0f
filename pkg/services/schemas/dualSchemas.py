# services/schemas/dualSchemas.py

"""
dualSchemas.py

enum:
    DualKind      | 닫힌 형태가 알려진 dual 함수 종류 (abs, sgn, ab_phi, ab_phi_prime)
    DualMethod    | 추정 방식 (quadrature, monte-carlo)

dataclass:
    DualEstimate  | dual 함수 f̂(ρ) 의 수치 추정 결과

pydantic:
    DualCheckRow     | dual-check 명령의 (a,b, 함수) 별 최대 오차 한 줄
    DualCheckReport  | dual-check 전체 결과
"""
from __future__ import annotations

from dataclasses import dataclass
from enum import Enum

from pydantic import BaseModel


class DualKind(str, Enum):
    ABS = "abs"
    SGN = "sgn"
    AB_PHI = "ab_phi"
    AB_PHI_PRIME = "ab_phi_prime"


class DualMethod(str, Enum):
    QUADRATURE = "quadrature"
    MONTE_CARLO = "monte-carlo"


@dataclass(frozen=True)
class DualEstimate:
    """
    dataclass: DualEstimate

    - value   : E[f(U1) f(U2)] 추정값
    - method  : DualMethod
    - order   : 축당 노드 수 (quadrature 일 때만)
    - samples : 표본 수 (monte-carlo 일 때만)
    - stderr  : 표준오차 = 표본 표준편차 / sqrt(samples) (monte-carlo 일 때만, quadrature 는 0)
    - scheme  : quadrature 격자 종류 ("split" | "hermite"), monte-carlo 는 None
    """
    value: float
    method: DualMethod
    order: int | None = None
    samples: int | None = None
    stderr: float = 0.0
    scheme: str | None = None


class DualCheckRow(BaseModel):
    """
    pydantic: DualCheckRow

    - a, b      : 활성함수 계수
    - kind      : 비교한 함수 (abs, sgn, ab_phi, ab_phi_prime)
    - max_error : ρ 격자 전체에서 |closed - quadrature| 최댓값
    - argmax    : 최대 오차가 나온 ρ
    """
    a: float
    b: float
    kind: DualKind
    max_error: float
    argmax: float


class DualCheckReport(BaseModel):
    """
    pydantic: DualCheckReport

    - order     : Gauss 노드 수
    - tolerance : 통과 기준
    - rows      : DualCheckRow 리스트
    - passed    : 모든 행이 tolerance 이하이면 True
    """
    order: int
    tolerance: float
    rows: list[DualCheckRow]
    passed: bool


__all__ = [
    "DualKind",
    "DualMethod",
    "DualEstimate",
    "DualCheckRow",
    "DualCheckReport",
]
