# services/kernel/ntkAssembly.py

"""
ntkAssembly.py

functions:
    ntkEntry           | K̄(x1, x2) = ||x1|| ||x2|| u_l  (전방 재귀, O(l))
    ntkEntryDoubleSum  | 같은 값을 이중합 Σ_k ρ_k Π ϱ'(ρ_j) 로 (O(l²), 검증용)
    ntkMatrix          | KernelMatrix: block = (1/n) D_τ U D_τ
    blockFromUpper     | 상삼각 u 값으로 block 조립 (배치 가능)
    wMatrix            | 층 k 의 역코사인거리 행렬 W̄_k
    approxMatrix       | Ũ + l·I = Δ^-1(3π/16) W̄_l - (1/8)(11ᵀ - I) + l·I

helpers:
    requireEoc         | σ²(a²+b²) = 1 검사
    _upperState        | 데이터셋 상삼각 쌍에 대해 층 k 의 (z_k, u_k)

설명:
    닫힌 형태는 EOC 초기화에서만 성립하므로 EOC 가 아닌 σ 는 EocViolationError.
    행렬은 상삼각을 한 번 계산하고 대칭으로 복사해 정확히 대칭이다.
    출력 중복도 m_l 은 정수로만 들고 다니며 nm_l×nm_l 행렬을 만들지 않는다.
"""
from __future__ import annotations

import logging

import numpy as np

from services.kernel.dataset import gramCosines
from services.maps.activation import isEoc
from services.maps.cosineMaps import clampDomain, rhoMap, rhoPrime
from services.maps.mapErrors import NotApplicableError
from services.maps.mapIteration import walkDepth
from services.maps.propagation import UB_SLOPE
from services.schemas.kernelSchemas import Dataset, DistanceMatrix, KernelMatrix
from services.schemas.mapSchemas import ActivationParams

logger = logging.getLogger(__name__)


class EocViolationError(ValueError):
    """σ²(a²+b²) ≠ 1 인 params 로 닫힌 형태 NTK 를 요청한 경우"""
    pass


class DistanceOverflowError(ArithmeticError):
    """층 k 이전에 코사인이 부동소수점으로 1 에 도달해 w_k 가 무한대가 된 경우 (pairs 포함)"""

    def __init__(self, message: str, pairs: list[tuple[int, int]] | None = None) -> None:
        super().__init__(message)
        self.pairs = list(pairs or [])


def requireEoc(params: ActivationParams) -> None:
    if not isEoc(params):
        raise EocViolationError(
            f"EOC 초기화가 아닙니다: σ²(a²+b²) = {params.sigma ** 2 * (params.a ** 2 + params.b ** 2)!r}"
        )


def ntkEntry(
    params: ActivationParams,
    x1Norm: float,
    x2Norm: float,
    rho1: float,
    l: int,
) -> float:
    """
    function: ntkEntry
    입력:
        params         : EOC ActivationParams
        x1Norm, x2Norm : ||x1||, ||x2||
        rho1           : 입력 코사인
        l              : 층 수
    출력:
        ||x1|| ||x2|| u_l
    """
    requireEoc(params)
    if l < 1:
        raise ValueError("l 은 1 이상이어야 합니다.")
    u = None
    for _, _, u in walkDepth(params.delta, rho1, l):
        pass
    return float(x1Norm) * float(x2Norm) * float(u)


def ntkEntryDoubleSum(
    params: ActivationParams,
    x1Norm: float,
    x2Norm: float,
    rho1: float,
    l: int,
) -> float:
    """
    function: ntkEntryDoubleSum
    Σ_{k=1}^{l} ρ_k Π_{j=k}^{l-1} ϱ'(ρ_j) 을 그대로 계산한다. k = l 의 빈 곱은 1.
    """
    requireEoc(params)
    delta = params.delta
    rho = [float(clampDomain(rho1, -1.0, 1.0, "rho"))]
    for _ in range(1, l):
        rho.append(rhoMap(delta, rho[-1]))
    deriv = [rhoPrime(delta, r) for r in rho]

    total = 0.0
    for k in range(l):
        prod = 1.0
        for j in range(k, l - 1):
            prod *= deriv[j]
        total += rho[k] * prod
    return float(x1Norm) * float(x2Norm) * total


def blockFromUpper(norms: np.ndarray, uUpper: np.ndarray, l: int) -> np.ndarray:
    """
    function: blockFromUpper
    입력:
        norms  : (..., n) τ
        uUpper : (..., n(n-1)/2) triu_indices(n, 1) 순서의 u_l
        l      : 대각 값 (u_l(ρ=1) = l)
    출력:
        (..., n, n) block = (1/n) τ_i τ_j U_ij
    """
    norms = np.asarray(norms, dtype=float)
    n = norms.shape[-1]
    iu, ju = np.triu_indices(n, k=1)
    U = np.zeros(uUpper.shape[:-1] + (n, n))
    U[..., iu, ju] = uUpper
    U[..., ju, iu] = uUpper
    U[..., np.arange(n), np.arange(n)] = float(l)
    return norms[..., :, None] * norms[..., None, :] * U / n


def _upperState(params: ActivationParams, d: Dataset, k: int) -> tuple[np.ndarray, np.ndarray]:
    cos = gramCosines(d)
    iu, ju = np.triu_indices(d.n, k=1)
    z = u = None
    for _, z, u in walkDepth(params.delta, cos[iu, ju], k):
        pass
    return z, u


def ntkMatrix(params: ActivationParams, d: Dataset, l: int, ml: int = 1) -> KernelMatrix:
    """
    function: ntkMatrix
    입력:
        params : EOC ActivationParams
        d      : 비퇴화 Dataset
        l      : 층 수
        ml     : 출력 중복도 m_l
    출력:
        KernelMatrix(block, multiplicity=ml, depth=l)
    """
    requireEoc(params)
    if l < 1 or ml < 1:
        raise ValueError(f"l, m_l 은 1 이상이어야 합니다: l={l}, m_l={ml}")
    _, u = _upperState(params, d, l)
    block = blockFromUpper(d.norms, u, l)
    block.setflags(write=False)
    logger.debug("[Kernel] ntk matrix n=%d l=%d delta=%.6g", d.n, l, params.delta)
    return KernelMatrix(block=block, multiplicity=ml, depth=l)


def wMatrix(params: ActivationParams, d: Dataset, k: int) -> DistanceMatrix:
    """
    function: wMatrix
    입력:
        params, d
        k : 층 (>= 1)
    출력:
        DistanceMatrix (대각 0, 비대각 ((1 - ρ_k)/2)^(-1/2))

    설명:
        z_k 가 0 으로 언더플로되면 해당 쌍을 담아 DistanceOverflowError.
    """
    requireEoc(params)
    if k < 1:
        raise ValueError("k 는 1 이상이어야 합니다.")
    z, _ = _upperState(params, d, k)
    iu, ju = np.triu_indices(d.n, k=1)
    if np.any(z <= 0.0):
        bad = np.flatnonzero(z <= 0.0)
        pairs = [(int(iu[i]), int(ju[i])) for i in bad]
        raise DistanceOverflowError(
            f"층 {k} 이전에 코사인이 1 에 도달했습니다: {pairs[:5]}",
            pairs=pairs,
        )
    W = np.zeros((d.n, d.n))
    w = 1.0 / np.sqrt(z)
    W[iu, ju] = w
    W[ju, iu] = w
    W.setflags(write=False)
    return DistanceMatrix(entries=W, layer=k)


def approxMatrix(params: ActivationParams, d: Dataset, l: int) -> np.ndarray:
    """
    function: approxMatrix
    입력:
        params : Δ_φ > 0 인 EOC ActivationParams
        d, l
    출력:
        Ũ + l·I.  (1/2)Δ^-1 b_3^-1 = Δ^-1·3π/16.
    """
    if params.delta <= 0.0:
        raise NotApplicableError("Δ_φ = 0 에서는 근사 행렬을 쓰지 않습니다.")
    W = wMatrix(params, d, l).entries
    n = d.n
    offOnes = np.ones((n, n)) - np.eye(n)
    return UB_SLOPE / params.delta * W - 0.125 * offOnes + l * np.eye(n)


__all__ = [
    "EocViolationError",
    "DistanceOverflowError",
    "requireEoc",
    "ntkEntry",
    "ntkEntryDoubleSum",
    "blockFromUpper",
    "ntkMatrix",
    "wMatrix",
    "approxMatrix",
]
