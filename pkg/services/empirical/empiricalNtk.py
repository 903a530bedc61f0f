# services/empirical/empiricalNtk.py

"""
empiricalNtk.py

functions:
    empiricalKernel        | n 개 입력의 경험적 NTK, 블록 (n, n, m_l, m_l)
    empiricalNtk           | 두 입력의 K_θ(x1, x2), (m_l, m_l)
    stackedEmpiricalKernel | (n·m_l) × (n·m_l) 전체 행렬
    finiteDifferenceNtk    | 가중치 중앙차분 야코비안으로 만든 K_θ (검증용)

helpers:
    _gram                  | 행끼리 내적 (원소곱 후 합)

설명:
    K_θ(x1, x2) = Σ_p ∂N(x1)/∂θ_p ∂N(x2)/∂θ_p 를 층별로 모은다.
    B_k = ∂h_l/∂h_k 라 하면 층 k 가중치의 기여는
        s_k² <in_k(x1), in_k(x2)> B_k(x1) B_k(x2)ᵀ
    이고 B_{k-1} = s_k (B_k W_k) diag(φ'(h_{k-1})) 로 거꾸로 내려간다.
    전체 야코비안은 만들지 않는다. φ'(0) = a 규약은 phiPrime 을 따른다.
"""
from __future__ import annotations

import logging

import numpy as np

from services.empirical.network import NetworkError, forward, forwardWeights, layerScale
from services.maps.activation import phiPrime
from services.schemas.networkSchemas import EmpiricalKernel, MlpNetwork

logger = logging.getLogger(__name__)

FD_STEP = 1e-4


def _gram(A: np.ndarray) -> np.ndarray:
    return np.sum(A[:, None, :] * A[None, :, :], axis=-1)


def empiricalKernel(net: MlpNetwork, X) -> EmpiricalKernel:
    """
    function: empiricalKernel
    입력:
        net : MlpNetwork
        X   : (n, m_0) 입력
    출력:
        EmpiricalKernel (blocks[i, j] = K_θ(x_i, x_j))
    """
    X = np.atleast_2d(np.asarray(X, dtype=float))
    cache = forward(net, X)
    n = X.shape[0]
    l = net.depth
    ml = net.widths[-1]

    B = np.broadcast_to(np.eye(ml), (n, ml, ml)).copy()
    K = np.zeros((n, n, ml, ml))
    for k in range(l, 0, -1):
        inp = X if k == 1 else cache.post[k - 2]
        s = layerScale(net.params, net.widths, k)
        outer = np.einsum("iak,jbk->ijab", B, B)
        K += (s * s) * _gram(inp)[:, :, None, None] * outer
        if k > 1:
            deriv = phiPrime(net.params, cache.pre[k - 2])
            B = s * (B @ net.weights[k - 1]) * deriv[:, None, :]

    return EmpiricalKernel(blocks=K, width_profile=net.widths, seed=net.seed)


def empiricalNtk(net: MlpNetwork, x1, x2) -> np.ndarray:
    x1 = np.asarray(x1, dtype=float)
    x2 = np.asarray(x2, dtype=float)
    if x1.ndim != 1 or x1.shape != x2.shape:
        raise NetworkError(f"입력은 같은 길이의 벡터여야 합니다: {x1.shape}, {x2.shape}")
    return empiricalKernel(net, np.stack([x1, x2])).blocks[0, 1]


def stackedEmpiricalKernel(net: MlpNetwork, X) -> np.ndarray:
    """블록 (i, j) 를 행 i·m_l.., 열 j·m_l.. 에 놓은 전체 행렬"""
    blocks = empiricalKernel(net, X).blocks
    n, _, m, _ = blocks.shape
    return blocks.transpose(0, 2, 1, 3).reshape(n * m, n * m)


def finiteDifferenceNtk(net: MlpNetwork, x1, x2, step: float = FD_STEP) -> np.ndarray:
    """
    function: finiteDifferenceNtk
    입력:
        net    : 작은 MlpNetwork (폭 <= 8 정도)
        x1, x2 : 입력 벡터
        step   : 중앙차분 간격
    출력:
        J(x1) J(x2)ᵀ, (m_l, m_l)

    설명:
        가중치 하나씩 ±step 로 흔들어 출력 차이를 잰다. 파라미터 수만큼 전방 계산을 두 번씩 한다.
    """
    X = np.stack([np.asarray(x1, dtype=float), np.asarray(x2, dtype=float)])
    base = list(net.weights)
    columns = []
    for k, W in enumerate(net.weights):
        for idx in range(W.size):
            plus = W.copy()
            minus = W.copy()
            plus.flat[idx] += step
            minus.flat[idx] -= step
            base[k] = plus
            hp = forwardWeights(base, net.params, net.widths, X).output
            base[k] = minus
            hm = forwardWeights(base, net.params, net.widths, X).output
            columns.append((hp - hm) / (2.0 * step))
        base[k] = W
    J = np.stack(columns, axis=-1)
    logger.debug("[Empirical] finite-difference jacobian params=%d", J.shape[-1])
    return J[0] @ J[1].T


__all__ = [
    "FD_STEP",
    "empiricalKernel",
    "empiricalNtk",
    "stackedEmpiricalKernel",
    "finiteDifferenceNtk",
]
