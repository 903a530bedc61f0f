# services/empirical/network.py

"""
network.py

functions:
    initNetwork     | 폭 (m_0, ..., m_l) 의 EOC MLP, 층별 시드 스트림으로 N(0,1) 가중치
    forward         | 입력 (m_0,) 또는 (n, m_0) 의 전방 계산 → ForwardCache
    layerScale      | 층 k 의 가중치 앞 계수 (k = 1 은 1, 그 외 σ/√m_{k-1})
    forwardWeights  | 가중치 목록을 직접 받아 전방 계산 (유한차분 검증에서 재사용)

설명:
    h_1 = W_1 x,  h_k = (σ/√m_{k-1}) W_k φ(h_{k-1}),  N(x) = h_l.
    첫 층은 E<h_1(x1), h_1(x2)>/m_1 = <x1, x2> 가 되도록 계수 1 을 쓰고
    은닉층은 fan-in 으로 나누는 NTK 매개화다. 편향은 없다.
    층 k 의 가중치는 SeedSequence([seed, stream, k, WEIGHT_TAG]) 로 만든다.
    WEIGHT_TAG 는 같은 seed 로 뽑은 데이터셋 스트림과 겹치지 않게 한다.
"""
from __future__ import annotations

import logging
import math
from typing import Sequence

import numpy as np

from services.kernel.ntkAssembly import requireEoc
from services.maps.activation import phi
from services.schemas.mapSchemas import ActivationParams
from services.schemas.networkSchemas import ForwardCache, MlpNetwork

logger = logging.getLogger(__name__)

WEIGHT_TAG = 1


class NetworkError(ValueError):
    """폭이 잘못되었거나 입력 차원이 맞지 않을 때"""
    pass


def layerScale(params: ActivationParams, widths: Sequence[int], k: int) -> float:
    if k == 1:
        return 1.0
    return params.sigma / math.sqrt(widths[k - 1])


def initNetwork(
    widths: Sequence[int],
    params: ActivationParams,
    seed: int,
    stream: int = 0,
) -> MlpNetwork:
    """
    function: initNetwork
    입력:
        widths : (m_0, m_1, ..., m_l), l >= 1, 모두 1 이상
        params : EOC ActivationParams
        seed   : 기본 시드
        stream : 시행 인덱스
    출력:
        MlpNetwork (가중치 읽기 전용)
    """
    requireEoc(params)
    widths = tuple(int(m) for m in widths)
    if len(widths) < 2:
        raise NetworkError(f"폭은 (m_0, ..., m_l), l >= 1 이어야 합니다: {widths}")
    if any(m < 1 for m in widths):
        raise NetworkError(f"폭은 모두 1 이상이어야 합니다: {widths}")

    weights = []
    for k in range(1, len(widths)):
        rng = np.random.default_rng(np.random.SeedSequence([seed, stream, k, WEIGHT_TAG]))
        W = rng.standard_normal((widths[k], widths[k - 1]))
        W.setflags(write=False)
        weights.append(W)

    logger.debug("[Empirical] network widths=%s seed=%d stream=%d", widths, seed, stream)
    return MlpNetwork(
        widths=widths,
        weights=tuple(weights),
        params=params,
        seed=seed,
        stream=stream,
    )


def forwardWeights(
    weights: Sequence[np.ndarray],
    params: ActivationParams,
    widths: Sequence[int],
    x: np.ndarray,
) -> ForwardCache:
    pre, post = [], []
    h = x @ weights[0].T
    pre.append(h)
    for k in range(2, len(weights) + 1):
        act = phi(params, h)
        post.append(act)
        h = layerScale(params, widths, k) * (act @ weights[k - 1].T)
        pre.append(h)
    return ForwardCache(x=x, pre=tuple(pre), post=tuple(post))


def forward(net: MlpNetwork, x) -> ForwardCache:
    """
    function: forward
    입력:
        net : MlpNetwork
        x   : (m_0,) 또는 (n, m_0)
    출력:
        ForwardCache. pre[k-1] = h_k, post[k-1] = φ(h_k) (k < l)
    """
    x = np.asarray(x, dtype=float)
    if x.shape[-1] != net.widths[0] or x.ndim not in (1, 2):
        raise NetworkError(f"입력 차원 {x.shape} 이 m_0={net.widths[0]} 와 맞지 않습니다.")
    return forwardWeights(net.weights, net.params, net.widths, x)


__all__ = ["WEIGHT_TAG", "NetworkError", "layerScale", "initNetwork", "forwardWeights", "forward"]
