# services/spectral/distanceBounds.py

"""
distanceBounds.py

functions:
    reflectedGenerators      | 층 1 W̄ 행렬에서 w* 미만 항목을 ω 가 같은 w* 이상 값으로 바꾼 행렬
    restrictedEigenvalues    | 1⊥ 로 제한한 고유값 λ̂ (내림차순)
    distanceBoundQuantities  | W̲, W̄, Ŵ, W̃, Δ̃
    omegaPower               | ω^{∘count} 를 배열에 적용
    distanceSpectrumChecks   | 층 k 의 W̄_k 에 대한 정확한 부등식 검사 목록

helpers:
    _complementBasis         | 1⊥ 의 정규직교 기저 (Householder)
    _bisectReflection        | ω(v) = ω(w), v >= w* 인 v 를 이분법으로

설명:
    반사 후 모든 비대각 항목이 w* 이상이므로 ω^{∘(k-1)} 은 [W̲, ∞) 에서 증가·볼록이고
    k >= 2 에서 (W̄_k)_ij = ω^{∘(k-1)}(반사된 항목) 이다. k = 1 은 원래 항목을 그대로 쓴다.

    W̃(v) : 비대각 max(W̄_ij, v), 대각 0
    W̃    = max_v  -λ̂_min(W̃(v))
    Δ̃    = max_v  λ̂_max(W̃(v)) - λ̂_min(W̃(v))
    v 는 W̄ 의 서로 다른 비대각 값 전체를 돈다. 고유값 계산이 O(n²) 번이라 n <= MAX_TILDE_N 으로 제한한다.

    검사 (lhs <= rhs 형태, slack 1e-9·max(1, |rhs|)):
      perron_lower   : (n-1)ω^{∘(k-1)}(W̲) <= λ₁(W̄_k)
      perron_upper   : λ₁(W̄_k) <= (n-1)ω^{∘(k-1)}(W̄)
      lambda2        : λ₂(W̄_k) <= -ω^{∘(k-1)}(W̄) + Δ̃
      restricted_min : -ω^{∘(k-1)}(W̃) <= λ̂_min(W̄_k)          (보고만)
      lambda_n       : λ_n 하한 -ω^{∘(k-1)}(W̃)(1 + 2/(n-1)·(r - 1/(n-1))^-1)  (보고만, r > 1/(n-1) 일 때)
"""
from __future__ import annotations

import logging
from functools import lru_cache

import numpy as np

from services.kernel.ntkAssembly import wMatrix
from services.maps.inverseDistance import omega, wStar
from services.schemas.kernelSchemas import Dataset
from services.schemas.mapSchemas import ActivationParams
from services.schemas.spectralSchemas import BoundCheck, DistanceBoundQuantities
from services.spectral.jacobiEigen import eigenSymmetric

logger = logging.getLogger(__name__)

MAX_TILDE_N = 64
REFLECT_RTOL = 1e-12
CHECK_SLACK = 1e-9


class BoundQuantityError(ValueError):
    """W̃/Δ̃ 를 계산할 수 없는 입력 (n 상한 초과 등)"""
    pass


@lru_cache(maxsize=16)
def _complementBasis(n: int) -> np.ndarray:
    """
    helper: _complementBasis
    H = I - 2uuᵀ/||u||², u = 1/√n - e_1. H e_1 = 1/√n 이므로 H 의 나머지 열이 1⊥ 기저.
    """
    u = np.full(n, 1.0 / np.sqrt(n))
    u[0] -= 1.0
    H = np.eye(n) - 2.0 * np.outer(u, u) / np.dot(u, u)
    Q = H[:, 1:].copy()
    Q.setflags(write=False)
    return Q


def restrictedEigenvalues(M, workers: int = 1) -> np.ndarray:
    """
    function: restrictedEigenvalues
    입력:
        M : (n, n) 또는 (B, n, n) 대칭 행렬
    출력:
        QᵀMQ 의 고유값 (n-1 개, 내림차순)
    """
    M = np.asarray(M, dtype=float)
    Q = _complementBasis(M.shape[-1])
    R = Q.T @ M @ Q
    R = 0.5 * (R + np.swapaxes(R, -1, -2))
    return eigenSymmetric(R, workers=workers)


def omegaPower(delta: float, values, count: int) -> np.ndarray:
    out = np.asarray(values, dtype=float)
    for _ in range(count):
        out = np.asarray(omega(delta, out), dtype=float)
    return out


def _bisectReflection(delta: float, w: np.ndarray, ws: float) -> np.ndarray:
    """
    helper: _bisectReflection
    ω 는 (1, w*) 에서 감소, (w*, ∞) 에서 증가하고 v >= w* 이면 ω(v) >= v 이므로
    근은 [w*, ω(w)] 안에 있다.
    """
    target = np.asarray(omega(delta, w), dtype=float)
    lo = np.full_like(target, ws)
    hi = target.copy()
    for _ in range(200):
        if np.all(hi - lo <= REFLECT_RTOL * hi):
            break
        mid = 0.5 * (lo + hi)
        above = np.asarray(omega(delta, mid), dtype=float) >= target
        hi = np.where(above, mid, hi)
        lo = np.where(above, lo, mid)
    return 0.5 * (lo + hi)


def reflectedGenerators(params: ActivationParams, d: Dataset, reflect: bool = True) -> np.ndarray:
    """
    function: reflectedGenerators
    입력:
        params  : EOC ActivationParams
        d       : 비퇴화 Dataset
        reflect : False 면 층 1 항목 그대로
    출력:
        (n, n) 대칭, 대각 0, 비대각 >= w*
    """
    W = np.array(wMatrix(params, d, 1).entries, copy=True)
    if not reflect or params.delta == 0.0:
        return W
    ws = wStar(params.delta)
    iu, ju = np.triu_indices(d.n, k=1)
    vals = W[iu, ju]
    low = vals < ws
    if np.any(low):
        vals = vals.copy()
        vals[low] = _bisectReflection(params.delta, vals[low], ws)
        W[iu, ju] = vals
        W[ju, iu] = vals
        logger.debug("[Spectral] w* = %.6g 미만 항목 %d 개 반사", ws, int(low.sum()))
    return W


def distanceBoundQuantities(
    params: ActivationParams,
    d: Dataset,
    reflect: bool = True,
    workers: int = 1,
) -> DistanceBoundQuantities:
    """
    function: distanceBoundQuantities
    입력:
        params, d
        reflect : 반사된 생성자 사용 여부 (k >= 2 는 True, k = 1 은 False)
    출력:
        DistanceBoundQuantities
    """
    if d.n > MAX_TILDE_N:
        raise BoundQuantityError(f"W̃, Δ̃ 계산은 n <= {MAX_TILDE_N} 에서만 지원합니다: n={d.n}")
    W = reflectedGenerators(params, d, reflect=reflect)
    iu, ju = np.triu_indices(d.n, k=1)
    off = W[iu, ju]

    levels = np.unique(off)
    stack = np.maximum(W[None, :, :], levels[:, None, None])
    idx = np.arange(d.n)
    stack[:, idx, idx] = 0.0
    lam = restrictedEigenvalues(stack, workers=workers)
    lamMax = lam[:, 0]
    lamMin = lam[:, -1]

    return DistanceBoundQuantities(
        generators=W,
        w_low=float(off.min()),
        w_high=float(off.max()),
        w_hat=float(off.mean()),
        w_tilde=float(np.max(-lamMin)),
        delta_tilde=float(np.max(lamMax - lamMin)),
    )


def _check(name: str, k: int, lhs: float, rhs: float, asserted: bool = True) -> BoundCheck:
    slack = CHECK_SLACK * max(1.0, abs(rhs), abs(lhs))
    return BoundCheck(
        name=name,
        layer=k,
        lhs=float(lhs),
        rhs=float(rhs),
        passed=bool(lhs <= rhs + slack),
        asserted=asserted,
    )


def distanceSpectrumChecks(
    params: ActivationParams,
    d: Dataset,
    k: int,
    quantities: DistanceBoundQuantities | None = None,
) -> list[BoundCheck]:
    """
    function: distanceSpectrumChecks
    입력:
        params, d
        k          : 층 (>= 1)
        quantities : 미리 계산한 보조량 (k >= 2 에서 재사용; None 이면 새로 계산)
    출력:
        BoundCheck 목록
    """
    n = d.n
    delta = params.delta
    if quantities is None or k == 1:
        quantities = distanceBoundQuantities(params, d, reflect=k >= 2)

    Wk = wMatrix(params, d, k).entries
    eig = eigenSymmetric(Wk)
    lamHat = restrictedEigenvalues(Wk)

    step = k - 1
    oLow, oHigh, oHat, oTilde = omegaPower(
        delta,
        [quantities.w_low, quantities.w_high, quantities.w_hat, quantities.w_tilde],
        step,
    )

    checks = [
        _check("perron_lower", k, (n - 1) * oLow, eig[0]),
        _check("perron_upper", k, eig[0], (n - 1) * oHigh),
        _check("lambda2", k, eig[1], -oHigh + quantities.delta_tilde),
        _check("restricted_min", k, -oTilde, lamHat[-1], asserted=False),
    ]

    ratio = oHat / oTilde - 1.0 / (n - 1)
    if ratio > 0.0:
        bound = -oTilde * (1.0 + 2.0 / (n - 1) / ratio)
        checks.append(_check("lambda_n", k, bound, eig[-1], asserted=False))

    failed = [ch.name for ch in checks if ch.asserted and not ch.passed]
    if failed:
        logger.warning("[Spectral] 층 %d 부등식 위반: %s", k, failed)
    return checks


__all__ = [
    "MAX_TILDE_N",
    "BoundQuantityError",
    "restrictedEigenvalues",
    "omegaPower",
    "reflectedGenerators",
    "distanceBoundQuantities",
    "distanceSpectrumChecks",
]
