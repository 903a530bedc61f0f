# services/spectral/theoremQuantities.py

"""
theoremQuantities.py

functions:
    xi                   | ξ = (3/8)(Δ^-1(π/2)W + log(Δ^-1(3π/4)W + l - 1) - 1)
    mixingCoefficient    | c = l^-1(Δ^-1(3π/16)ω^{∘(l-1)}(W) - 1/8)
    solveW               | λ₁(W̄_l) = (n-1)ω^{∘(l-1)}(W) 인 W 를 [W̲, W̄] 에서 이분법으로
    referenceEigenvalues | (l/n)((1-c)D_τ² + cτ⊗τ) 의 top / bulk 값과 구간
    kappaLimit           | 1 + n/3
    kernelSpectrum       | K̄ = block ⊠ I_{m_l} 의 고유값 (각 값 m_l 번 반복)
    theoremReport        | 한 데이터셋·한 깊이의 SpectralReport

설명:
    O(·) 상수를 모르는 선행차수 예측은 잔차(실제 - 예측)로만 보고하고,
    증명에서 그대로 나오는 W̄_l 부등식만 checks 에 asserted 로 넣는다.
"""
from __future__ import annotations

import logging
import math

import numpy as np

from services.kernel.ntkAssembly import ntkMatrix, wMatrix
from services.maps.mapErrors import NotApplicableError
from services.maps.propagation import UB_SLOPE
from services.schemas.kernelSchemas import Dataset, KernelMatrix
from services.schemas.mapSchemas import ActivationParams
from services.schemas.spectralSchemas import ReferenceEigenvalues, SpectralReport
from services.spectral.distanceBounds import (
    MAX_TILDE_N,
    distanceSpectrumChecks,
    omegaPower,
    reflectedGenerators,
)
from services.spectral.jacobiEigen import conditionNumber, eigenSymmetric

logger = logging.getLogger(__name__)

SOLVE_TOL = 1e-10
BRACKET_SLACK = 1e-9


class BracketingError(RuntimeError):
    """solveW 의 [W̲, W̄] 구간 양 끝에서 부호가 바뀌지 않음"""
    pass


def _requirePositive(params: ActivationParams, what: str) -> None:
    if params.delta <= 0.0:
        raise NotApplicableError(f"Δ_φ = 0 에서는 {what} 이(가) 정의되지 않습니다.")


def xi(params: ActivationParams, W: float, l: int) -> float:
    _requirePositive(params, "ξ")
    if l < 1 or not W >= 1.0:
        raise ValueError(f"W >= 1, l >= 1 이어야 합니다: W={W}, l={l}")
    inv = 1.0 / params.delta
    return 0.375 * (
        inv * (math.pi / 2.0) * W
        + math.log(inv * (3.0 * math.pi / 4.0) * W + l - 1.0)
        - 1.0
    )


def mixingCoefficient(params: ActivationParams, W: float, l: int) -> float:
    _requirePositive(params, "c")
    wl = float(omegaPower(params.delta, W, l - 1))
    return (UB_SLOPE / params.delta * wl - 0.125) / l


def solveW(params: ActivationParams, d: Dataset, l: int, lambda1: float | None = None) -> float:
    """
    function: solveW
    입력:
        params  : Δ_φ > 0
        d       : 비퇴화 Dataset
        l       : 깊이
        lambda1 : λ₁(W̄_l) 를 이미 알면 전달
    출력:
        W ∈ [W̲, W̄]

    설명:
        구간 양 끝은 반사된 생성자(l = 1 이면 원래 항목)의 최소/최대 비대각 값이다.
        W̲ = W̄ 이면 그 값을 그대로 돌려준다 (n = 2, 등상관 데이터).
    """
    _requirePositive(params, "W")
    n = d.n
    gen = reflectedGenerators(params, d, reflect=l >= 2)
    iu, ju = np.triu_indices(n, k=1)
    off = gen[iu, ju]
    lo, hi = float(off.min()), float(off.max())
    if lo == hi:
        return lo

    if lambda1 is None:
        lambda1 = float(eigenSymmetric(wMatrix(params, d, l).entries)[0])
    target = lambda1 / (n - 1)

    def gap(W: float) -> float:
        return float(omegaPower(params.delta, W, l - 1)) - target

    gLo, gHi = gap(lo), gap(hi)
    slack = BRACKET_SLACK * max(1.0, abs(target))
    if gLo > slack or gHi < -slack:
        raise BracketingError(
            f"[W̲, W̄] = [{lo:.12g}, {hi:.12g}] 에서 근이 감싸지지 않습니다 "
            f"(gap={gLo:.3g}, {gHi:.3g})."
        )
    if gLo >= 0.0:
        return lo
    if gHi <= 0.0:
        return hi

    while hi - lo > SOLVE_TOL * max(1.0, hi):
        mid = 0.5 * (lo + hi)
        if gap(mid) >= 0.0:
            hi = mid
        else:
            lo = mid
    return 0.5 * (lo + hi)


def referenceEigenvalues(c: float, tau, l: int, n: int) -> ReferenceEigenvalues:
    """
    function: referenceEigenvalues
    입력:
        c   : 혼합계수
        tau : 노름 벡터 τ
        l, n
    출력:
        ReferenceEigenvalues. 단위노름이면 top = (l/n)(1+(n-1)c), bulk = (l/n)(1-c) 정확히.
    """
    if n < 2:
        raise ValueError("n 은 2 이상이어야 합니다.")
    tau = np.asarray(tau, dtype=float)
    hi2 = float(np.max(tau)) ** 2
    lo2 = float(np.min(tau)) ** 2
    topBase = l / n * (1.0 + (n - 1) * c)
    bulkBase = l / n * (1.0 - c)
    inRegime = 0.0 < c < 1.0
    if not inRegime:
        logger.warning("[Spectral] c = %.6g 가 (0, 1) 밖입니다 (l=%d).", c, l)
    return ReferenceEigenvalues(
        top=topBase * hi2,
        bulk=bulkBase * hi2,
        top_interval=(topBase * lo2, topBase * hi2),
        bulk_interval=(bulkBase * lo2, bulkBase * hi2),
        bulk_multiplicity=n - 1,
        in_regime=inRegime,
    )


def kappaLimit(n: int) -> float:
    if n < 2:
        raise ValueError("n 은 2 이상이어야 합니다.")
    return 1.0 + n / 3.0


def kernelSpectrum(K: KernelMatrix, eigenvalues=None) -> np.ndarray:
    ev = eigenSymmetric(K.block) if eigenvalues is None else np.asarray(eigenvalues, dtype=float)
    return np.repeat(ev, K.multiplicity)


def _rankOneGap(block: np.ndarray, tau: np.ndarray, c: float, l: int, lambda1: float) -> float:
    n = tau.size
    ref = l / n * ((1.0 - c) * np.diag(tau * tau) + c * np.outer(tau, tau))
    ev = eigenSymmetric(block - ref)
    return float(np.max(np.abs(ev)) / lambda1)


def theoremReport(
    params: ActivationParams,
    d: Dataset,
    l: int,
    ml: int = 1,
    referenceDepth: int | None = None,
) -> SpectralReport:
    """
    function: theoremReport
    입력:
        params         : Δ_φ > 0 인 EOC ActivationParams
        d              : 비퇴화 Dataset
        l, ml          : 깊이, 출력 중복도
        referenceDepth : 주어지면 그 깊이의 W 도 구해 drift 를 보고
    출력:
        SpectralReport
    """
    _requirePositive(params, "스펙트럼 보고서")
    n = d.n
    K = ntkMatrix(params, d, l, ml)
    eig = eigenSymmetric(K.block)
    kappa = conditionNumber(eig)

    W = solveW(params, d, l)
    xiVal = xi(params, W, l)
    c = mixingCoefficient(params, W, l)
    tau = np.asarray(d.norms, dtype=float)
    hi2 = float(np.max(tau)) ** 2
    lo2 = float(np.min(tau)) ** 2

    reference = referenceEigenvalues(c, tau, l, n)
    predictions = {
        "lambda1": hi2 * ((1.0 + 3.0 / n) * l / 4.0 + (1.0 - 1.0 / n) * xiVal),
        "bulk_upper": hi2 * (0.75 * l - xiVal) / n,
        "bulk_lower": lo2 * (0.75 * l - xiVal) / n,
        "kappa": 1.0 + n / 3.0 + (16.0 / 9.0) * n * xiVal / (l - 4.0 * xiVal / 3.0),
    }
    residuals = {
        "lambda1": float(eig[0]) - predictions["lambda1"],
        "bulk_upper": float(eig[1]) - predictions["bulk_upper"],
        "bulk_lower": float(eig[-1]) - predictions["bulk_lower"],
        "kappa": kappa - predictions["kappa"],
        "top_reference": float(eig[0]) - reference.top,
        "bulk_reference": float(eig[1]) - reference.bulk,
    }

    if n <= MAX_TILDE_N:
        checks = distanceSpectrumChecks(params, d, l)
    else:
        logger.warning("[Spectral] n=%d > %d 이라 W̄_l 부등식 검사를 건너뜁니다.", n, MAX_TILDE_N)
        checks = []

    wRef = solveW(params, d, referenceDepth) if referenceDepth else None

    logger.info(
        "[Spectral] report n=%d l=%d delta=%.6g kappa=%.8g W=%.8g c=%.6g",
        n, l, params.delta, kappa, W, c,
    )
    return SpectralReport(
        n=n,
        depth=l,
        multiplicity=ml,
        a=params.a,
        b=params.b,
        delta=params.delta,
        eigenvalues=[float(v) for v in eig],
        kappa=kappa,
        xi=xiVal,
        W=W,
        W_reference=wRef,
        c=c,
        reference=reference,
        predictions=predictions,
        residuals=residuals,
        rank_one_gap=_rankOneGap(K.block, tau, c, l, float(eig[0])),
        checks=checks,
        in_regime=reference.in_regime,
    )


__all__ = [
    "BracketingError",
    "xi",
    "mixingCoefficient",
    "solveW",
    "referenceEigenvalues",
    "kappaLimit",
    "kernelSpectrum",
    "theoremReport",
]
