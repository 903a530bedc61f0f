# services/spectral/jacobiEigen.py

"""
jacobiEigen.py

functions:
    eigenSymmetric   | 대칭 행렬 (또는 (B, n, n) 묶음) 의 고유값, 내림차순
    conditionNumber  | λ₁ / λ_n

helpers:
    _offMask         | 비대각 위치 마스크 (캐시)
    _roundRobin      | n (짝수) 개 인덱스의 서로소 쌍 라운드 (고정 순서)
    _offNorm         | 비대각 Frobenius 노름
    _rotateRound     | 한 라운드의 서로소 회전을 한꺼번에 적용
    _solveChunk      | 한 묶음을 수렴할 때까지 sweep

설명:
    순환 Jacobi. 한 sweep 은 n-1 라운드이고, 각 라운드는 서로 겹치지 않는 n/2 개 (p, q) 쌍을
    동시에 회전한다. 쌍 순서가 고정이라 같은 입력이면 같은 비트가 나온다.
    n 이 홀수면 0 행/열 하나를 덧붙여 짝수로 만들고 마지막에 버린다 (그 쌍은 apq = 0 이라 회전 없음).
    수렴: 비대각 Frobenius 노름 <= JACOBI_TOL · ||M||_F.
"""
from __future__ import annotations

import logging
import os
from concurrent.futures import ThreadPoolExecutor
from functools import lru_cache

import numpy as np

logger = logging.getLogger(__name__)

MAX_SWEEPS = int(os.getenv("EOCNTK_JACOBI_MAX_SWEEPS", "60"))
JACOBI_TOL = 1e-12
SYMMETRY_TOL = 1e-10
ROTATION_FLOOR = 1e-18
CHUNK = 256


class EigenSolverError(ValueError):
    """정사각 대칭 행렬이 아닌 입력"""
    pass


class ConvergenceError(RuntimeError):
    """MAX_SWEEPS 안에 비대각 노름이 허용오차 아래로 내려가지 않음"""
    pass


@lru_cache(maxsize=32)
def _offMask(m: int) -> np.ndarray:
    mask = ~np.eye(m, dtype=bool)
    mask.setflags(write=False)
    return mask


@lru_cache(maxsize=32)
def _roundRobin(m: int) -> tuple[tuple[np.ndarray, np.ndarray], ...]:
    """
    helper: _roundRobin
    원형 배치: 0 은 고정, 나머지 1..m-1 을 한 칸씩 돌린다.
    라운드마다 (P, Q) 인덱스 배열 (길이 m/2, P < Q).
    """
    others = list(range(1, m))
    rounds = []
    for r in range(m - 1):
        arr = [0] + others[r:] + others[:r]
        p = np.array([min(arr[i], arr[m - 1 - i]) for i in range(m // 2)])
        q = np.array([max(arr[i], arr[m - 1 - i]) for i in range(m // 2)])
        p.setflags(write=False)
        q.setflags(write=False)
        rounds.append((p, q))
    return tuple(rounds)


def _offNorm(A: np.ndarray) -> np.ndarray:
    # 비대각 항목을 직접 제곱합 (전체 - 대각 차분은 쓰지 않는다)
    off = np.where(_offMask(A.shape[-1]), A, 0.0)
    return np.sqrt(np.sum(off * off, axis=(-2, -1)))


def _rotateRound(A: np.ndarray, P: np.ndarray, Q: np.ndarray) -> None:
    app = A[:, P, P]
    aqq = A[:, Q, Q]
    apq = A[:, P, Q]

    # |apq| 가 대각 대비 ROTATION_FLOOR 이하면 회전하지 않는다 (theta 가 유한하게 유지됨)
    nz = np.abs(apq) > ROTATION_FLOOR * (np.abs(app) + np.abs(aqq))
    nz &= apq != 0.0
    safe = np.where(nz, apq, 1.0)
    theta = np.where(nz, (aqq - app) / (2.0 * safe), 0.0)
    sgn = np.where(theta >= 0.0, 1.0, -1.0)
    t = np.where(nz, sgn / (np.abs(theta) + np.hypot(theta, 1.0)), 0.0)
    c = 1.0 / np.sqrt(t * t + 1.0)
    s = t * c

    cr = c[:, :, None]
    sr = s[:, :, None]
    rowP = A[:, P, :]
    rowQ = A[:, Q, :]
    A[:, P, :] = cr * rowP - sr * rowQ
    A[:, Q, :] = sr * rowP + cr * rowQ

    cc = c[:, None, :]
    sc = s[:, None, :]
    colP = A[:, :, P]
    colQ = A[:, :, Q]
    A[:, :, P] = cc * colP - sc * colQ
    A[:, :, Q] = sc * colP + cc * colQ

    A[:, P, Q] = 0.0
    A[:, Q, P] = 0.0


def _solveChunk(A: np.ndarray, tol: float, maxSweeps: int) -> np.ndarray:
    """
    helper: _solveChunk
    입력:
        A : (B, m, m) 짝수 m, 대칭. 제자리에서 대각화된다.
    출력:
        (B, m) 대각 원소
    """
    m = A.shape[-1]
    rounds = _roundRobin(m)
    scale = np.sqrt(np.sum(A * A, axis=(-2, -1)))

    for sweep in range(maxSweeps + 1):
        pending = np.flatnonzero(_offNorm(A) > tol * scale)
        if pending.size == 0:
            logger.debug("[Spectral] jacobi 수렴: batch=%d sweeps=%d", A.shape[0], sweep)
            break
        if sweep == maxSweeps:
            raise ConvergenceError(
                f"Jacobi 가 {maxSweeps} sweep 안에 수렴하지 않았습니다 (미수렴 {pending.size} 개)."
            )
        S = A[pending]
        for P, Q in rounds:
            _rotateRound(S, P, Q)
        A[pending] = S

    return np.diagonal(A, axis1=-2, axis2=-1).copy()


def eigenSymmetric(
    M,
    tol: float = JACOBI_TOL,
    maxSweeps: int = MAX_SWEEPS,
    workers: int = 1,
) -> np.ndarray:
    """
    function: eigenSymmetric
    입력:
        M         : (n, n) 또는 (B, n, n) 대칭 행렬
        tol       : 상대 비대각 허용오차
        maxSweeps : sweep 상한
        workers   : 묶음 chunk 를 나눠 돌릴 스레드 수 (결과 무관)
    출력:
        (n,) 또는 (B, n) 내림차순 고유값
    """
    A = np.array(M, dtype=float, copy=True)
    single = A.ndim == 2
    if single:
        A = A[None]
    if A.ndim != 3 or A.shape[-1] != A.shape[-2] or A.shape[-1] == 0:
        raise EigenSolverError(f"정사각 행렬이어야 합니다: {np.shape(M)}")
    if not np.all(np.isfinite(A)):
        raise EigenSolverError("유한하지 않은 항목이 있습니다.")

    mag = np.max(np.abs(A), axis=(-2, -1), keepdims=True)
    asym = np.abs(A - np.swapaxes(A, -1, -2)) > SYMMETRY_TOL * np.maximum(mag, 1.0)
    if np.any(asym):
        bad = np.argwhere(asym)[0]
        raise EigenSolverError(f"대칭 행렬이 아닙니다: 첫 위반 위치 {tuple(int(i) for i in bad)}")
    A = 0.5 * (A + np.swapaxes(A, -1, -2))

    B, n, _ = A.shape
    if n == 1:
        eig = A[:, :, 0]
    else:
        m = n + (n % 2)
        if m != n:
            padded = np.zeros((B, m, m))
            padded[:, :n, :n] = A
            A = padded
        chunks = [A[i:i + CHUNK] for i in range(0, B, CHUNK)]
        with ThreadPoolExecutor(max_workers=max(1, workers)) as pool:
            parts = list(pool.map(lambda ch: _solveChunk(ch, tol, maxSweeps), chunks))
        eig = np.concatenate(parts, axis=0)[:, :n]

    eig = -np.sort(-eig, axis=-1)
    return eig[0] if single else eig


def conditionNumber(eigenvalues) -> np.ndarray | float:
    """내림차순 고유값의 λ₁/λ_n. 마지막 축 기준. λ_n <= 0 이면 EigenSolverError."""
    ev = np.asarray(eigenvalues, dtype=float)
    if np.any(ev[..., -1] <= 0.0):
        bad = int(np.count_nonzero(ev[..., -1] <= 0.0))
        logger.warning("[Spectral] λ_n <= 0 인 행렬 %d 개 (중복 점 또는 퇴화 데이터셋)", bad)
        raise EigenSolverError(f"양의 정부호가 아니라 조건수를 정의할 수 없습니다 (λ_n <= 0: {bad} 개).")
    kappa = ev[..., 0] / ev[..., -1]
    return float(kappa) if np.ndim(kappa) == 0 else kappa


__all__ = [
    "MAX_SWEEPS",
    "JACOBI_TOL",
    "EigenSolverError",
    "ConvergenceError",
    "eigenSymmetric",
    "conditionNumber",
]
