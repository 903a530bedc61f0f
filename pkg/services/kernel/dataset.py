# services/kernel/dataset.py

"""
dataset.py

functions:
    makeDataset          | 점 행렬로 Dataset 생성 (노름, 비퇴화 판정)
    sampleSphereDataset  | 단위구면 균일 표본 (시드 고정, 퇴화 시 하위 스트림 증가 후 재표본)
    appendBias           | x_i → [x_i, β] 편향 증강
    gramCosines          | ρ̄_1 코사인 행렬 (대각 정확히 1)
    parallelPairs        | |cos| >= 1 - tol 인 (i, j) 목록

설명:
    "평행한 데이터 점이 없다" 는 조건을 |cos| < 1 - EOCNTK_PARALLEL_TOL 로 판정한다.
    반대 방향(cos = -1) 도 평행으로 본다.
"""
from __future__ import annotations

import logging
import os

import numpy as np

from services.schemas.kernelSchemas import Dataset

logger = logging.getLogger(__name__)

PARALLEL_TOL = float(os.getenv("EOCNTK_PARALLEL_TOL", "1e-9"))
MAX_RESAMPLE = 16


class DegenerateDatasetError(ValueError):
    """
    평행/중복 점, 0 노름 점, 재표본 횟수 초과.
    pairs 에 문제가 된 (i, j) 인덱스 (0 노름이면 (i, i)) 를 담는다.
    """

    def __init__(self, message: str, pairs: list[tuple[int, int]] | None = None) -> None:
        super().__init__(message)
        self.pairs = list(pairs or [])


def _cosines(points: np.ndarray, norms: np.ndarray) -> np.ndarray:
    gram = points @ points.T
    cos = gram / np.outer(norms, norms)
    cos = np.clip(cos, -1.0, 1.0)
    np.fill_diagonal(cos, 1.0)
    return cos


def parallelPairs(points: np.ndarray, tol: float = PARALLEL_TOL) -> list[tuple[int, int]]:
    points = np.asarray(points, dtype=float)
    norms = np.linalg.norm(points, axis=1)
    cos = _cosines(points, norms)
    iu, ju = np.triu_indices(points.shape[0], k=1)
    hit = np.abs(cos[iu, ju]) >= 1.0 - tol
    return [(int(i), int(j)) for i, j in zip(iu[hit], ju[hit])]


def makeDataset(
    points,
    parallelTolerance: float = PARALLEL_TOL,
    seed: int | None = None,
    stream: int | None = None,
    bias: float | None = None,
) -> Dataset:
    """
    function: makeDataset
    입력:
        points            : (n, m0) 배열
        parallelTolerance : 평행 판정 허용오차
        seed, stream, bias: 출처 정보 (설명자에 기록)
    출력:
        Dataset

    설명:
        0 노름 점은 코사인이 정의되지 않으므로 바로 DegenerateDatasetError.
        평행 쌍은 허용하되 nondegenerate=False 로 표시한다.
    """
    pts = np.array(points, dtype=float, copy=True)
    if pts.ndim == 1:
        pts = pts[:, None]
    if pts.ndim != 2 or pts.shape[0] < 2:
        raise DegenerateDatasetError(f"점이 2 개 이상인 (n, m0) 행렬이어야 합니다: {pts.shape}")
    if not np.all(np.isfinite(pts)):
        raise DegenerateDatasetError("점 좌표에 유한하지 않은 값이 있습니다.")

    norms = np.linalg.norm(pts, axis=1)
    zero = np.flatnonzero(norms == 0.0)
    if zero.size:
        raise DegenerateDatasetError(
            f"노름이 0 인 점이 있습니다: {zero.tolist()}",
            pairs=[(int(i), int(i)) for i in zero],
        )

    pairs = parallelPairs(pts, parallelTolerance)
    pts.setflags(write=False)
    norms.setflags(write=False)
    return Dataset(
        points=pts,
        norms=norms,
        n=pts.shape[0],
        dim=pts.shape[1],
        parallel_tolerance=parallelTolerance,
        nondegenerate=not pairs,
        seed=seed,
        stream=stream,
        bias=bias,
    )


def sampleSphereDataset(
    n: int,
    dim: int,
    seed: int,
    stream: int = 0,
    parallelTolerance: float = PARALLEL_TOL,
) -> Dataset:
    """
    function: sampleSphereDataset
    입력:
        n, dim : 점 개수 (>= 2), 차원 (>= 2)
        seed   : 기본 시드
        stream : 하위 스트림 (데이터셋 인덱스)
    출력:
        단위노름 Dataset

    설명:
        시도 t 는 SeedSequence([seed, stream, t]) 를 쓴다. 평행 쌍이 나오면 t 를 올려 다시 뽑고
        MAX_RESAMPLE 번 실패하면 DegenerateDatasetError.
    """
    if n < 2 or dim < 2:
        raise ValueError(f"n, dim 은 2 이상이어야 합니다: n={n}, dim={dim}")

    pairs: list[tuple[int, int]] = []
    for attempt in range(MAX_RESAMPLE):
        rng = np.random.default_rng(np.random.SeedSequence([seed, stream, attempt]))
        g = rng.standard_normal((n, dim))
        pts = g / np.linalg.norm(g, axis=1, keepdims=True)
        pairs = parallelPairs(pts, parallelTolerance)
        if not pairs:
            return makeDataset(pts, parallelTolerance, seed=seed, stream=stream)
        logger.warning(
            "[Kernel] 평행 쌍 %s 발견, 재표본 (seed=%d stream=%d attempt=%d)",
            pairs[:3], seed, stream, attempt,
        )
    raise DegenerateDatasetError(
        f"{MAX_RESAMPLE} 번 재표본 후에도 평행 쌍이 남았습니다.",
        pairs=pairs,
    )


def appendBias(d: Dataset, beta: float) -> Dataset:
    """
    function: appendBias
    입력:
        d    : Dataset
        beta : β > 0
    출력:
        차원이 1 늘어난 Dataset, 노름 √(τ² + β²)

    설명:
        평행하지만 서로 다른 점은 증강 후 평행하지 않다.
        같은 점이 반복되면 증강으로도 해결되지 않아 DegenerateDatasetError(pairs).
    """
    if not beta > 0:
        raise ValueError(f"beta 는 양수여야 합니다: {beta}")
    pts = np.hstack([d.points, np.full((d.n, 1), float(beta))])
    pairs = parallelPairs(pts, d.parallel_tolerance)
    if pairs:
        raise DegenerateDatasetError(
            f"편향 증강 후에도 평행한 (중복) 점이 있습니다: {pairs}",
            pairs=pairs,
        )
    return makeDataset(
        pts,
        d.parallel_tolerance,
        seed=d.seed,
        stream=d.stream,
        bias=float(beta),
    )


def gramCosines(d: Dataset, requireNondegenerate: bool = True) -> np.ndarray:
    """
    function: gramCosines
    입력:
        d                    : Dataset
        requireNondegenerate : True 면 평행 쌍이 있을 때 DegenerateDatasetError
    출력:
        (n, n) 대칭 행렬, 대각 1, 항목 [-1, 1]
    """
    if requireNondegenerate and not d.nondegenerate:
        pairs = parallelPairs(d.points, d.parallel_tolerance)
        raise DegenerateDatasetError(f"평행한 점 쌍이 있습니다: {pairs}", pairs=pairs)
    cos = _cosines(d.points, d.norms)
    return 0.5 * (cos + cos.T)


__all__ = [
    "PARALLEL_TOL",
    "DegenerateDatasetError",
    "parallelPairs",
    "makeDataset",
    "sampleSphereDataset",
    "appendBias",
    "gramCosines",
]
