# services/kernel/kernelIO.py

"""
kernelIO.py

functions:
    describeDataset   | Dataset → DatasetDescriptor
    saveDataset       | 점 CSV (한 행 한 점) + 같은 이름의 .json 설명자 저장
    loadDataset       | CSV (+ 있으면 .json 설명자) 로 Dataset 복원
    saveKernel        | KernelMatrix block 을 `# n=<n> l=<l> m_l=<m>` 헤더와 함께 CSV 저장
    loadKernel        | 위 CSV 를 KernelMatrix 로 복원
    resolveDataset    | RunConfig 로 데이터셋 결정 (CSV 가 있으면 읽고, 없으면 구 표본), 편향 증강

helpers:
    _descriptorPath   | data.csv → data.json

설명:
    숫자는 %.12g, UTF-8, LF 로 쓴다. 같은 입력이면 같은 바이트가 나온다.
"""
from __future__ import annotations

import logging
import re
from pathlib import Path

import numpy as np

from services.kernel.dataset import PARALLEL_TOL, appendBias, makeDataset, sampleSphereDataset
from services.schemas.kernelSchemas import Dataset, DatasetDescriptor, KernelMatrix
from services.schemas.runSchemas import RunConfig

logger = logging.getLogger(__name__)

NUMBER_FORMAT = "%.12g"
_KERNEL_HEADER = re.compile(r"#\s*n=(\d+)\s+l=(\d+)\s+m_l=(\d+)")


class KernelFileError(ValueError):
    """CSV 헤더나 모양이 맞지 않는 파일"""
    pass


def _descriptorPath(path: Path) -> Path:
    return path.with_suffix(".json")


def describeDataset(d: Dataset) -> DatasetDescriptor:
    return DatasetDescriptor(
        n=d.n,
        dim=d.dim,
        seed=d.seed,
        stream=d.stream,
        bias=d.bias,
        parallel_tolerance=d.parallel_tolerance,
        nondegenerate=d.nondegenerate,
    )


def saveDataset(d: Dataset, path: str | Path) -> tuple[Path, Path]:
    """
    function: saveDataset
    입력:
        d    : Dataset
        path : CSV 경로
    출력:
        (csv 경로, json 경로)
    """
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    with path.open("w", encoding="utf-8", newline="\n") as f:
        np.savetxt(f, d.points, fmt=NUMBER_FORMAT, delimiter=",")

    jsonPath = _descriptorPath(path)
    jsonPath.write_text(
        describeDataset(d).model_dump_json(indent=2) + "\n",
        encoding="utf-8",
        newline="\n",
    )
    logger.info("[Kernel] dataset 저장: %s (n=%d dim=%d)", path, d.n, d.dim)
    return path, jsonPath


def loadDataset(path: str | Path) -> Dataset:
    """
    function: loadDataset
    입력:
        path : CSV 경로. 옆에 .json 이 있으면 시드/편향/허용오차를 복원한다.
    출력:
        Dataset
    """
    path = Path(path)
    points = np.loadtxt(path, delimiter=",", ndmin=2, encoding="utf-8")

    jsonPath = _descriptorPath(path)
    if not jsonPath.exists():
        return makeDataset(points, PARALLEL_TOL)

    desc = DatasetDescriptor.model_validate_json(jsonPath.read_text(encoding="utf-8"))
    if desc.n != points.shape[0] or desc.dim != points.shape[1]:
        raise KernelFileError(
            f"설명자 크기 ({desc.n}, {desc.dim}) 와 CSV 크기 {points.shape} 가 다릅니다."
        )
    return makeDataset(
        points,
        desc.parallel_tolerance,
        seed=desc.seed,
        stream=desc.stream,
        bias=desc.bias,
    )


def saveKernel(K: KernelMatrix, path: str | Path) -> Path:
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    n = K.block.shape[0]
    with path.open("w", encoding="utf-8", newline="\n") as f:
        f.write(f"# n={n} l={K.depth} m_l={K.multiplicity}\n")
        np.savetxt(f, K.block, fmt=NUMBER_FORMAT, delimiter=",")
    logger.info("[Kernel] kernel 저장: %s (n=%d l=%d)", path, n, K.depth)
    return path


def loadKernel(path: str | Path) -> KernelMatrix:
    path = Path(path)
    with path.open("r", encoding="utf-8") as f:
        header = f.readline()
        m = _KERNEL_HEADER.match(header.strip())
        if m is None:
            raise KernelFileError(f"커널 CSV 헤더가 올바르지 않습니다: {header.strip()!r}")
        block = np.loadtxt(f, delimiter=",", ndmin=2)

    n, l, ml = (int(g) for g in m.groups())
    if block.shape != (n, n):
        raise KernelFileError(f"헤더 n={n} 과 행렬 모양 {block.shape} 가 다릅니다.")
    block.setflags(write=False)
    return KernelMatrix(block=block, multiplicity=ml, depth=l)


def resolveDataset(config: RunConfig, stream: int = 0) -> Dataset:
    """
    function: resolveDataset
    입력:
        config : RunConfig (dataset, n, dim, seed, bias)
        stream : 데이터셋 인덱스. CSV 를 읽을 때는 쓰지 않는다.
    출력:
        Dataset (bias 가 있으면 증강된 것)
    """
    if config.dataset:
        d = loadDataset(config.dataset)
    else:
        d = sampleSphereDataset(config.n, config.dim, config.seed, stream=stream)
    if config.bias is not None:
        d = appendBias(d, config.bias)
    return d


__all__ = [
    "NUMBER_FORMAT",
    "KernelFileError",
    "describeDataset",
    "saveDataset",
    "loadDataset",
    "saveKernel",
    "loadKernel",
    "resolveDataset",
]
