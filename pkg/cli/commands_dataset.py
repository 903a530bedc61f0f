# cli/commands_dataset.py

import logging
from typing import Annotated

import typer

from cli.common import (
    BiasOption,
    DimOption,
    NOption,
    OutOption,
    SeedOption,
    buildConfig,
    guardedRun,
    outputPath,
)
from cli.config import Config
from cli.extensions import app, console
from services.kernel.kernelIO import resolveDataset, saveDataset
from services.schemas.runSchemas import CommandName

logger = logging.getLogger(__name__)


# ------------------------------------------------------------------
# gen-dataset
# 단위구면 표본 → CSV (한 행 한 점) + 같은 이름의 .json 설명자
# ------------------------------------------------------------------
@app.command("gen-dataset")
def genDataset(
    n: NOption = Config.N,
    dim: DimOption = Config.DIM,
    seed: SeedOption = Config.SEED,
    stream: Annotated[int, typer.Option("--stream", help="하위 스트림 (데이터셋 인덱스)")] = 0,
    bias: BiasOption = None,
    out: OutOption = None,
) -> None:
    """단위구면 R^dim 위 n 개 점을 시드 고정으로 뽑아 저장"""
    command = CommandName.GEN_DATASET
    path = outputPath(out, command, ".csv")
    config = buildConfig(
        command,
        n=n,
        dim=dim,
        seed=seed,
        stream=stream,
        bias=bias,
        output=path,
    )

    logger.info("[CLI] gen-dataset seed=%d stream=%d", config.seed, config.stream)
    with guardedRun(command):
        d = resolveDataset(config, stream=config.stream)
        csvPath, jsonPath = saveDataset(d, path)

    console.print(f"[green]dataset[/green] n={d.n} dim={d.dim} → {csvPath} (+ {jsonPath.name})")
