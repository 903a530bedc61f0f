# cli/commands_empirical.py

import logging
from typing import Annotated

import typer
from rich.table import Table

from cli.common import (
    AOption,
    BOption,
    BiasOption,
    DatasetOption,
    DimOption,
    MlOption,
    NOption,
    OutOption,
    SeedOption,
    WidthOption,
    WorkersOption,
    buildConfig,
    guardedRun,
    resolvePairs,
)
from cli.config import Config
from cli.extensions import app, console
from cli.writers import writeCsv, writeJson
from services.empiricalService import runEmpirical
from services.schemas.runSchemas import CommandName, OutputFormat

logger = logging.getLogger(__name__)

EMPIRICAL_COLUMNS = ("width", "mean_rel_error", "stderr", "slope_so_far")


# ------------------------------------------------------------------
# empirical
# 유한폭 MLP 의 경험적 NTK 와 극한 K̄ 의 폭별 평균 상대오차
# ------------------------------------------------------------------
@app.command("empirical")
def empirical(
    a: AOption = None,
    b: BOption = None,
    n: NOption = 4,
    dim: DimOption = 8,
    depth: Annotated[int, typer.Option("--depth", help="깊이 l")] = 3,
    ml: MlOption = 1,
    width: WidthOption = None,
    trials: Annotated[int, typer.Option("--trials", help="폭당 시행 수 (>= 3)")] = Config.TRIALS,
    seed: SeedOption = Config.SEED,
    bias: BiasOption = None,
    dataset: DatasetOption = None,
    out: OutOption = None,
    fmt: Annotated[OutputFormat, typer.Option("--format", help="csv | json")] = OutputFormat.CSV,
    workers: WorkersOption = Config.WORKERS,
) -> None:
    """폭 w ∈ --width 마다 경험적 NTK 의 상대오차와 log-log 기울기"""
    command = CommandName.EMPIRICAL
    pairs = resolvePairs(a, b, False, ((1.0, 1.0),))
    config = buildConfig(
        command,
        pairs=pairs,
        n=n,
        dim=dim,
        depth=depth,
        ml=ml,
        widths=list(width) if width else None,
        trials=trials,
        seed=seed,
        bias=bias,
        dataset=dataset,
        output=out,
        format=fmt,
        workers=workers,
    )

    with guardedRun(command):
        rows = runEmpirical(config)
        table = [(r.width, r.mean_rel_error, r.stderr, r.slope_so_far) for r in rows]
        if config.format is OutputFormat.JSON:
            writeJson(config, "rows", [dict(zip(EMPIRICAL_COLUMNS, r)) for r in table], config.output)
        else:
            writeCsv(EMPIRICAL_COLUMNS, table, config.output)

    summary = Table(title=f"empirical (l={config.depth}, trials={config.trials})")
    for col in EMPIRICAL_COLUMNS:
        summary.add_column(col)
    for r in rows:
        summary.add_row(str(r.width), f"{r.mean_rel_error:.4g}", f"{r.stderr:.3g}", f"{r.slope_so_far:.4g}")
    console.print(summary)
    logger.info("[CLI] empirical widths=%d", len(rows))
