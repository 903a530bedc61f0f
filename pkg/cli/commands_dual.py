# cli/commands_dual.py

import logging
from typing import Annotated

import typer
from rich.table import Table

from cli.common import (
    AOption,
    BOption,
    DeltaGridOption,
    OutOption,
    buildConfig,
    finish,
    guardedRun,
    resolvePairs,
)
from cli.config import Config
from cli.extensions import app, console
from cli.writers import writeCsv, writeJson
from services.dualCheckService import DUAL_CHECK_PAIRS, runDualCheck
from services.schemas.runSchemas import CommandName, OutputFormat

logger = logging.getLogger(__name__)

DUAL_COLUMNS = ("a", "b", "kind", "max_error", "argmax")


# ------------------------------------------------------------------
# dual-check
# abs / sgn / φ / φ' 의 dual 닫힌 형태 vs 결정적 수치적분
# 최대 오차가 1e-8 을 넘으면 종료코드 1
# ------------------------------------------------------------------
@app.command("dual-check")
def dualCheck(
    a: AOption = None,
    b: BOption = None,
    delta_grid: DeltaGridOption = False,
    order: Annotated[int, typer.Option("--order", help="Gauss 노드 수")] = Config.QUADRATURE_ORDER,
    scheme: Annotated[str, typer.Option("--scheme", help="split | hermite")] = "split",
    out: OutOption = None,
    fmt: Annotated[OutputFormat, typer.Option("--format", help="csv | json")] = OutputFormat.CSV,
) -> None:
    """dual 함수 닫힌 형태를 ρ 격자에서 수치적분과 비교"""
    command = CommandName.DUAL_CHECK
    pairs = resolvePairs(a, b, delta_grid, DUAL_CHECK_PAIRS)
    config = buildConfig(
        command,
        pairs=pairs,
        order=order,
        scheme=scheme,
        output=out,
        format=fmt,
    )

    with guardedRun(command):
        report = runDualCheck(config)
        if config.format is OutputFormat.JSON:
            writeJson(config, "report", report, config.output)
        else:
            rows = [(r.a, r.b, r.kind.value, r.max_error, r.argmax) for r in report.rows]
            writeCsv(DUAL_COLUMNS, rows, config.output)
    logger.info("[CLI] dual-check rows=%d passed=%s", len(report.rows), report.passed)

    table = Table(title=f"dual-check (order={report.order}, tol={report.tolerance:g})")
    for col in ("a", "b", "kind", "max error", "at ρ"):
        table.add_column(col)
    for r in report.rows:
        style = None if r.max_error <= report.tolerance else "red"
        table.add_row(f"{r.a:g}", f"{r.b:g}", r.kind.value, f"{r.max_error:.3g}", f"{r.argmax:.2f}", style=style)
    console.print(table)

    finish(command, report.passed)
