# cli/commands_maps.py

import logging
from typing import Annotated

import numpy as np
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
from services.boundService import runBoundVerification
from services.maps.activation import CANONICAL_DELTA_GRID, makeActivation
from services.maps.cosineMaps import rhoMap, rhoPrime, zeta, zetaPrime
from services.maps.inverseDistance import omega, omegaPrime
from services.maps.mapIteration import iterate
from services.schemas.runSchemas import CommandName, OutputFormat

logger = logging.getLogger(__name__)

MAP_COLUMNS = (
    "a", "b", "delta", "rho", "rho_map", "rho_prime",
    "z", "zeta", "zeta_prime", "w", "omega", "omega_prime", "u_l",
)


def _mapRows(a: float, b: float, depth: int) -> list[tuple]:
    params = makeActivation(a, b)
    delta = params.delta
    rho = np.arange(-99, 100) / 100.0
    z = 0.5 * (1.0 - rho)
    w = 1.0 / np.sqrt(z)
    uL = iterate(delta, rho, depth).u[-1]
    cols = (
        rho,
        rhoMap(delta, rho),
        rhoPrime(delta, rho),
        z,
        zeta(delta, z),
        zetaPrime(delta, z),
        w,
        omega(delta, w),
        omegaPrime(delta, w),
        uL,
    )
    return [(a, b, delta) + tuple(float(c[i]) for c in cols) for i in range(rho.size)]


# ------------------------------------------------------------------
# eval-maps
# ρ ∈ {-0.99, ..., 0.99} 에서 ϱ, ϱ', ζ, ζ', ω, ω' 와 깊이 l 의 u_l
# ------------------------------------------------------------------
@app.command("eval-maps")
def evalMaps(
    a: AOption = None,
    b: BOption = None,
    delta_grid: DeltaGridOption = False,
    depth: Annotated[int, typer.Option("--depth", help="u_l 을 계산할 깊이 l")] = Config.DEPTH,
    out: OutOption = None,
    fmt: Annotated[OutputFormat, typer.Option("--format", help="csv | json")] = OutputFormat.CSV,
) -> None:
    """스칼라 사상 값 표 (ρ 격자, 쌍마다)"""
    command = CommandName.EVAL_MAPS
    pairs = resolvePairs(a, b, delta_grid, ((1.0, 1.0),))
    config = buildConfig(command, pairs=pairs, depth=depth, output=out, format=fmt)

    with guardedRun(command):
        rows = [row for pa, pb in config.pairs for row in _mapRows(pa, pb, config.depth)]
        if config.format is OutputFormat.JSON:
            records = [dict(zip(MAP_COLUMNS, r)) for r in rows]
            writeJson(config, "rows", records, config.output)
        else:
            writeCsv(MAP_COLUMNS, rows, config.output)
    logger.info("[CLI] eval-maps rows=%d", len(rows))


# ------------------------------------------------------------------
# verify-bounds
# 전파 추정 편차 plateau + u_k 상·하한. 기본은 Δ_φ 표준 8쌍.
# ------------------------------------------------------------------
@app.command("verify-bounds")
def verifyBounds(
    a: AOption = None,
    b: BOption = None,
    delta_grid: DeltaGridOption = False,
    k_max: Annotated[int, typer.Option("--k-max", help="전파 편차 검사 최대 층")] = Config.K_MAX,
    sandwich_k_max: Annotated[
        int, typer.Option("--sandwich-k-max", help="u_k 상·하한 검사 최대 층")
    ] = Config.SANDWICH_K_MAX,
    out: OutOption = None,
) -> None:
    """전파 편차와 u_k 상·하한 검사 (위반 시 종료코드 1)"""
    command = CommandName.VERIFY_BOUNDS
    default = tuple((ga, gb) for _, ga, gb in CANONICAL_DELTA_GRID)
    pairs = resolvePairs(a, b, delta_grid, default)
    config = buildConfig(
        command,
        pairs=pairs,
        k_max=k_max,
        sandwich_k_max=sandwich_k_max,
        output=out,
        format=OutputFormat.JSON,
    )

    with guardedRun(command):
        report = runBoundVerification(config)
        writeJson(config, "report", report, config.output)

    table = Table(title="verify-bounds")
    for col in ("Δ_φ", "upper viol", "lower viol", "c_max", "plateau gap (max)"):
        table.add_column(col)
    for row in report.sandwich:
        gaps = [p.plateau_gap for p in report.propagation if p.delta == row.delta]
        table.add_row(
            f"{row.delta:.4g}",
            str(row.upper_violations),
            str(row.lower_violations),
            f"{row.c_max:.4g}",
            f"{max(gaps):.3g}" if gaps else "-",
        )
    console.print(table)
    for a_, b_ in report.skipped:
        console.print(f"[yellow]Δ_φ = 0 이라 제외:[/yellow] (a={a_:g}, b={b_:g})")

    finish(command, report.passed)
