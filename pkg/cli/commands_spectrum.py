# cli/commands_spectrum.py

import logging
from typing import Annotated, Optional

import typer
from rich.table import Table

from cli.common import (
    AOption,
    BOption,
    BiasOption,
    DatasetOption,
    DeltaGridOption,
    DimOption,
    MlOption,
    NOption,
    OutOption,
    SeedOption,
    WorkersOption,
    buildConfig,
    finish,
    guardedRun,
    outputPath,
    resolvePairs,
)
from cli.config import Config
from cli.extensions import app, console
from cli.writers import writeCsv, writeJson, writeSweepCurves
from services.maps.activation import CANONICAL_DELTA_GRID
from services.schemas.runSchemas import CommandName, OutputFormat
from services.schemas.spectralSchemas import SpectralReport
from services.spectral.theoremQuantities import kappaLimit
from services.spectrumService import runSpectrum
from services.sweepService import runDepthSweep

logger = logging.getLogger(__name__)

SPECTRUM_COLUMNS = ("l", "kappa", "lambda1", "lambda_bulk_max", "lambda_min", "xi", "W", "c")


def _spectrumRow(report: SpectralReport) -> tuple:
    eig = report.eigenvalues
    return (report.depth, report.kappa, eig[0], eig[1], eig[-1], report.xi, report.W, report.c)


# ------------------------------------------------------------------
# spectrum
# 한 데이터셋·한 깊이의 K̄ 스펙트럼 보고서 (JSON 전체 또는 CSV 한 행)
# W̄_l 부등식이 하나라도 깨지면 종료코드 1
# ------------------------------------------------------------------
@app.command("spectrum")
def spectrum(
    a: AOption = None,
    b: BOption = None,
    n: NOption = Config.N,
    dim: DimOption = Config.DIM,
    depth: Annotated[int, typer.Option("--depth", help="깊이 l")] = Config.DEPTH,
    ml: MlOption = 1,
    seed: SeedOption = Config.SEED,
    bias: BiasOption = None,
    dataset: DatasetOption = None,
    reference_depth: Annotated[
        Optional[int], typer.Option("--reference-depth", help="W drift 를 비교할 깊이")
    ] = None,
    kernel_out: Annotated[
        Optional[str], typer.Option("--kernel-out", help="K̄ block 을 저장할 CSV 경로")
    ] = None,
    out: OutOption = None,
    fmt: Annotated[OutputFormat, typer.Option("--format", help="json | csv")] = OutputFormat.JSON,
) -> None:
    """K̄ 고유값, κ, 선행차수 예측과 잔차, 정확한 부등식 검사"""
    command = CommandName.SPECTRUM
    pairs = resolvePairs(a, b, False, ((1.0, 1.0),))
    config = buildConfig(
        command,
        pairs=pairs,
        n=n,
        dim=dim,
        depth=depth,
        ml=ml,
        seed=seed,
        bias=bias,
        dataset=dataset,
        reference_depth=reference_depth,
        kernel_output=kernel_out,
        output=out,
        format=fmt,
    )

    with guardedRun(command):
        report = runSpectrum(config)
        if config.format is OutputFormat.CSV:
            writeCsv(SPECTRUM_COLUMNS, [_spectrumRow(report)], config.output)
        else:
            writeJson(config, "report", report, config.output)

    table = Table(title=f"spectrum (n={report.n}, l={report.depth}, Δ_φ={report.delta:.4g})")
    table.add_column("quantity")
    table.add_column("value")
    table.add_column("prediction")
    table.add_row("λ₁", f"{report.eigenvalues[0]:.8g}", f"{report.predictions['lambda1']:.8g}")
    table.add_row("λ_n", f"{report.eigenvalues[-1]:.8g}", f"{report.predictions['bulk_lower']:.8g}")
    table.add_row("κ", f"{report.kappa:.8g}", f"{report.predictions['kappa']:.8g}")
    table.add_row("c", f"{report.c:.6g}", "in (0,1)" if report.in_regime else "[red]out of regime[/red]")
    console.print(table)
    for ch in report.checks:
        if not ch.passed:
            tag = "[red]FAIL[/red]" if ch.asserted else "[yellow]report[/yellow]"
            console.print(f"{tag} {ch.name} k={ch.layer}: {ch.lhs:.8g} > {ch.rhs:.8g}")

    finish(command, report.passed)


# ------------------------------------------------------------------
# sweep-depth
# Δ_φ 마다 l ∈ [depth, depth-max] 의 평균 κ(K̄) → kappa_delta_<Δ>.csv (Step,Value)
# ------------------------------------------------------------------
@app.command("sweep-depth")
def sweepDepth(
    a: AOption = None,
    b: BOption = None,
    delta_grid: DeltaGridOption = False,
    n: NOption = Config.N,
    dim: DimOption = Config.DIM,
    depth: Annotated[int, typer.Option("--depth", help="시작 깊이")] = Config.DEPTH_MIN,
    depth_max: Annotated[int, typer.Option("--depth-max", help="마지막 깊이")] = Config.DEPTH_MAX,
    seeds: Annotated[int, typer.Option("--seeds", help="데이터셋 개수 (stream 0..seeds-1)")] = Config.SEEDS,
    seed: SeedOption = Config.SEED,
    bias: BiasOption = None,
    dataset: DatasetOption = None,
    out: OutOption = None,
    fmt: Annotated[OutputFormat, typer.Option("--format", help="csv (Δ 별 파일) | json")] = OutputFormat.CSV,
    workers: WorkersOption = Config.WORKERS,
) -> None:
    """깊이에 따른 평균 조건수 곡선 (기본 Δ_φ 표준 8쌍)"""
    command = CommandName.SWEEP_DEPTH
    default = tuple((ga, gb) for _, ga, gb in CANONICAL_DELTA_GRID)
    pairs = resolvePairs(a, b, delta_grid, default)
    suffix = "" if fmt is OutputFormat.CSV else None
    config = buildConfig(
        command,
        pairs=pairs,
        n=n,
        dim=dim,
        depth_min=depth,
        depth_max=depth_max,
        seeds=seeds,
        seed=seed,
        bias=bias,
        dataset=dataset,
        output=outputPath(out, command, suffix),
        format=fmt,
        workers=workers,
    )

    with guardedRun(command):
        curves = runDepthSweep(config)
        if config.format is OutputFormat.JSON:
            payload = [
                {
                    "a": c.a,
                    "b": c.b,
                    "delta": c.delta,
                    "depths": c.depths,
                    "kappa_mean": c.kappa_mean,
                    "kappa_std": c.kappa_std,
                }
                for c in curves
            ]
            writeJson(config, "curves", payload, config.output)
        else:
            writeSweepCurves(curves, config.output)

    limit = kappaLimit(config.n)
    table = Table(title=f"sweep-depth (limit 1 + n/3 = {limit:.6g})")
    for col in ("Δ_φ", f"κ(l={config.depth_min})", f"κ(l={config.depth_max})"):
        table.add_column(col)
    for c in curves:
        table.add_row(f"{c.delta:.4g}", f"{c.kappa_mean[0]:.6g}", f"{c.kappa_mean[-1]:.6g}")
    console.print(table)
    logger.info("[CLI] sweep-depth curves=%d", len(curves))
