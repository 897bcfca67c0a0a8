"""
BanachLab CLI 命令行入口

提供两个命令：
- run: 对目录中的条目执行一条计算命令并输出报告
- catalog: 列出目录中的条目
"""

from __future__ import annotations

from pathlib import Path
from typing import Optional

import typer
from rich.console import Console
from rich.panel import Panel
from rich.table import Table

from .commands import EXIT_INPUT_ERROR, EXIT_VIOLATED, run_command
from .config import load_config, parse_catalog, parse_seed, solver_options
from .exceptions import BanachLabError
from .models import Catalog, Command, OutputFormat, RunConfig
from .render import write_report


app = typer.Typer(
    name="banachlab",
    help="BanachLab - 有限维 Banach 空间几何计算实验室",
    add_completion=False,
)

console = Console(stderr=True)


def _split_targets(values: list[str] | None) -> list[str]:
    """--target 可重复，也可用逗号分隔"""
    return [part.strip() for value in values or [] for part in value.split(",") if part.strip()]


@app.command("run")
def run(
    command: Command = typer.Option(
        ...,
        "--cmd", "-c",
        help="命令: norm, dual, opnorm, vradius, vdelta, nindex, tensor-norm, nuclear, daugavet, slice, verify",
    ),
    catalog_path: Optional[Path] = typer.Option(
        None,
        "--catalog",
        help="目录文件路径（默认取 BANACHLAB_CATALOG 或内置目录）",
    ),
    targets: Optional[list[str]] = typer.Option(
        None,
        "--target", "-t",
        help="目标标签，可重复或用逗号分隔；缺省时取该命令的全部条目",
    ),
    tol: Optional[float] = typer.Option(
        None,
        "--tol",
        help="优化路径与不等式检验的容差",
    ),
    budget: Optional[int] = typer.Option(
        None,
        "--budget",
        help="多起点预算（数值指数估计的随机起点数）",
    ),
    seed: Optional[str] = typer.Option(
        None,
        "--seed",
        help="十六进制随机种子，例如 0x5EED",
    ),
    output_format: Optional[OutputFormat] = typer.Option(
        None,
        "--format", "-f",
        help="报告格式: json, csv, human",
    ),
    output_file: Optional[Path] = typer.Option(
        None,
        "--out", "-o",
        help="报告输出路径（默认标准输出）",
    ),
    delta: str = typer.Option(
        "1/16",
        "--delta",
        help="vdelta 使用的 δ，可写成有理数 '1/16'",
    ),
    env_file: Optional[Path] = typer.Option(
        None,
        "--env", "-e",
        help=".env 配置文件路径",
    ),
) -> None:
    """
    执行一条计算命令

    示例:
        banachlab run --cmd nindex --target linf2
        banachlab run --cmd verify --target l12,linf2,l22 --format human
    """
    config = load_config(env_file)
    options = solver_options(config)
    try:
        if seed is not None:
            options = options.model_copy(update={"seed": parse_seed(seed)})
        if tol is not None:
            if tol <= 0:
                raise ValueError("--tol 必须为正数")
            options = options.model_copy(update={"opt_tol": tol})
        options = options.with_budget(budget)
    except ValueError as e:
        console.print(f"[red]✗ 参数错误: {e}[/red]")
        raise typer.Exit(code=EXIT_INPUT_ERROR)

    run_config = RunConfig(
        catalog_path=catalog_path or config.catalog_path,
        command=command,
        targets=_split_targets(targets),
        options=options,
        delta=delta,
        output_format=output_format or config.output_format,
        output_path=output_file,
    )
    suite_config = {"tolerance": tol} if tol is not None else None
    if budget is not None:
        suite_config = {**(suite_config or {}), "budget": budget}

    console.print(f"[dim]目录: {run_config.catalog_path}  种子: {hex(options.seed)}[/dim]")
    try:
        exit_code, report = run_command(run_config, suite_config=suite_config)
    except BanachLabError as e:
        console.print(f"[red]✗ {e}[/red]")
        raise typer.Exit(code=EXIT_INPUT_ERROR)

    written = write_report(report, run_config.output_format, run_config.output_path, console)
    if written is not None:
        console.print(f"[green]✓ 报告已保存到: {written}[/green]")

    for item in report.items:
        if item.error:
            console.print(f"[yellow]⚠ {', '.join(item.targets)}: {item.error}[/yellow]")
    if exit_code == EXIT_VIOLATED:
        console.print("[bold red]✗ 存在被违反的不等式[/bold red]")
    raise typer.Exit(code=exit_code)


@app.command("catalog")
def catalog(
    catalog_path: Optional[Path] = typer.Option(
        None,
        "--catalog",
        help="目录文件路径",
    ),
    env_file: Optional[Path] = typer.Option(
        None,
        "--env", "-e",
        help=".env 配置文件路径",
    ),
) -> None:
    """
    列出目录中的空间、算子、向量、张量与切片族
    """
    config = load_config(env_file)
    path = catalog_path or config.catalog_path
    try:
        loaded = parse_catalog(path, solver_options(config))
    except BanachLabError as e:
        console.print(f"[red]✗ {e}[/red]")
        raise typer.Exit(code=EXIT_INPUT_ERROR)

    console.print(Panel(
        f"[bold]{path}[/bold]\n"
        f"条目数量: {len(loaded.labels())}",
        title="目录",
        border_style="blue",
    ))
    display_catalog(loaded)


def display_catalog(loaded: Catalog) -> None:
    """显示目录条目"""
    table = Table(title="目录条目", show_header=True)
    table.add_column("标签", style="cyan")
    table.add_column("类别")
    table.add_column("描述")
    table.add_column("维数", justify="right")

    for label, space in loaded.spaces.items():
        suffix = " [green](suite)[/green]" if label in loaded.suite else ""
        table.add_row(label, "space", space.describe() + suffix, str(space.dim))
    for label, T in loaded.operators.items():
        table.add_row(label, "operator", f"{T.domain.label} → {T.codomain.label}", f"{T.codomain.dim}×{T.domain.dim}")
    for label, vector in loaded.vectors.items():
        table.add_row(label, "vector", vector.space.label, str(vector.space.dim))
    for label, u in loaded.tensors.items():
        table.add_row(label, "tensor", f"{u.left.label} ⊗ {u.right.label}", f"{u.left.dim}×{u.right.dim}")
    for label, family in loaded.families.items():
        table.add_row(label, "family", f"{len(family.slices)} 个切片", str(len(family.points)))

    console.print(table)


@app.callback()
def main() -> None:
    """
    BanachLab - 有限维 Banach 空间几何计算实验室

    数值域、数值半径、数值指数、张量范数与算子理想不等式的精确/启发式计算
    """


if __name__ == "__main__":
    app()
