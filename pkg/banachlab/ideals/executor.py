"""
验证流水线执行器
"""

from __future__ import annotations

from collections import Counter
from typing import Any

from rich.console import Console
from rich.panel import Panel

from ..models import InequalityReport, NormedSpace, SolverOptions, SuiteContext, SuiteStep, Verdict


console = Console(stderr=True)


class SuiteExecutor:
    """
    验证流水线执行器

    顺序执行多个 SuiteStep，步骤之间共享数值指数缓存。
    """

    def __init__(self, steps: list[SuiteStep] | None = None):
        self.steps: list[SuiteStep] = steps or []

    def _context(
        self,
        catalog: list[NormedSpace],
        options: SolverOptions | None,
        config: dict[str, Any] | None,
    ) -> SuiteContext:
        return SuiteContext(catalog=catalog, options=options or SolverOptions(), config=dict(config or {}))

    def run(
        self,
        catalog: list[NormedSpace],
        options: SolverOptions | None = None,
        config: dict[str, Any] | None = None,
    ) -> list[InequalityReport]:
        """
        执行整个流水线

        Args:
            catalog: 参与验证的空间
            options: 求解选项
            config: 附加配置（tolerance、budget、transport_samples、estimate_ideals）

        Returns:
            全部不等式报告，顺序与步骤顺序一致
        """
        context = self._context(catalog, options, config)

        console.print(Panel(
            f"[bold]开始执行验证流水线[/bold]\n"
            f"空间: {', '.join(space.label for space in catalog)}\n"
            f"步骤数量: {len(self.steps)}",
            title="banachlab verify",
            border_style="blue",
        ))

        for i, step in enumerate(self.steps, 1):
            console.print(f"\n[bold cyan]═══ 步骤 {i}/{len(self.steps)}: {step.description} ═══[/bold cyan]")

            try:
                context = step.execute(context)
            except Exception as e:
                console.print(f"[bold red]✗ 步骤执行失败: {e}[/bold red]")
                raise

        counts = Counter(report.verdict for report in context.reports)
        border = "red" if counts[Verdict.VIOLATED] else "green"
        console.print(Panel(
            "\n".join(f"{verdict.value}: {counts[verdict]}" for verdict in Verdict),
            title="完成",
            border_style=border,
        ))

        return context.reports

    def run_step(
        self,
        step_name: str,
        catalog: list[NormedSpace],
        options: SolverOptions | None = None,
        config: dict[str, Any] | None = None,
    ) -> list[InequalityReport]:
        """
        只执行指定的单个步骤

        Raises:
            ValueError: 未找到步骤
        """
        context = self._context(catalog, options, config)
        for step in self.steps:
            if step.name == step_name:
                console.print(f"[bold cyan]执行步骤: {step.description}[/bold cyan]")
                return step.execute(context).reports

        raise ValueError(f"未找到步骤: {step_name}")
