"""
报告渲染器

JSON（按键排序，便于逐字节比较）、CSV 与人类可读格式（屏幕上为 rich 表格，
写文件时用 jinja2 文本模板）。
"""

from __future__ import annotations

import csv
import io
import json
from pathlib import Path

from jinja2 import Environment, FileSystemLoader, Template
from rich.console import Console
from rich.table import Table

from ..models import OutputFormat, RunReport

CSV_COLUMNS = ["command", "targets", "value", "flag", "margin", "verdict", "seed"]


# 默认文本模板
DEFAULT_TEXT_TEMPLATE = """\
banachlab 报告
==============
命令: {{ report.command }}
目标: {{ report.targets | join(', ') or '-' }}
目录: {{ report.catalog }}
种子: {{ report.seed }}
耗时: {{ '%.3f' | format(report.wall_time) }} s

{% for item in report.items -%}
[{{ loop.index }}] {{ item.command }} {{ item.targets | join(', ') }}
{%- if item.error %}
    错误: {{ item.error }}
{%- else %}
    {{ item.quantity or '值' }} = {{ item.value_exact or item.value }} ({{ item.flag }})
{%- if item.margin is not none %}
    margin = {{ item.margin }}{% if item.verdict %}, {{ item.verdict }}{% endif %}
{%- endif %}
{%- if item.provenance %}
    来源: {{ item.provenance }}
{%- endif %}
{%- endif %}

{% endfor -%}
"""


def to_json(report: RunReport) -> str:
    """同一配置与种子下除 wall_time 外逐字节相同"""
    return json.dumps(report.model_dump(mode="json"), sort_keys=True, ensure_ascii=False, indent=2) + "\n"


def to_csv(report: RunReport) -> str:
    buffer = io.StringIO()
    writer = csv.DictWriter(buffer, fieldnames=CSV_COLUMNS, lineterminator="\n")
    writer.writeheader()
    for item in report.items:
        writer.writerow({
            "command": item.command,
            "targets": ",".join(item.targets),
            "value": "" if item.value is None else repr(item.value),
            "flag": "error" if item.error else item.flag,
            "margin": "" if item.margin is None else repr(item.margin),
            "verdict": item.verdict or "",
            "seed": report.seed,
        })
    return buffer.getvalue()


def print_table(report: RunReport, console: Console) -> None:
    """在终端上输出 rich 表格"""
    table = Table(title=f"banachlab {report.command}  (seed {report.seed})")
    table.add_column("#", justify="right", style="dim")
    table.add_column("目标", style="cyan")
    table.add_column("量")
    table.add_column("值", justify="right")
    table.add_column("标记")
    table.add_column("margin", justify="right")
    table.add_column("结论")
    for i, item in enumerate(report.items, 1):
        if item.error:
            table.add_row(str(i), ", ".join(item.targets), item.quantity, "-", "[red]error[/red]", "-", item.error)
            continue
        value = item.value_exact or ("-" if item.value is None else f"{item.value:.10g}")
        flag = "[green]exact[/green]" if item.flag == "exact" else "[yellow]heuristic[/yellow]"
        margin = "-" if item.margin is None else f"{item.margin:.3g}"
        table.add_row(str(i), ", ".join(item.targets), item.quantity, value, flag, margin, item.verdict or "")
    console.print(table)
    console.print(f"[dim]耗时 {report.wall_time:.3f} s[/dim]")


class TextRenderer:
    """
    文本报告渲染器

    将 RunReport 渲染为纯文本，可用自定义 jinja2 模板替换默认模板
    """

    def __init__(
        self,
        template_path: str | Path | None = None,
        template_string: str | None = None,
    ):
        """
        初始化渲染器

        Args:
            template_path: 自定义模板文件路径
            template_string: 自定义模板字符串
        """
        if template_path:
            template_dir = Path(template_path).parent
            self.env = Environment(loader=FileSystemLoader(str(template_dir)))
            self.template = self.env.get_template(Path(template_path).name)
        else:
            self.template = Template(template_string or DEFAULT_TEXT_TEMPLATE)

    def render(self, report: RunReport) -> str:
        return self.template.render(report=report)


def render_report(report: RunReport, output_format: OutputFormat) -> str:
    """按格式渲染为字符串（human 格式使用文本模板）"""
    if output_format == OutputFormat.JSON:
        return to_json(report)
    if output_format == OutputFormat.CSV:
        return to_csv(report)
    return TextRenderer().render(report)


def write_report(
    report: RunReport,
    output_format: OutputFormat,
    output_path: str | Path | None,
    console: Console,
) -> Path | None:
    """
    输出报告

    有 output_path 时写文件并返回路径；否则 json/csv 写到标准输出，human 打印表格。
    """
    if output_path is None:
        if output_format == OutputFormat.HUMAN:
            print_table(report, console)
        else:
            print(render_report(report, output_format), end="")
        return None

    output_path = Path(output_path)
    output_path.parent.mkdir(parents=True, exist_ok=True)
    with open(output_path, "w", encoding="utf-8", newline="") as f:
        f.write(render_report(report, output_format))
    return output_path
