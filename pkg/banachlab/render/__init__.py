"""
报告渲染模块
"""

from .report import TextRenderer, print_table, render_report, to_csv, to_json, write_report

__all__ = [
    "TextRenderer",
    "print_table",
    "render_report",
    "to_csv",
    "to_json",
    "write_report",
]
