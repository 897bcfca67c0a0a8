"""
命令分发

每个命令把目标标签解析为目录条目，逐条计算并生成 ReportItem；
单条失败记录在该条目的 error 中，其余条目继续执行。
"""

from __future__ import annotations

import time
from fractions import Fraction
from typing import Any, Callable

import numpy as np

from .config import parse_catalog
from .exceptions import BanachLabError, CatalogError
from .geometry.norms import dual_norm, eval_norm, norm_is_certified, support_point
from .geometry.scalars import format_scalar, parse_scalar
from .ideals import verify_suite
from .models import (
    Catalog,
    CatalogVector,
    Command,
    InequalityReport,
    ReportItem,
    RunConfig,
    RunReport,
    StatePair,
    Verdict,
)
from .numerical import daugavet_defect, numerical_index, numerical_radius, v_delta
from .operators import op_norm
from .slices import determining_falsifier
from .tensor import eps_norm, nuclear_norm_operator, pi_norm

EXIT_OK = 0
EXIT_INPUT_ERROR = 1
EXIT_VIOLATED = 2


def jsonable(value: Any) -> Any:
    """把数组、有理数、复数转为可 JSON 序列化且确定的形式"""
    if isinstance(value, np.ndarray):
        return [jsonable(v) for v in value.tolist()] if value.dtype != object else [jsonable(v) for v in value]
    if isinstance(value, (list, tuple)):
        return [jsonable(v) for v in value]
    if isinstance(value, dict):
        return {str(k): jsonable(v) for k, v in value.items()}
    if isinstance(value, (Fraction, int, np.integer)) and not isinstance(value, bool):
        return format_scalar(Fraction(int(value)) if isinstance(value, np.integer) else Fraction(value))
    if isinstance(value, (complex, np.complexfloating)):
        return [float(value.real), float(value.imag)]
    if isinstance(value, (float, np.floating)):
        return float(value)
    if isinstance(value, StatePair):
        return {"x": jsonable(value.x), "x_star": jsonable(value.x_star), "gap": jsonable(value.gap)}
    return value


def _item(
    command: Command,
    targets: list[str],
    quantity: str,
    value: Any,
    exact: bool,
    witness: Any = None,
    provenance: str = "",
    margin: float | None = None,
    verdict: str | None = None,
) -> ReportItem:
    return ReportItem(
        command=command.value,
        targets=targets,
        quantity=quantity,
        value=None if value is None else float(np.real(value)),
        value_exact=format_scalar(value) if exact and isinstance(value, Fraction) else None,
        flag="exact" if exact else "heuristic",
        margin=margin,
        verdict=verdict,
        witness=jsonable(witness),
        provenance=provenance,
    )


# ---------------------------------------------------------------------------
# 单条目处理
# ---------------------------------------------------------------------------


def _vector(catalog: Catalog, label: str) -> CatalogVector:
    if label not in catalog.vectors:
        raise CatalogError(f"目录中没有向量 '{label}'")
    return catalog.vectors[label]


def _norm(catalog: Catalog, label: str, config: RunConfig) -> list[ReportItem]:
    vector = _vector(catalog, label)
    value = eval_norm(vector.space, vector.coordinates, config.options)
    exact = isinstance(value, Fraction) or norm_is_certified(vector.space, config.options)
    return [_item(config.command, [label], f"‖{label}‖_{vector.space.label}", value, exact,
                  provenance=vector.space.kind.value)]


def _dual(catalog: Catalog, label: str, config: RunConfig) -> list[ReportItem]:
    vector = _vector(catalog, label)
    value = dual_norm(vector.space, vector.coordinates, config.options)
    point, _ = support_point(vector.space, vector.coordinates, config.options)
    exact = isinstance(value, Fraction) or norm_is_certified(vector.space, config.options)
    return [_item(config.command, [label], f"‖{label}‖_{vector.space.label}*", value, exact,
                  witness=point, provenance="support point in the unit ball")]


def _opnorm(catalog: Catalog, label: str, config: RunConfig) -> list[ReportItem]:
    result = op_norm(catalog.operator(label), config.options)
    return [_item(config.command, [label], f"‖{label}‖", result.value, result.exact,
                  witness=result.witness, provenance=result.method)]


def _vradius(catalog: Catalog, label: str, config: RunConfig) -> list[ReportItem]:
    result = numerical_radius(catalog.operator(label), config.options)
    witness = {"state": result.witness, "schedule": [[d, v] for d, v in result.delta_schedule]}
    return [_item(config.command, [label], f"v({label})", result.value, result.exact,
                  witness=witness, provenance=result.method)]


def _vdelta(catalog: Catalog, label: str, config: RunConfig) -> list[ReportItem]:
    T = catalog.operator(label)
    delta = parse_scalar(config.delta)
    value = v_delta(T, delta, options=config.options)
    return [_item(config.command, [label], f"v_{config.delta}({label})", value, isinstance(value, Fraction),
                  witness={"delta": delta})]


def _nindex(catalog: Catalog, label: str, config: RunConfig) -> list[ReportItem]:
    certificate = numerical_index(catalog.space(label), options=config.options)
    witness = {
        "operator": certificate.witness_operator.matrix if certificate.witness_operator is not None else None,
        "witness_value": certificate.witness_value,
        "certified": certificate.certified,
    }
    return [_item(config.command, [label], f"n({label})", certificate.value, certificate.exact,
                  witness=witness, provenance=f"{certificate.method.value}: {certificate.provenance}")]


def _tensor_norm(catalog: Catalog, label: str, config: RunConfig) -> list[ReportItem]:
    if label not in catalog.tensors:
        raise CatalogError(f"目录中没有张量 '{label}'")
    u = catalog.tensors[label]
    pi = pi_norm(u, config.options)
    eps = eps_norm(u, config.options)
    return [
        _item(config.command, [label], f"‖{label}‖_π", pi.value, pi.exact,
              witness={"upper": pi.upper, "lower": pi.lower, "terms": len(pi.decomposition)},
              provenance=pi.method),
        _item(config.command, [label], f"‖{label}‖_ε", eps.value, eps.exact,
              witness={"x_star": eps.left_functional, "y_star": eps.right_functional},
              provenance=eps.method),
    ]


def _nuclear(catalog: Catalog, label: str, config: RunConfig) -> list[ReportItem]:
    result = nuclear_norm_operator(catalog.operator(label), config.options)
    return [_item(config.command, [label], f"N({label})", result.value, result.exact,
                  witness={"upper": result.upper, "lower": result.lower}, provenance=result.method)]


def _daugavet(catalog: Catalog, label: str, config: RunConfig) -> list[ReportItem]:
    result = daugavet_defect(catalog.operator(label), config.options)
    tol = config.options.exact_tol if result.exact else config.options.opt_tol
    holds = float(result.defect) <= tol
    return [_item(
        config.command, [label], f"1+‖{label}‖−‖Id+{label}‖", result.defect, result.exact,
        witness={"sup_re_v": result.sup_re_v, "norm": result.norm, "norm_id_plus": result.norm_id_plus},
        margin=float(result.norm) - float(result.sup_re_v),
        verdict="daugavet" if holds else "not-daugavet",
    )]


def _slice(catalog: Catalog, label: str, config: RunConfig) -> list[ReportItem]:
    if label not in catalog.families:
        raise CatalogError(f"目录中没有切片族 '{label}'")
    family = catalog.families[label]
    verdict = determining_falsifier(
        family.points, family.slices, family.eta, config.options.index_starts, config.options.seed
    )
    exhaustive = verdict.resolution.get("search") == "exhaustive"
    if verdict.found:
        separation = verdict.separation
        return [_item(
            config.command, [label], "分离距离", separation.margin, False,
            witness={"B": verdict.counterexample, "point": separation.point, "functional": separation.functional,
                     "resolution": verdict.resolution},
            provenance=verdict.resolution["search"], margin=separation.margin, verdict="counterexample",
        )]
    return [_item(
        config.command, [label], "分离距离", 0.0, exhaustive, witness={"resolution": verdict.resolution},
        provenance=verdict.resolution["search"], verdict="no-counterexample",
    )]


HANDLERS: dict[Command, Callable[[Catalog, str, RunConfig], list[ReportItem]]] = {
    Command.NORM: _norm,
    Command.DUAL: _dual,
    Command.OPNORM: _opnorm,
    Command.VRADIUS: _vradius,
    Command.VDELTA: _vdelta,
    Command.NINDEX: _nindex,
    Command.TENSOR_NORM: _tensor_norm,
    Command.NUCLEAR: _nuclear,
    Command.DAUGAVET: _daugavet,
    Command.SLICE: _slice,
}


def _default_targets(catalog: Catalog, command: Command) -> list[str]:
    """未指定 --target 时的默认目标"""
    if command in (Command.NORM, Command.DUAL):
        return list(catalog.vectors)
    if command == Command.NINDEX:
        return list(catalog.spaces)
    if command == Command.TENSOR_NORM:
        return list(catalog.tensors)
    if command == Command.SLICE:
        return list(catalog.families)
    if command == Command.VERIFY:
        return catalog.suite or list(catalog.spaces)
    return list(catalog.operators)


def _verify_items(reports: list[InequalityReport]) -> list[ReportItem]:
    items = []
    for report in reports:
        items.append(ReportItem(
            command=Command.VERIFY.value,
            targets=[report.name],
            quantity=report.statement,
            value=report.lhs,
            flag="exact" if report.lhs_exact and report.rhs_exact else "heuristic",
            margin=report.margin,
            verdict=report.verdict.value,
            witness={"rhs": report.rhs, "rhs_exact": report.rhs_exact, "witnesses": report.witnesses},
            provenance=report.note,
        ))
    return items


def run_command(
    config: RunConfig,
    catalog: Catalog | None = None,
    suite_config: dict[str, Any] | None = None,
) -> tuple[int, RunReport]:
    """
    执行一条命令

    Args:
        config: 运行配置
        catalog: 已加载的目录（为空时从 config.catalog_path 加载）
        suite_config: verify 的附加配置（tolerance、transport_samples 等）

    Returns:
        (退出码, 报告)；0 正常，1 输入错误，2 verify 中存在 violated

    Raises:
        CatalogError: 目录无法加载
    """
    started = time.perf_counter()
    catalog = catalog or parse_catalog(config.catalog_path, config.options)
    targets = config.targets or _default_targets(catalog, config.command)
    report = RunReport(
        command=config.command.value,
        targets=targets,
        catalog=str(config.catalog_path),
        seed=hex(config.options.seed),
        options=config.options.model_dump(),
    )
    exit_code = EXIT_OK

    if config.command == Command.VERIFY:
        try:
            spaces = [catalog.space(label) for label in targets]
        except CatalogError as e:
            report.items.append(ReportItem(command=config.command.value, targets=targets, error=str(e)))
            report.wall_time = time.perf_counter() - started
            return EXIT_INPUT_ERROR, report
        merged = {"tolerance": max(config.options.opt_tol, 1e-4)}
        merged.update(suite_config or {})
        reports = verify_suite(spaces, config.options, merged)
        report.items.extend(_verify_items(reports))
        if any(r.verdict == Verdict.VIOLATED for r in reports):
            exit_code = EXIT_VIOLATED
    else:
        handler = HANDLERS[config.command]
        for label in targets:
            try:
                report.items.extend(handler(catalog, label, config))
            except CatalogError as e:
                report.items.append(ReportItem(command=config.command.value, targets=[label], error=str(e)))
                exit_code = EXIT_INPUT_ERROR
            except (BanachLabError, ValueError) as e:
                report.items.append(ReportItem(command=config.command.value, targets=[label], error=str(e)))

    report.wall_time = time.perf_counter() - started
    return exit_code, report
