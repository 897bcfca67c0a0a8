"""
配置管理模块
"""

from __future__ import annotations

import math
import os
from pathlib import Path
from typing import Any, Callable

import numpy as np
import yaml
from dotenv import load_dotenv
from pydantic import BaseModel, Field
from rich.console import Console

from ..exceptions import BanachLabError, CatalogError
from ..geometry.norms import ball_vertices, dual_space
from ..geometry.scalars import as_matrix, as_vector, format_scalar, parse_scalar
from ..geometry.spaces import lp_space, polyhedral_space, weighted_euclidean_space
from ..models import (
    Catalog,
    CatalogVector,
    NormedSpace,
    NormKind,
    OutputFormat,
    SliceFamily,
    SliceSpec,
    SolverOptions,
    TensorElement,
)
from ..operators import make_operator, operator_space
from ..tensor import tensor_space

console = Console(stderr=True)

DEFAULT_CATALOG = Path(__file__).resolve().parent.parent / "data" / "default_catalog.yaml"

# 各类条目允许的字段
SPACE_KEYS = {"label", "kind", "dim", "p", "field", "weights", "vertices", "facets", "left", "right", "of"}
OPERATOR_KEYS = {"label", "domain", "codomain", "matrix"}
VECTOR_KEYS = {"label", "space", "coordinates"}
TENSOR_KEYS = {"label", "left", "right", "coefficients"}
FAMILY_KEYS = {"label", "points", "ball", "slices", "eta"}
SECTIONS = {"spaces", "operators", "vectors", "tensors", "families", "suite"}


class AppConfig(BaseModel):
    """应用配置"""
    catalog_path: Path = Field(default=DEFAULT_CATALOG, description="默认目录文件")
    exact_tol: float = Field(default=1e-9, description="精确路径容差")
    opt_tol: float = Field(default=1e-6, description="优化路径容差")
    schedule_tol: float = Field(default=1e-7, description="δ 序列停止容差")
    seed: int = Field(default=0x5EED, description="随机种子")
    starts: int = Field(default=64, description="多起点个数")
    iterations: int = Field(default=500, description="单次局部优化迭代上限")
    index_starts: int = Field(default=256, description="数值指数估计的多起点个数")
    index_iterations: int = Field(default=1000, description="数值指数估计的迭代上限")

    # 维数保护阈值
    operator_space_dim: int = Field(default=16)
    tensor_dim: int = Field(default=16)
    polytope_dim: int = Field(default=8)
    exact_index_dim: int = Field(default=9)

    output_format: OutputFormat = Field(default=OutputFormat.JSON, description="默认报告格式")


def parse_seed(value: str | int) -> int:
    """'0x5EED'、'5eed' 或整数"""
    if isinstance(value, int):
        return value
    text = str(value).strip().lower()
    try:
        return int(text, 16)
    except ValueError as e:
        raise ValueError(f"种子必须是十六进制整数: {value!r}") from e


def load_config(env_file: str | Path | None = None) -> AppConfig:
    """
    从环境变量加载配置

    Args:
        env_file: .env 文件路径，默认为当前目录的 .env

    Returns:
        AppConfig 实例
    """
    if env_file:
        load_dotenv(env_file)
    else:
        load_dotenv()

    return AppConfig(
        catalog_path=Path(os.getenv("BANACHLAB_CATALOG", str(DEFAULT_CATALOG))),
        exact_tol=float(os.getenv("BANACHLAB_EXACT_TOL", "1e-9")),
        opt_tol=float(os.getenv("BANACHLAB_OPT_TOL", "1e-6")),
        schedule_tol=float(os.getenv("BANACHLAB_SCHEDULE_TOL", "1e-7")),
        seed=parse_seed(os.getenv("BANACHLAB_SEED", "0x5EED")),
        starts=int(os.getenv("BANACHLAB_STARTS", "64")),
        iterations=int(os.getenv("BANACHLAB_ITERATIONS", "500")),
        index_starts=int(os.getenv("BANACHLAB_INDEX_STARTS", "256")),
        index_iterations=int(os.getenv("BANACHLAB_INDEX_ITERATIONS", "1000")),
        operator_space_dim=int(os.getenv("BANACHLAB_OPERATOR_DIM", "16")),
        tensor_dim=int(os.getenv("BANACHLAB_TENSOR_DIM", "16")),
        polytope_dim=int(os.getenv("BANACHLAB_POLYTOPE_DIM", "8")),
        exact_index_dim=int(os.getenv("BANACHLAB_EXACT_INDEX_DIM", "9")),
        output_format=OutputFormat(os.getenv("BANACHLAB_FORMAT", "json")),
    )


def solver_options(config: AppConfig) -> SolverOptions:
    """由应用配置构造求解选项"""
    return SolverOptions(
        exact_tol=config.exact_tol,
        opt_tol=config.opt_tol,
        schedule_tol=config.schedule_tol,
        seed=config.seed,
        starts=config.starts,
        iterations=config.iterations,
        index_starts=config.index_starts,
        index_iterations=config.index_iterations,
        operator_space_dim=config.operator_space_dim,
        tensor_dim=config.tensor_dim,
        polytope_dim=config.polytope_dim,
        exact_index_dim=config.exact_index_dim,
    )


def default_catalog_path() -> Path:
    return DEFAULT_CATALOG


# ---------------------------------------------------------------------------
# 目录解析
# ---------------------------------------------------------------------------


def _require(entry: dict[str, Any], key: str) -> Any:
    if key not in entry:
        raise ValueError(f"缺少字段 '{key}'")
    return entry[key]


def _lookup(table: dict[str, Any], label: Any, what: str) -> Any:
    if label not in table:
        raise ValueError(f"引用了未定义的{what} '{label}'")
    return table[label]


def _parse_space(entry: dict[str, Any], spaces: dict[str, NormedSpace], options: SolverOptions) -> NormedSpace:
    label = str(_require(entry, "label"))
    kind = NormKind(_require(entry, "kind"))
    field = entry.get("field", "real")
    if kind == NormKind.LP:
        space = lp_space(int(_require(entry, "dim")), _require(entry, "p"), field, label)
    elif kind == NormKind.EUCLIDEAN_WEIGHTED:
        space = weighted_euclidean_space([float(parse_scalar(w)) for w in _require(entry, "weights")], field, label)
    elif kind == NormKind.POLYHEDRAL:
        space = polyhedral_space(entry.get("vertices"), entry.get("facets"), label)
    elif kind in (NormKind.TENSOR_PI, NormKind.TENSOR_EPS):
        left = _lookup(spaces, _require(entry, "left"), "空间")
        right = _lookup(spaces, _require(entry, "right"), "空间")
        space = tensor_space(left, right, kind, options).model_copy(update={"label": label})
    elif kind == NormKind.OPERATOR_SPACE:
        left = _lookup(spaces, _require(entry, "left"), "空间")
        right = _lookup(spaces, _require(entry, "right"), "空间")
        space = operator_space(left, right, options).model_copy(update={"label": label})
    else:
        predual = _lookup(spaces, _require(entry, "of"), "空间")
        space = dual_space(predual).model_copy(update={"label": label})
    if "dim" in entry and int(entry["dim"]) != space.dim:
        raise ValueError(f"声明的维数 {entry['dim']} 与实际维数 {space.dim} 不符")
    return space


def _parse_vector(values: Any, space: NormedSpace) -> np.ndarray:
    vector = as_vector(values)
    if vector.shape != (space.dim,):
        raise ValueError(f"坐标个数 {len(vector)} 与空间 {space.label} 的维数 {space.dim} 不符")
    return vector


def _parse_family(entry: dict[str, Any], spaces: dict[str, NormedSpace]) -> SliceFamily:
    label = str(_require(entry, "label"))
    ball = None
    if "ball" in entry:
        ball = _lookup(spaces, entry["ball"], "空间")
        points = [np.array(v, dtype=object) for v in ball_vertices(ball)]
    else:
        points = [as_vector(p) for p in _require(entry, "points")]
    if not points:
        raise ValueError("点集为空")
    slices = []
    for item in entry.get("slices", []):
        functional = as_vector(_require(item, "functional"))
        if len(functional) != len(points[0]):
            raise ValueError("切片泛函的维数与点集不符")
        slices.append(SliceSpec(points=points, functional=functional, depth=parse_scalar(_require(item, "depth"))))
    return SliceFamily(label=label, points=points, ball=ball, slices=slices, eta=float(entry.get("eta", 1e-6)))


def _entries(data: dict[str, Any], section: str) -> list[dict[str, Any]]:
    entries = data.get(section) or []
    if not isinstance(entries, list):
        raise CatalogError(f"目录段 '{section}' 必须是列表")
    return entries


def _parse_section(
    data: dict[str, Any],
    section: str,
    allowed: set[str],
    builder: Callable[[dict[str, Any]], Any],
    table: dict[str, Any],
    labels: set[str],
    warnings: list[str],
) -> None:
    """逐条解析，错误信息带上段名、序号和标签"""
    for i, entry in enumerate(_entries(data, section)):
        label = entry.get("label", "?") if isinstance(entry, dict) else "?"
        where = f"{section}[{i}] '{label}'"
        if not isinstance(entry, dict):
            raise CatalogError(f"{where}: 条目必须是映射")
        if label in labels:
            raise CatalogError(f"{where}: 标签重复")
        unknown = sorted(set(entry) - allowed)
        if unknown:
            warnings.append(f"{where}: 忽略未知字段 {', '.join(unknown)}")
        try:
            table[str(label)] = builder(entry)
        except (BanachLabError, ValueError, TypeError, KeyError) as e:
            raise CatalogError(f"{where}: {e}") from e
        labels.add(str(label))


def catalog_from_dict(data: dict[str, Any], options: SolverOptions | None = None) -> Catalog:
    """
    由已解析的 YAML/JSON 数据构造目录；所有范数几何约束在此处检查

    Raises:
        CatalogError: 格式错误，信息中包含出错条目
    """
    options = options or SolverOptions()
    if not isinstance(data, dict):
        raise CatalogError("目录顶层必须是映射")
    catalog = Catalog()
    warnings: list[str] = []
    for section in sorted(set(data) - SECTIONS):
        warnings.append(f"忽略未知目录段 '{section}'")
    labels: set[str] = set()
    spaces = catalog.spaces

    _parse_section(data, "spaces", SPACE_KEYS, lambda e: _parse_space(e, spaces, options), spaces, labels, warnings)
    _parse_section(
        data, "operators", OPERATOR_KEYS,
        lambda e: make_operator(
            as_matrix(_require(e, "matrix")),
            _lookup(spaces, _require(e, "domain"), "空间"),
            _lookup(spaces, e.get("codomain", e["domain"]), "空间"),
            label=str(e["label"]),
        ),
        catalog.operators, labels, warnings,
    )
    _parse_section(
        data, "vectors", VECTOR_KEYS,
        lambda e: CatalogVector(
            label=str(e["label"]),
            space=_lookup(spaces, _require(e, "space"), "空间"),
            coordinates=_parse_vector(_require(e, "coordinates"), spaces[e["space"]]),
        ),
        catalog.vectors, labels, warnings,
    )
    _parse_section(
        data, "tensors", TENSOR_KEYS,
        lambda e: TensorElement(
            coefficients=as_matrix(_require(e, "coefficients")),
            left=_lookup(spaces, _require(e, "left"), "空间"),
            right=_lookup(spaces, _require(e, "right"), "空间"),
        ),
        catalog.tensors, labels, warnings,
    )
    _parse_section(data, "families", FAMILY_KEYS, lambda e: _parse_family(e, spaces), catalog.families, labels, warnings)

    suite = data.get("suite") or []
    for label in suite:
        if label not in spaces:
            raise CatalogError(f"suite: 引用了未定义的空间 '{label}'")
    catalog.suite = [str(label) for label in suite]
    catalog.warnings = warnings
    return catalog


def parse_catalog(path: str | Path, options: SolverOptions | None = None) -> Catalog:
    """
    从 YAML（或 JSON）文件加载目录

    Args:
        path: 目录文件路径
        options: 求解选项（张量 / 算子空间的维数保护）

    Returns:
        Catalog 实例

    Raises:
        CatalogError: 文件不存在、YAML 解析失败或条目不合法
    """
    path = Path(path)
    if not path.exists():
        raise CatalogError(f"目录文件不存在: {path}")
    with open(path, "r", encoding="utf-8") as f:
        try:
            data = yaml.safe_load(f)
        except yaml.YAMLError as e:
            raise CatalogError(f"{path}: YAML 解析失败: {e}") from e

    catalog = catalog_from_dict(data or {}, options)
    catalog.source = path
    for warning in catalog.warnings:
        console.print(f"[yellow]⚠ {warning}[/yellow]")
    return catalog


# ---------------------------------------------------------------------------
# 目录保存
# ---------------------------------------------------------------------------


def _scalar_out(value: Any) -> Any:
    """Fraction 写成 'p/q' 字符串，复数写成字符串"""
    if isinstance(value, (complex, np.complexfloating)):
        return str(complex(value))
    if isinstance(value, (np.floating, float)):
        return float(value)
    return format_scalar(value)


def _array_out(array: np.ndarray) -> list:
    if array.ndim == 1:
        return [_scalar_out(v) for v in array]
    return [_array_out(row) for row in array]


def _space_to_dict(space: NormedSpace) -> dict[str, Any]:
    d: dict[str, Any] = {"label": space.label, "kind": space.kind.value}
    if not space.is_real:
        d["field"] = space.field.value
    if space.kind == NormKind.LP:
        d["dim"] = space.dim
        d["p"] = "inf" if math.isinf(space.p) else _scalar_out(space.p)
    elif space.kind == NormKind.EUCLIDEAN_WEIGHTED:
        d["weights"] = list(space.weights)
    elif space.kind == NormKind.POLYHEDRAL:
        if space.polyhedral.vertices is not None:
            d["vertices"] = [[format_scalar(c) for c in v] for v in space.polyhedral.vertices]
        if space.polyhedral.facets is not None:
            d["facets"] = [[format_scalar(c) for c in f] for f in space.polyhedral.facets]
    elif space.kind == NormKind.DUAL_OF:
        d["of"] = space.predual.label
    else:
        d["left"] = space.left.label
        d["right"] = space.right.label
    return d


def _collect_spaces(space: NormedSpace, out: dict[str, NormedSpace]) -> None:
    """依赖的因子空间排在前面"""
    for child in (space.left, space.right, space.predual):
        if child is not None:
            _collect_spaces(child, out)
    out.setdefault(space.label, space)


def save_catalog(catalog: Catalog, file_path: str | Path) -> None:
    """
    将目录保存到 YAML 文件；有理数写成 'p/q'，重新加载后精确相等

    Args:
        catalog: Catalog 实例
        file_path: 输出文件路径
    """
    spaces: dict[str, NormedSpace] = {}
    for space in catalog.spaces.values():
        _collect_spaces(space, spaces)

    data: dict[str, Any] = {"spaces": [_space_to_dict(s) for s in spaces.values()]}
    if catalog.operators:
        data["operators"] = [
            {
                "label": label,
                "domain": T.domain.label,
                "codomain": T.codomain.label,
                "matrix": _array_out(T.matrix),
            }
            for label, T in catalog.operators.items()
        ]
    if catalog.vectors:
        data["vectors"] = [
            {"label": label, "space": v.space.label, "coordinates": _array_out(v.coordinates)}
            for label, v in catalog.vectors.items()
        ]
    if catalog.tensors:
        data["tensors"] = [
            {"label": label, "left": u.left.label, "right": u.right.label, "coefficients": _array_out(u.coefficients)}
            for label, u in catalog.tensors.items()
        ]
    if catalog.families:
        families = []
        for label, family in catalog.families.items():
            d: dict[str, Any] = {"label": label, "eta": family.eta}
            if family.ball is not None:
                d["ball"] = family.ball.label
            else:
                d["points"] = [_array_out(np.asarray(p)) for p in family.points]
            d["slices"] = [
                {"functional": _array_out(np.asarray(s.functional)), "depth": _scalar_out(s.depth)}
                for s in family.slices
            ]
            families.append(d)
        data["families"] = families
    if catalog.suite:
        data["suite"] = list(catalog.suite)

    with open(file_path, "w", encoding="utf-8") as f:
        yaml.dump(data, f, allow_unicode=True, default_flow_style=False, sort_keys=False)
