"""
配置模块
"""

from .settings import (
    AppConfig,
    catalog_from_dict,
    default_catalog_path,
    load_config,
    parse_catalog,
    parse_seed,
    save_catalog,
    solver_options,
)

__all__ = [
    "AppConfig",
    "catalog_from_dict",
    "default_catalog_path",
    "load_config",
    "parse_catalog",
    "parse_seed",
    "save_catalog",
    "solver_options",
]
