"""
目录与配置测试：默认目录、条目校验、保存/加载与环境变量
"""
from fractions import Fraction

import pytest
import yaml

from banachlab.config import catalog_from_dict, default_catalog_path, load_config, parse_catalog, parse_seed, save_catalog
from banachlab.exceptions import CatalogError
from banachlab.models import NormKind


def test_default_catalog_loads_cleanly():
    catalog = parse_catalog(default_catalog_path())
    assert catalog.warnings == []
    assert {"l12", "linf2", "l22", "l22c", "hex"} <= set(catalog.spaces)
    assert {"swap", "shear_hex"} <= set(catalog.operators)
    assert "square-four" in catalog.families
    assert catalog.suite == ["l12", "linf2", "l22"]
    assert catalog.space("hex").kind == NormKind.POLYHEDRAL


def test_vertex_outside_ball_names_entry():
    data = {
        "spaces": [{
            "label": "bad",
            "kind": "polyhedral",
            "vertices": [[1, 1], [1, -1], [-1, 1], [-1, -1], ["3/2", 0], ["-3/2", 0]],
            "facets": [[1, 0], [-1, 0], [0, 1], [0, -1]],
        }],
    }
    with pytest.raises(CatalogError, match=r"spaces\[0\] 'bad'") as info:
        catalog_from_dict(data)
    assert "3/2" in str(info.value)


def test_interior_vertex_names_entry():
    """只给顶点时同样检查每个点在球面上"""
    data = {
        "spaces": [{
            "label": "bad",
            "kind": "polyhedral",
            "vertices": [[1, 1], [1, -1], [-1, 1], [-1, -1], ["1/2", 0], ["-1/2", 0]],
        }],
    }
    with pytest.raises(CatalogError, match=r"spaces\[0\] 'bad'") as info:
        catalog_from_dict(data)
    assert "1/2" in str(info.value)


def test_unknown_fields_produce_warnings():
    data = {
        "spaces": [{"label": "a", "kind": "lp", "dim": 2, "p": 1, "colour": "red"}],
        "notes": "ignored",
    }
    catalog = catalog_from_dict(data)
    assert len(catalog.warnings) == 2
    assert any("colour" in warning for warning in catalog.warnings)


def test_duplicate_label_rejected():
    data = {"spaces": [{"label": "a", "kind": "lp", "dim": 2, "p": 1}, {"label": "a", "kind": "lp", "dim": 2, "p": 2}]}
    with pytest.raises(CatalogError, match="spaces\\[1\\]"):
        catalog_from_dict(data)


def test_suite_must_reference_spaces():
    with pytest.raises(CatalogError, match="missing"):
        catalog_from_dict({"spaces": [], "suite": ["missing"]})


def test_declared_dimension_checked():
    with pytest.raises(CatalogError):
        catalog_from_dict({"spaces": [
            {"label": "a", "kind": "lp", "dim": 2, "p": 1},
            {"label": "z", "kind": "tensor-pi", "left": "a", "right": "a", "dim": 5},
        ]})


def test_missing_catalog_file(tmp_path):
    with pytest.raises(CatalogError):
        parse_catalog(tmp_path / "absent.yaml")


def test_rational_roundtrip(tmp_path):
    """有理数以 'p/q' 写出，重新加载后精确相等"""
    data = {
        "spaces": [{"label": "linf2", "kind": "lp", "dim": 2, "p": "inf"}],
        "vectors": [{"label": "third", "space": "linf2", "coordinates": ["1/3", 1]}],
        "operators": [{"label": "half", "domain": "linf2", "matrix": [["1/2", 0], [0, 1]]}],
    }
    path = tmp_path / "catalog.yaml"
    save_catalog(catalog_from_dict(data), path)
    text = path.read_text(encoding="utf-8")
    assert "1/3" in text
    assert isinstance(yaml.safe_load(text), dict)

    loaded = parse_catalog(path)
    assert loaded.vectors["third"].coordinates[0] == Fraction(1, 3)
    assert loaded.operator("half").matrix[0, 0] == Fraction(1, 2)


def test_parse_seed():
    assert parse_seed("0x5EED") == 0x5EED
    assert parse_seed("5eed") == 0x5EED
    assert parse_seed(7) == 7
    with pytest.raises(ValueError):
        parse_seed("seed")


def test_load_config_from_env(tmp_path, monkeypatch):
    monkeypatch.setenv("BANACHLAB_SEED", "0x1234")
    monkeypatch.setenv("BANACHLAB_STARTS", "")
    monkeypatch.delenv("BANACHLAB_STARTS")
    env_file = tmp_path / ".env"
    env_file.write_text("BANACHLAB_STARTS=7\nBANACHLAB_SEED=0x9999\n", encoding="utf-8")

    config = load_config(env_file)
    assert config.starts == 7
    # 已有的环境变量优先于 .env
    assert config.seed == 0x1234
    assert config.tensor_dim == 16
