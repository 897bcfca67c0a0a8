"""
命令行测试
"""
import csv
import io
import json

from typer.testing import CliRunner

from banachlab.cli import app

runner = CliRunner()


def _read_json(path):
    return json.loads(path.read_text(encoding="utf-8"))


def test_nindex_exact(tmp_path):
    out = tmp_path / "report.json"
    result = runner.invoke(app, ["run", "--cmd", "nindex", "--target", "linf2", "--out", str(out)])
    assert result.exit_code == 0
    report = _read_json(out)
    assert report["seed"] == "0x5eed"
    [item] = report["items"]
    assert item["value_exact"] == "1"
    assert item["flag"] == "exact"


def test_unknown_label_is_input_error(tmp_path):
    out = tmp_path / "report.json"
    result = runner.invoke(app, ["run", "--cmd", "opnorm", "--target", "nosuch", "--out", str(out)])
    assert result.exit_code == 1
    [item] = _read_json(out)["items"]
    assert "nosuch" in item["error"]


def test_nonpositive_tolerance_rejected():
    result = runner.invoke(app, ["run", "--cmd", "norm", "--tol=-1"])
    assert result.exit_code == 1


def test_csv_report(tmp_path):
    out = tmp_path / "report.csv"
    result = runner.invoke(app, ["run", "-c", "norm", "-t", "x_l13", "-f", "csv", "-o", str(out)])
    assert result.exit_code == 0
    rows = list(csv.DictReader(io.StringIO(out.read_text(encoding="utf-8"))))
    assert len(rows) == 1
    assert rows[0]["targets"] == "x_l13"
    assert float(rows[0]["value"]) == 3.5
    assert rows[0]["flag"] == "exact"


def test_targets_split_on_commas(tmp_path):
    out = tmp_path / "report.json"
    result = runner.invoke(app, ["run", "--cmd", "opnorm", "--target", "swap,id_linf2", "--out", str(out)])
    assert result.exit_code == 0
    items = _read_json(out)["items"]
    assert [item["targets"] for item in items] == [["swap"], ["id_linf2"]]
    assert all(item["value_exact"] == "1" for item in items)


def test_report_is_deterministic(tmp_path):
    first, second = tmp_path / "a.json", tmp_path / "b.json"
    for path in (first, second):
        result = runner.invoke(app, ["run", "--cmd", "vradius", "--target", "shear_hex", "--out", str(path)])
        assert result.exit_code == 0
    a, b = _read_json(first), _read_json(second)
    a.pop("wall_time")
    b.pop("wall_time")
    assert a == b


def test_catalog_command():
    result = runner.invoke(app, ["catalog"])
    assert result.exit_code == 0
    assert "l12" in result.output
