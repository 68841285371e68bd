# -*- coding: utf-8 -*-
"""
app.utils.export_utils 模块的单元测试。
(Unit tests for the app.utils.export_utils module.)
"""

import csv
import io
import math
from pathlib import Path

import openpyxl  # 用于解析XLSX内容 (For parsing XLSX content)

from app.models.classifier_models import (
    NO_FOREGROUND_PREDICTION,
    ConfusionMatrix,
    Prediction,
    ReportRecord,
)
from app.models.enums import ClassLabel, Problem
from app.utils.export_utils import (
    CLASSIFY_REPORT_HEADERS,
    EVALUATE_REPORT_HEADERS,
    data_to_csv,
    data_to_xlsx,
    report_rows,
    summary_path_for,
    write_manifest_csv,
    write_report_csv,
    write_summary_text,
    write_xlsx_report,
)

V, X, OTHER = ClassLabel.V, ClassLabel.X, ClassLabel.OTHER


def _records(with_truth: bool = False):
    return [
        ReportRecord(
            id="f001",
            truth=V if with_truth else None,
            prediction=Prediction(label=V, distance=0.5, neighbor_id="synth_V_0003"),
        ),
        ReportRecord(
            id="f002",
            truth=OTHER if with_truth else None,
            prediction=NO_FOREGROUND_PREDICTION,
        ),
    ]


# region data_to_csv / data_to_xlsx 测试 (data_to_csv / data_to_xlsx Tests)


def test_data_to_csv_empty_data():
    """测试 data_to_csv 处理空数据列表的情况。"""
    headers = ["栏位一", "栏位二", "栏位三"]  # (Column1, Column2, Column3)
    text = data_to_csv(data_list=[], headers=headers)
    assert text == "栏位一,栏位二,栏位三\n"


def test_data_to_csv_with_data():
    """测试 data_to_csv 处理包含数据的列表，缺失的键写为空串。"""
    headers = ["名称", "值", "描述"]  # (Name, Value, Description)
    data = [
        {"名称": "项目A", "值": 100, "描述": "含,逗号"},
        {"名称": "项目B", "值": 250},
    ]
    parsed_rows = list(csv.reader(io.StringIO(data_to_csv(data, headers))))
    assert parsed_rows == [headers, ["项目A", "100", "含,逗号"], ["项目B", "250", ""]]


def test_data_to_xlsx_sheets():
    payload = data_to_xlsx(
        [
            ("first", ["a", "b"], [{"a": 1, "b": "x"}]),
            ("second", ["c"], []),
        ]
    )
    workbook = openpyxl.load_workbook(io.BytesIO(payload))
    assert workbook.sheetnames == ["first", "second"]
    rows = list(workbook["first"].iter_rows(values_only=True))
    assert rows == [("a", "b"), (1, "x")]
    assert list(workbook["second"].iter_rows(values_only=True)) == [("c",)]


# endregion

# region 报告文件 (Report Files)


def test_report_rows_format_distance():
    rows = report_rows(_records())
    assert rows[0]["distance"] == "0.5"
    assert rows[1]["distance"] == "inf"
    assert rows[1]["neighbor_id"] == ""
    assert rows[1]["predicted"] == "Other"


def test_write_report_csv(tmp_path: Path):
    path = tmp_path / "report.csv"
    write_report_csv(_records(), path)
    assert path.read_text(encoding="utf-8") == (
        "id,predicted,distance,neighbor_id\n"
        "f001,V,0.5,synth_V_0003\n"
        "f002,Other,inf,\n"
    )


def test_write_report_csv_with_truth(tmp_path: Path):
    path = tmp_path / "eval.csv"
    write_report_csv(_records(with_truth=True), path, with_truth=True)
    rows = list(csv.reader(io.StringIO(path.read_text(encoding="utf-8"))))
    assert rows[0] == EVALUATE_REPORT_HEADERS
    assert rows[2][:2] == ["f002", "Other"]
    assert math.isinf(float(rows[2][3]))


def test_write_manifest_csv(tmp_path: Path):
    path = tmp_path / "manifest.csv"
    write_manifest_csv([("a", "a.pgm"), ("b", None)], path)
    assert path.read_text(encoding="utf-8") == "frame_id,roi_file\na,a.pgm\nb,no_foreground\n"


def test_write_summary_text(tmp_path: Path):
    matrix = ConfusionMatrix(labels=(V, X, OTHER), counts=((2, 0, 0), (1, 1, 0), (0, 0, 3)))
    path = tmp_path / "summary.txt"
    write_summary_text(matrix, path, Problem.BLUE_SIGNATURES)
    text = path.read_text(encoding="utf-8")
    assert text == matrix.summary_text(Problem.BLUE_SIGNATURES)
    assert "accuracy: 0.8571" in text


def test_summary_path_for():
    assert summary_path_for(Path("out/eval.csv")) == Path("out/eval_summary.txt")
    assert summary_path_for(Path("report")) == Path("report_summary.txt")


def test_write_xlsx_report(tmp_path: Path):
    matrix = ConfusionMatrix(labels=(V, X, OTHER), counts=((1, 0, 0), (0, 0, 0), (0, 0, 1)))
    path = tmp_path / "report.xlsx"
    write_xlsx_report(_records(with_truth=True), path, matrix)
    workbook = openpyxl.load_workbook(path)
    assert workbook.sheetnames == ["report", "confusion"]
    report = list(workbook["report"].iter_rows(values_only=True))
    assert list(report[0]) == EVALUATE_REPORT_HEADERS
    assert report[1][0] == "f001"
    confusion = list(workbook["confusion"].iter_rows(values_only=True))
    assert confusion[0] == ("truth\\predicted", "V", "X", "Other")
    assert confusion[3] == ("Other", 0, 0, 1)


def test_write_xlsx_report_without_truth(tmp_path: Path):
    path = tmp_path / "classify.xlsx"
    write_xlsx_report(_records(), path)
    workbook = openpyxl.load_workbook(path)
    assert workbook.sheetnames == ["report"]
    header = next(workbook["report"].iter_rows(values_only=True))
    assert list(header) == CLASSIFY_REPORT_HEADERS


# endregion
