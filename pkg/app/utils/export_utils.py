# -*- coding: utf-8 -*-
"""
数据导出工具模块 (Data Export Utilities Module)

此模块提供了将逐帧报告、提取清单和混淆矩阵导出为 CSV、XLSX 和纯文本的函数。
CSV 与文本输出只依赖输入内容，可逐字节复现；所有文件都以原子方式写入。
(This module provides functions exporting per-frame reports, extraction
manifests and confusion matrices as CSV, XLSX and plain text. CSV and text
output depends only on its input, so it is byte-reproducible; every file is
written atomically.)
"""

import csv
import io
from pathlib import Path
from typing import Any, Dict, List, Optional, Sequence, Tuple

import openpyxl  # For XLSX export

from ..models.classifier_models import ConfusionMatrix, ReportRecord
from ..models.enums import Problem
from .helpers import atomic_write_bytes, atomic_write_text, format_float

CLASSIFY_REPORT_HEADERS = ["id", "predicted", "distance", "neighbor_id"]
EVALUATE_REPORT_HEADERS = ["id", "truth", "predicted", "distance", "neighbor_id"]
MANIFEST_HEADERS = ["frame_id", "roi_file"]
NO_FOREGROUND_MARK = "no_foreground"


def data_to_csv(data_list: List[Dict[str, Any]], headers: List[str]) -> str:
    """
    将字典列表转换为 CSV 文本 (UTF-8, LF 行尾)。
    (Converts a list of dictionaries into CSV text, UTF-8 with LF line endings.)

    参数 (Args):
        data_list (List[Dict[str, Any]]): 要导出的数据，每个字典代表一行，键应与headers对应。
                                         (Data to export, each dict represents a row, keys should match headers.)
        headers (List[str]): CSV文件的表头列表。
                             (List of headers for the CSV file.)
    """
    output = io.StringIO()
    writer = csv.writer(output, lineterminator="\n")
    writer.writerow(headers)
    for item in data_list:
        writer.writerow([item.get(header, "") for header in headers])
    return output.getvalue()


def data_to_xlsx(
    sheets: Sequence[Tuple[str, List[str], List[Dict[str, Any]]]],
) -> bytes:
    """
    将若干 (工作表名, 表头, 数据行) 写入一个 XLSX 工作簿并返回其字节。
    (Writes several (sheet title, headers, rows) tuples into one XLSX workbook
    and returns its bytes.)
    """
    workbook = openpyxl.Workbook()
    workbook.remove(workbook.active)
    for title, headers, data_list in sheets:
        sheet = workbook.create_sheet(title=title)
        sheet.append(headers)
        for item in data_list:
            sheet.append([item.get(header) for header in headers])

    output = io.BytesIO()
    workbook.save(output)
    return output.getvalue()


# region 报告行 (Report Rows)


def report_rows(records: Sequence[ReportRecord]) -> List[Dict[str, Any]]:
    """逐帧报告记录转换为字典行；距离以 17 位有效数字书写。(Report records as dict rows; distances at 17 significant digits.)"""
    return [
        {
            "id": r.id,
            "truth": r.truth.value if r.truth is not None else "",
            "predicted": r.prediction.label.value,
            "distance": format_float(r.prediction.distance),
            "neighbor_id": r.prediction.neighbor_id,
        }
        for r in records
    ]


def _confusion_rows(matrix: ConfusionMatrix) -> List[Dict[str, Any]]:
    rows = []
    for label, counts in zip(matrix.labels, matrix.counts):
        row: Dict[str, Any] = {"truth\\predicted": label.value}
        row.update({predicted.value: c for predicted, c in zip(matrix.labels, counts)})
        rows.append(row)
    return rows


# endregion

# region 文件写出 (File Writers)


def write_report_csv(
    records: Sequence[ReportRecord], path: Path, with_truth: bool = False
) -> None:
    """
    写出逐帧报告 CSV；`with_truth` 时增加 truth 列。
    (Writes the per-frame report CSV; `with_truth` adds the truth column.)
    """
    headers = EVALUATE_REPORT_HEADERS if with_truth else CLASSIFY_REPORT_HEADERS
    atomic_write_text(Path(path), data_to_csv(report_rows(records), headers))


def write_manifest_csv(entries: Sequence[Tuple[str, Optional[str]]], path: Path) -> None:
    """
    写出提取清单：帧 id -> ROI 文件名，或 `no_foreground`。
    (Writes the extraction manifest: frame id -> ROI file name, or `no_foreground`.)
    """
    rows = [
        {"frame_id": frame_id, "roi_file": roi_file or NO_FOREGROUND_MARK}
        for frame_id, roi_file in entries
    ]
    atomic_write_text(Path(path), data_to_csv(rows, MANIFEST_HEADERS))


def summary_path_for(report_path: Path) -> Path:
    """评估报告旁的摘要文件：`eval.csv` -> `eval_summary.txt`。(`eval.csv` -> `eval_summary.txt`.)"""
    report_path = Path(report_path)
    return report_path.with_name(f"{report_path.stem}_summary.txt")


def write_summary_text(
    matrix: ConfusionMatrix, path: Path, problem: Optional[Problem] = None
) -> None:
    atomic_write_text(Path(path), matrix.summary_text(problem))


def write_xlsx_report(
    records: Sequence[ReportRecord],
    path: Path,
    matrix: Optional[ConfusionMatrix] = None,
) -> None:
    """
    写出 XLSX 工作簿：`report` 工作表，以及评估时的 `confusion` 工作表。
    (Writes an XLSX workbook: the `report` sheet, plus a `confusion` sheet when
    evaluating.)
    """
    with_truth = any(r.truth is not None for r in records)
    sheets = [
        (
            "report",
            EVALUATE_REPORT_HEADERS if with_truth else CLASSIFY_REPORT_HEADERS,
            report_rows(records),
        )
    ]
    if matrix is not None:
        headers = ["truth\\predicted"] + [label.value for label in matrix.labels]
        sheets.append(("confusion", headers, _confusion_rows(matrix)))
    atomic_write_bytes(Path(path), data_to_xlsx(sheets))


# endregion

__all__ = [
    "CLASSIFY_REPORT_HEADERS",
    "EVALUATE_REPORT_HEADERS",
    "MANIFEST_HEADERS",
    "NO_FOREGROUND_MARK",
    "data_to_csv",
    "data_to_xlsx",
    "report_rows",
    "write_report_csv",
    "write_manifest_csv",
    "write_summary_text",
    "write_xlsx_report",
]
