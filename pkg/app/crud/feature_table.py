# -*- coding: utf-8 -*-
"""
特征表与标签表的 CSV 持久化模块 (Feature & Label Table CSV Persistence Module)。

特征 CSV 使用固定表头 `id,label,width,height,polygon_count,z0_0,...,z8_8`，
实数以 17 位有效数字写出，UTF-8 编码，LF 行尾。标签 CSV 只有 `id,label` 两列。
(Feature CSVs use the fixed header `id,label,width,height,polygon_count,
z0_0,...,z8_8`, reals written at 17 significant digits, UTF-8, LF line endings.
Label CSVs have just the two columns `id,label`.)

行号从 1 开始，表头为第 1 行。
(Row numbers are 1-based; the header is row 1.)
"""

import csv
import io
import logging
import math
from pathlib import Path
from typing import Dict, Iterable, List, Mapping

from pydantic import ValidationError

from ..core.errors import DuplicateIdError, ParseError
from ..models.enums import ClassLabel
from ..models.feature_models import FeatureVector, LabeledSample
from ..services.features import FEATURE_NAMES
from ..utils.helpers import atomic_write_text, format_float, read_text

_feature_table_logger = logging.getLogger(__name__)

FEATURE_CSV_HEADER: List[str] = ["id", "label"] + FEATURE_NAMES
LABELS_CSV_HEADER: List[str] = ["id", "label"]


def _csv_text(header: List[str], rows: Iterable[List[str]]) -> str:
    buffer = io.StringIO()
    writer = csv.writer(buffer, lineterminator="\n")
    writer.writerow(header)
    writer.writerows(rows)
    return buffer.getvalue()


def _parse_label(text: str, row: int) -> ClassLabel:
    try:
        return ClassLabel(text)
    except ValueError:
        raise ParseError(
            f"unknown label '{text}' (expected one of {[item.value for item in ClassLabel]})",
            row=row,
        ) from None


def _parse_real(text: str, column: str, row: int) -> float:
    try:
        value = float(text)
    except ValueError:
        raise ParseError(f"column '{column}' is not a number: '{text}'", row=row) from None
    if not math.isfinite(value):
        raise ParseError(f"column '{column}' is not finite: '{text}'", row=row)
    return value


def _reader(path: Path):
    return csv.reader(io.StringIO(read_text(path), newline=""))


def _check_header(reader, expected: List[str], path: Path) -> None:
    header = next(reader, None)
    if header is None:
        raise ParseError(f"{path}: missing header row", row=1)
    if header != expected:
        raise ParseError(
            f"{path}: header mismatch, expected '{','.join(expected)}'", row=1
        )


# region 特征表 (Feature Table)


def write_feature_csv(samples: Iterable[LabeledSample], path: Path) -> None:
    """
    按给定顺序写出特征表；写入是原子的。
    (Writes the feature table in the given order; the write is atomic.)
    """
    rows = [
        [s.id, s.label.value] + [format_float(v) for v in s.features.values]
        for s in samples
    ]
    atomic_write_text(Path(path), _csv_text(FEATURE_CSV_HEADER, rows))
    _feature_table_logger.info(
        f"特征表已写入 (Feature table written): {path} ({len(rows)} rows)"
    )


def read_feature_csv(path: Path) -> List[LabeledSample]:
    """
    读取特征表，保持文件中的行序。
    (Reads a feature table, keeping the file's row order.)

    异常 (Raises):
        IoError: 文件不可读。(File unreadable.)
        ParseError: 表头、列数、数值或标签格式错误。(Malformed header, column count, number or label.)
        DuplicateIdError: 同一 id 出现多次。(The same id appears more than once.)
    """
    path = Path(path)
    reader = _reader(path)
    _check_header(reader, FEATURE_CSV_HEADER, path)

    samples: List[LabeledSample] = []
    seen = set()
    for fields in reader:
        row = reader.line_num
        if not fields:
            continue
        if len(fields) != len(FEATURE_CSV_HEADER):
            raise ParseError(
                f"expected {len(FEATURE_CSV_HEADER)} columns, got {len(fields)}", row=row
            )
        sample_id = fields[0]
        if not sample_id:
            raise ParseError("empty id", row=row)
        if sample_id in seen:
            raise DuplicateIdError(sample_id)
        seen.add(sample_id)

        label = _parse_label(fields[1], row)
        values = tuple(
            _parse_real(text, column, row)
            for text, column in zip(fields[2:], FEATURE_NAMES)
        )
        try:
            features = FeatureVector(values=values)
        except ValidationError as e:
            raise ParseError(e.errors()[0]["msg"], row=row) from e
        if not features.is_raw:
            raise ParseError(
                "width and height must be >= 1 and polygon_count an integer >= 1",
                row=row,
            )
        samples.append(LabeledSample(id=sample_id, label=label, features=features))

    _feature_table_logger.debug(f"读取 (Read) {len(samples)} samples from {path}")
    return samples


# endregion

# region 标签表 (Label Table)


def write_labels_csv(labels: Mapping[str, ClassLabel], path: Path) -> None:
    """按 id 字典序写出标签表。(Writes a label table ordered by id.)"""
    rows = [[sample_id, labels[sample_id].value] for sample_id in sorted(labels)]
    atomic_write_text(Path(path), _csv_text(LABELS_CSV_HEADER, rows))


def read_labels_csv(path: Path) -> Dict[str, ClassLabel]:
    """
    读取 `id,label` 标签表。
    (Reads an `id,label` label table.)

    异常 (Raises):
        IoError / ParseError / DuplicateIdError
    """
    path = Path(path)
    reader = _reader(path)
    _check_header(reader, LABELS_CSV_HEADER, path)

    labels: Dict[str, ClassLabel] = {}
    for fields in reader:
        row = reader.line_num
        if not fields:
            continue
        if len(fields) != 2:
            raise ParseError(f"expected 2 columns, got {len(fields)}", row=row)
        sample_id, label_text = fields
        if not sample_id:
            raise ParseError("empty id", row=row)
        if sample_id in labels:
            raise DuplicateIdError(sample_id)
        labels[sample_id] = _parse_label(label_text, row)
    return labels


# endregion

__all__ = [
    "FEATURE_CSV_HEADER",
    "LABELS_CSV_HEADER",
    "write_feature_csv",
    "read_feature_csv",
    "write_labels_csv",
    "read_labels_csv",
]
