# -*- coding: utf-8 -*-
"""
模型文件持久化模块 (Model File Persistence Module)。

模型以 UTF-8 JSON 文档保存，顶层键为 `version`、`problem`、`normalization`
与 `samples`。实数以 17 位有效数字写出，读回后逐位相等。
(Models are stored as UTF-8 JSON documents with the top-level keys `version`,
`problem`, `normalization` and `samples`. Reals are written at 17 significant
digits, so they read back bit-identical.)
"""

import json
import logging
from pathlib import Path
from typing import Any, Dict, Iterable

from pydantic import ValidationError

from ..core.errors import ParseError, VersionMismatchError
from ..models.classifier_models import MODEL_FORMAT_VERSION, ClassifierModel
from ..utils.helpers import atomic_write_text, format_float, read_text

_model_store_logger = logging.getLogger(__name__)


def model_to_document(model: ClassifierModel) -> Dict[str, Any]:
    """将模型转换为可 JSON 序列化的字典。(Converts a model into a JSON-serializable dict.)"""
    return {
        "version": model.version,
        "problem": model.problem.value,
        "normalization": {
            "means": list(model.normalization.means),
            "stddevs": list(model.normalization.stddevs),
        },
        "samples": [
            {
                "id": sample.id,
                "label": sample.label.value,
                "features": list(sample.features.values),
            }
            for sample in model.samples
        ],
    }


def _reals(values: Iterable[float]) -> str:
    return "[" + ", ".join(format_float(v) for v in values) + "]"


def model_to_json(model: ClassifierModel) -> str:
    """
    将模型写成固定布局的 JSON 文本：每个样本占一行，实数取 17 位有效数字。
    标准库 `json` 只输出最短往返表示，因此实数列表在这里直接拼写。
    (Renders the model as JSON text with a fixed layout: one line per sample,
    reals at 17 significant digits. The standard `json` module only emits the
    shortest round-trip form, so real lists are spelled out here.)
    """
    samples = ",\n".join(
        "    {"
        f"\"id\": {json.dumps(s.id, ensure_ascii=False)}, "
        f"\"label\": {json.dumps(s.label.value)}, "
        f"\"features\": {_reals(s.features.values)}"
        "}"
        for s in model.samples
    )
    return (
        "{\n"
        f"  \"version\": {model.version},\n"
        f"  \"problem\": {json.dumps(model.problem.value)},\n"
        "  \"normalization\": {\n"
        f"    \"means\": {_reals(model.normalization.means)},\n"
        f"    \"stddevs\": {_reals(model.normalization.stddevs)}\n"
        "  },\n"
        f"  \"samples\": [\n{samples}\n  ]\n"
        "}\n"
    )


def model_from_document(document: Any) -> ClassifierModel:
    """
    由已解析的 JSON 文档重建模型。
    (Rebuilds a model from a parsed JSON document.)

    异常 (Raises):
        VersionMismatchError: 不支持的格式版本。(Unsupported format version.)
        ParseError: 文档结构无效。(Invalid document structure.)
    """
    if not isinstance(document, dict):
        raise ParseError("model document must be a JSON object")
    missing = [k for k in ("version", "problem", "normalization", "samples") if k not in document]
    if missing:
        raise ParseError(f"model document lacks key(s): {', '.join(missing)}")

    version = document["version"]
    if not isinstance(version, int) or isinstance(version, bool):
        raise ParseError(f"model version must be an integer, got {version!r}")
    if version != MODEL_FORMAT_VERSION:
        raise VersionMismatchError(
            f"model format version {version} is not supported (expected {MODEL_FORMAT_VERSION})"
        )

    samples = document["samples"]
    if not isinstance(samples, list):
        raise ParseError("'samples' must be a list")
    try:
        return ClassifierModel.model_validate(
            {
                "version": version,
                "problem": document["problem"],
                "normalization": document["normalization"],
                "samples": [
                    {
                        "id": s.get("id"),
                        "label": s.get("label"),
                        "features": {"values": s.get("features")},
                    }
                    if isinstance(s, dict)
                    else s
                    for s in samples
                ],
            }
        )
    except ValidationError as e:
        first = e.errors()[0]
        location = ".".join(str(part) for part in first["loc"])
        raise ParseError(f"invalid model document at '{location}': {first['msg']}") from e


def save_model(model: ClassifierModel, path: Path) -> None:
    """原子地写出模型 JSON。(Atomically writes the model JSON.)"""
    atomic_write_text(Path(path), model_to_json(model))
    _model_store_logger.info(
        f"模型已保存 (Model saved): {path} ({len(model.samples)} samples)"
    )


def load_model(path: Path) -> ClassifierModel:
    """
    读取模型 JSON。
    (Reads a model JSON file.)

    异常 (Raises):
        IoError: 文件不可读。(File unreadable.)
        ParseError: 文件截断或结构无效。(Truncated file or invalid structure.)
        VersionMismatchError: 不支持的格式版本。(Unsupported format version.)
    """
    text = read_text(Path(path))
    try:
        document = json.loads(text)
    except json.JSONDecodeError as e:
        raise ParseError(f"{path}: invalid JSON ({e.msg})", row=e.lineno) from e
    model = model_from_document(document)
    _model_store_logger.debug(f"模型已加载 (Model loaded): {path}")
    return model


__all__ = ["model_to_document", "model_to_json", "model_from_document", "save_model", "load_model"]
