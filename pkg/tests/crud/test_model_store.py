# -*- coding: utf-8 -*-
"""
app.crud.model_store 模块的单元测试：模型 JSON 的保存与加载。
(Unit tests for app.crud.model_store: saving and loading model JSON.)
"""

import json
from pathlib import Path

import pytest

from app.core.errors import IoError, ParseError, VersionMismatchError
from app.crud.model_store import load_model, model_to_document, save_model
from app.utils.helpers import format_float
from app.models.enums import ClassLabel, Problem
from app.services import classifier
from tests.factories import random_samples


@pytest.fixture
def blue_model(rng):
    return classifier.train(
        random_samples(rng, [ClassLabel.V, ClassLabel.X, ClassLabel.OTHER], 25), Problem.BLUE_SIGNATURES
    )


def test_round_trip(tmp_path: Path, blue_model):
    path = tmp_path / "model.json"
    save_model(blue_model, path)
    loaded = load_model(path)
    assert loaded == blue_model
    # 加载的模型给出相同的预测 (the loaded model predicts identically)
    for s in blue_model.samples:
        assert classifier.classify(loaded, s.features) == classifier.classify(blue_model, s.features)


def test_document_layout(tmp_path: Path, blue_model):
    path = tmp_path / "model.json"
    save_model(blue_model, path)
    document = json.loads(path.read_text(encoding="utf-8"))
    assert document["version"] == 1
    assert document["problem"] == "BlueSignatures"
    assert len(document["samples"]) == 25
    assert set(document["samples"][0]) == {"id", "label", "features"}
    assert len(document["normalization"]["means"]) == 28


def test_reals_written_at_17_significant_digits(tmp_path: Path, blue_model):
    path = tmp_path / "model.json"
    save_model(blue_model, path)
    # 保留原始数字文本 (keep the raw number tokens)
    document = json.loads(path.read_text(encoding="utf-8"), parse_float=str, parse_int=str)
    tokens = list(document["normalization"]["means"]) + list(document["normalization"]["stddevs"])
    for sample in document["samples"]:
        tokens.extend(sample["features"])
    assert len(tokens) == 28 * 2 + 28 * 25
    for token in tokens:
        assert token == format_float(float(token))
    assert document["normalization"]["means"][0] == format_float(blue_model.normalization.means[0])


def test_save_is_byte_deterministic(tmp_path: Path, blue_model):
    save_model(blue_model, tmp_path / "a.json")
    save_model(blue_model, tmp_path / "b.json")
    assert (tmp_path / "a.json").read_bytes() == (tmp_path / "b.json").read_bytes()


def test_version_999(tmp_path: Path, blue_model):
    document = model_to_document(blue_model)
    document["version"] = 999
    path = tmp_path / "future.json"
    path.write_text(json.dumps(document), encoding="utf-8")
    with pytest.raises(VersionMismatchError):
        load_model(path)


def test_truncated_file(tmp_path: Path, blue_model):
    path = tmp_path / "model.json"
    save_model(blue_model, path)
    text = path.read_text(encoding="utf-8")
    path.write_text(text[: len(text) // 2], encoding="utf-8")
    with pytest.raises(ParseError):
        load_model(path)


@pytest.mark.parametrize(
    "mutate",
    [
        lambda d: d.pop("samples"),
        lambda d: d.update(version="1"),
        lambda d: d.update(problem="GreenDots"),
        lambda d: d.update(samples=[]),
        lambda d: d["samples"][0].update(label="Parallel"),
        lambda d: d["samples"][0].update(features=[1.0, 2.0]),
        lambda d: d["normalization"].update(stddevs=[0.0] * 28),
    ],
)
def test_invalid_documents(tmp_path: Path, blue_model, mutate):
    document = model_to_document(blue_model)
    mutate(document)
    path = tmp_path / "bad.json"
    path.write_text(json.dumps(document), encoding="utf-8")
    with pytest.raises(ParseError):
        load_model(path)


def test_top_level_must_be_object(tmp_path: Path):
    path = tmp_path / "list.json"
    path.write_text("[]", encoding="utf-8")
    with pytest.raises(ParseError):
        load_model(path)


def test_missing_file(tmp_path: Path):
    with pytest.raises(IoError):
        load_model(tmp_path / "absent.json")
