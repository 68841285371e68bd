# -*- coding: utf-8 -*-
"""
分类器相关的Pydantic模型模块。
(Pydantic Models Module for the Classifier.)

此模块定义了最近邻模型、预测结果、逐帧报告记录以及混淆矩阵的数据模型。
(This module defines data models for the nearest-neighbor model, predictions,
per-frame report records and the confusion matrix.)
"""

import math
from typing import List, Optional, Tuple

import numpy as np
from pydantic import BaseModel, Field, PrivateAttr, field_validator, model_validator

from .enums import ClassLabel, Problem
from .feature_models import LabeledSample, Normalization

MODEL_FORMAT_VERSION = 1


class ClassifierModel(BaseModel):
    """
    一个分类问题的 1-NN 模型：原始训练样本 + 在这些样本上拟合的归一化参数。
    (1-NN model of one problem: the raw training samples plus the normalization
    fitted over exactly those samples.)

    归一化后的训练矩阵按样本 id 排序后缓存，供 `classify` 使用。
    (The normalized training matrix is cached sorted by sample id for `classify`.)
    """

    version: int = Field(MODEL_FORMAT_VERSION, description="文件格式版本 (Format version)")
    problem: Problem
    samples: List[LabeledSample]
    normalization: Normalization

    _sorted_ids: Optional[Tuple[str, ...]] = PrivateAttr(default=None)
    _sorted_labels: Optional[Tuple[ClassLabel, ...]] = PrivateAttr(default=None)
    _normalized: Optional[np.ndarray] = PrivateAttr(default=None)

    @field_validator("samples")
    @classmethod
    def check_samples_nonempty(cls, v: List[LabeledSample]) -> List[LabeledSample]:
        if not v:
            raise ValueError("a model needs at least one training sample")
        return v

    @model_validator(mode="after")
    def check_labels_and_ids(self) -> "ClassifierModel":
        allowed = set(self.problem.labels)
        seen = set()
        for sample in self.samples:
            if sample.label not in allowed:
                raise ValueError(
                    f"label '{sample.label.value}' of sample '{sample.id}' "
                    f"is not valid for problem {self.problem.value}"
                )
            if sample.id in seen:
                raise ValueError(f"duplicate sample id '{sample.id}'")
            seen.add(sample.id)
        return self

    def neighbor_table(self) -> Tuple[Tuple[str, ...], Tuple[ClassLabel, ...], np.ndarray]:
        """
        返回 (按 id 排序的 id, 对应标签, 归一化矩阵)，首次调用时计算。
        (Returns (id-sorted ids, their labels, normalized matrix), computed on first call.)
        """
        if self._normalized is None:
            ordered = sorted(self.samples, key=lambda s: s.id)
            matrix = np.array([s.features.values for s in ordered], dtype=np.float64)
            normalized = (matrix - np.asarray(self.normalization.means)) / np.asarray(
                self.normalization.stddevs
            )
            normalized.setflags(write=False)
            self._sorted_ids = tuple(s.id for s in ordered)
            self._sorted_labels = tuple(s.label for s in ordered)
            self._normalized = normalized
        return self._sorted_ids, self._sorted_labels, self._normalized

    def __eq__(self, other: object) -> bool:
        # 只比较持久化字段，不比较缓存 (compare persisted fields only, not the cache)
        if not isinstance(other, ClassifierModel):
            return NotImplemented
        return (
            self.version == other.version
            and self.problem is other.problem
            and self.normalization == other.normalization
            and self.samples == other.samples
        )

    def class_counts(self) -> List[Tuple[ClassLabel, int]]:
        """问题标签顺序下的每类样本数。(Per-class sample counts in the problem's label order.)"""
        return [
            (label, sum(1 for s in self.samples if s.label is label))
            for label in self.problem.labels
        ]

    model_config = {"frozen": True}


class Prediction(BaseModel):
    """
    最近邻预测：类别、与最近训练样本的距离及其 id。
    无前景帧的距离为 +inf，neighbor_id 为空串。
    (Nearest-neighbor prediction: label, distance to the closest training sample
    and its id. Frames without foreground carry distance +inf and an empty
    neighbor_id.)
    """

    label: ClassLabel
    distance: float = Field(..., ge=0.0)
    neighbor_id: str

    @property
    def is_no_foreground(self) -> bool:
        return math.isinf(self.distance) and self.neighbor_id == ""

    model_config = {"frozen": True}


NO_FOREGROUND_PREDICTION = Prediction(
    label=ClassLabel.OTHER, distance=math.inf, neighbor_id=""
)


class ReportRecord(BaseModel):
    """逐帧报告的一行。truth 仅在评估时存在。(One per-frame report row; truth only when evaluating.)"""

    id: str
    truth: Optional[ClassLabel] = None
    prediction: Prediction


class ConfusionMatrix(BaseModel):
    """
    混淆矩阵：行为真实类别，列为预测类别。
    (Confusion matrix: rows are truth, columns are predictions.)
    """

    labels: Tuple[ClassLabel, ...]
    counts: Tuple[Tuple[int, ...], ...]

    @model_validator(mode="after")
    def check_square(self) -> "ConfusionMatrix":
        size = len(self.labels)
        if len(self.counts) != size or any(len(row) != size for row in self.counts):
            raise ValueError(f"counts must be a {size}x{size} matrix")
        if any(c < 0 for row in self.counts for c in row):
            raise ValueError("counts must be non-negative")
        return self

    def _index(self, label: ClassLabel) -> int:
        try:
            return self.labels.index(label)
        except ValueError:
            raise KeyError(f"label {label.value} is not part of this matrix") from None

    def count(self, truth: ClassLabel, predicted: ClassLabel) -> int:
        return self.counts[self._index(truth)][self._index(predicted)]

    @property
    def total(self) -> int:
        return sum(sum(row) for row in self.counts)

    @property
    def trace(self) -> int:
        return sum(self.counts[k][k] for k in range(len(self.labels)))

    @property
    def accuracy(self) -> float:
        """trace / total；空矩阵为 0。(trace / total; 0 for an empty matrix.)"""
        return self.trace / self.total if self.total else 0.0

    def support(self, label: ClassLabel) -> int:
        return sum(self.counts[self._index(label)])

    def recall(self, label: ClassLabel) -> float:
        """该类真实样本中被正确识别的比例；无真实样本时为 0。(0 when the class has no truth sample.)"""
        k = self._index(label)
        row_total = sum(self.counts[k])
        return self.counts[k][k] / row_total if row_total else 0.0

    def precision(self, label: ClassLabel) -> float:
        """预测为该类的样本中正确的比例；无预测时为 0。(0 when nothing was predicted as the class.)"""
        k = self._index(label)
        column_total = sum(row[k] for row in self.counts)
        return self.counts[k][k] / column_total if column_total else 0.0

    @property
    def macro_recall(self) -> float:
        """有真实样本的类别的召回率平均值。(Mean recall over classes that have truth samples.)"""
        supported = [label for label in self.labels if self.support(label)]
        if not supported:
            return 0.0
        return sum(self.recall(label) for label in supported) / len(supported)

    def false_alarm_rate(
        self, predicted: ClassLabel, truth: ClassLabel = ClassLabel.OTHER
    ) -> float:
        """
        真实为 `truth` (默认 Other) 的样本被预测为 `predicted` 的比例。
        (Fraction of `truth` samples, Other by default, predicted as `predicted`.)
        """
        row_total = self.support(truth)
        return self.count(truth, predicted) / row_total if row_total else 0.0

    def summary_text(self, problem: Optional[Problem] = None) -> str:
        """
        纯文本的混淆矩阵摘要，内容只依赖计数，可逐字节复现。
        (Plain-text confusion matrix summary; depends only on the counts, so it is
        byte-reproducible.)
        """
        names = [label.value for label in self.labels]
        width = max([len("truth\\pred")] + [len(n) for n in names] + [len(str(self.total))])
        lines: List[str] = []
        if problem is not None:
            lines.append(f"problem: {problem.value}")
        lines.append(f"samples: {self.total}")
        lines.append(f"accuracy: {self.accuracy:.4f}")
        lines.append(f"macro_recall: {self.macro_recall:.4f}")
        lines.append("")
        lines.append(" ".join(n.rjust(width) for n in ["truth\\pred"] + names))
        for name, row in zip(names, self.counts):
            lines.append(" ".join([name.rjust(width)] + [str(c).rjust(width) for c in row]))
        lines.append("")
        for label in self.labels:
            lines.append(
                f"{label.value}: recall {self.recall(label):.4f} "
                f"precision {self.precision(label):.4f} support {self.support(label)}"
            )
        if ClassLabel.OTHER in self.labels:
            for label in self.labels:
                if label is ClassLabel.OTHER:
                    continue
                lines.append(
                    f"false_alarm_rate Other->{label.value}: "
                    f"{self.false_alarm_rate(label):.4f}"
                )
        return "\n".join(lines) + "\n"

    model_config = {"frozen": True}


__all__ = [
    "MODEL_FORMAT_VERSION",
    "ClassifierModel",
    "Prediction",
    "NO_FOREGROUND_PREDICTION",
    "ReportRecord",
    "ConfusionMatrix",
]
