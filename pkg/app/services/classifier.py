# -*- coding: utf-8 -*-
"""
最近邻分类服务模块 (Nearest-Neighbor Classification Service Module)。

在 z-score 归一化后的 28 维特征上做欧氏距离 1-NN 分类。
蓝色问题的类别为 {V, X, Other}，红色问题为 {Parallel, Other}。
距离相同时取 id 字典序最小的训练样本，因此结果与训练样本的排列顺序无关。
(1-NN classification by Euclidean distance over z-scored 28-value features.
The blue problem has classes {V, X, Other}, the red problem {Parallel, Other}.
Ties go to the lexicographically smallest training id, so results do not
depend on the order of the training samples.)
"""

# region 模块导入 (Module Imports)
import logging
import math
from collections import Counter
from typing import Iterable, List, Sequence, Tuple

import numpy as np

from ..core.config import SegmentationConfig
from ..core.errors import (
    DuplicateIdError,
    EmptyTableError,
    InvalidLabelError,
)
from ..models.classifier_models import (
    NO_FOREGROUND_PREDICTION,
    ClassifierModel,
    ConfusionMatrix,
    Prediction,
    ReportRecord,
)
from ..models.enums import ClassLabel, Problem
from ..models.feature_models import FeatureVector, LabeledSample
from ..models.image_models import RgbFrame
from .features import ZERO_VARIANCE_EPS, feature_matrix, featurize, fit_normalization
from .imaging import segment_frame

# endregion

_classifier_logger = logging.getLogger(__name__)

# 最大类样本数超过最小类的该倍数时给出不平衡警告
# (Warn about imbalance when the largest class exceeds the smallest by this factor)
CLASS_IMBALANCE_FACTOR = 2.0


def _check_labels(samples: Iterable[LabeledSample], problem: Problem) -> None:
    allowed = set(problem.labels)
    for sample in samples:
        if sample.label not in allowed:
            raise InvalidLabelError(
                f"sample '{sample.id}' has label '{sample.label.value}', "
                f"not valid for problem {problem.value} "
                f"({', '.join(label.value for label in problem.labels)})",
                sample_id=sample.id,
            )


def _log_class_balance(samples: Sequence[LabeledSample], problem: Problem) -> None:
    counts = Counter(sample.label for sample in samples)
    per_class = {label.value: counts.get(label, 0) for label in problem.labels}
    _classifier_logger.info(
        f"训练集类别分布 (Training class balance): {per_class}",
        extra={"problem": problem.value, "class_counts": per_class},
    )
    smallest, largest = min(per_class.values()), max(per_class.values())
    if largest > CLASS_IMBALANCE_FACTOR * smallest:
        _classifier_logger.warning(
            f"训练集类别不平衡 (Training set is imbalanced): {per_class}"
        )


# region 训练与分类 (Training & Classification)


def train(samples: Sequence[LabeledSample], problem: Problem) -> ClassifierModel:
    """
    训练 1-NN 记忆器：原样保存样本并拟合归一化参数。
    (Trains the 1-NN memorizer: stores the samples verbatim and fits the
    normalization.)

    异常 (Raises):
        EmptyTableError: 没有样本。(No samples.)
        InvalidLabelError: 某样本的标签不属于该问题。(A label is outside the problem's set.)
        DuplicateIdError: 样本 id 重复。(Duplicate sample id.)
    """
    if not samples:
        raise EmptyTableError(f"no training samples for problem {problem.value}")
    _check_labels(samples, problem)
    seen = set()
    for sample in samples:
        if sample.id in seen:
            raise DuplicateIdError(sample.id)
        seen.add(sample.id)

    _log_class_balance(samples, problem)
    model = ClassifierModel(
        problem=problem,
        samples=list(samples),
        normalization=fit_normalization(samples),
    )
    _classifier_logger.info(
        f"模型训练完成 (Model trained): {problem.value}, {len(samples)} samples"
    )
    return model


def classify(model: ClassifierModel, fv: FeatureVector) -> Prediction:
    """
    归一化查询向量后返回欧氏距离最近的训练样本的标签；距离相同取 id 最小者。
    (Normalizes the query and returns the label of the training sample at the
    smallest Euclidean distance; ties go to the smallest id.)
    """
    ids, labels, table = model.neighbor_table()
    norm = model.normalization
    query = (np.asarray(fv.values, dtype=np.float64) - np.asarray(norm.means)) / np.asarray(
        norm.stddevs
    )
    squared = np.sum((table - query) ** 2, axis=1)
    # argmin 返回首个最小值，表已按 id 排序 (argmin returns the first minimum; the table is id-sorted)
    best = int(np.argmin(squared))
    return Prediction(
        label=labels[best],
        distance=float(math.sqrt(squared[best])),
        neighbor_id=ids[best],
    )


def classify_frame(
    model: ClassifierModel, frame: RgbFrame, cfg: SegmentationConfig
) -> Prediction:
    """
    对整帧执行 分割 -> 特征 -> 分类；无前景帧按策略判为 Other (距离 +inf，neighbor_id 为空)。
    (Runs segmentation -> featurization -> classification on a whole frame;
    a frame without foreground is classified Other by policy, with distance +inf
    and an empty neighbor_id.)
    """
    roi = segment_frame(frame, model.problem.channel, cfg)
    if roi is None:
        return NO_FOREGROUND_PREDICTION
    return classify(model, featurize(roi))


# endregion

# region 评估 (Evaluation)


def confusion_from_pairs(
    labels: Sequence[ClassLabel], pairs: Iterable[Tuple[ClassLabel, ClassLabel]]
) -> ConfusionMatrix:
    """
    由 (真实, 预测) 对累积混淆矩阵。
    (Accumulates a confusion matrix from (truth, predicted) pairs.)
    """
    index = {label: k for k, label in enumerate(labels)}
    counts = [[0] * len(labels) for _ in labels]
    for truth, predicted in pairs:
        counts[index[truth]][index[predicted]] += 1
    return ConfusionMatrix(
        labels=tuple(labels), counts=tuple(tuple(row) for row in counts)
    )


def evaluate_detailed(
    model: ClassifierModel, truth: Sequence[LabeledSample]
) -> Tuple[ConfusionMatrix, List[ReportRecord]]:
    """
    对真实表中每个样本分类，返回混淆矩阵与逐样本记录 (按输入顺序)。
    (Classifies every truth sample and returns the confusion matrix plus the
    per-sample records, in input order.)

    异常 (Raises):
        EmptyTableError: 真实表为空。(Empty truth table.)
        InvalidLabelError: 真实标签不属于模型的问题。(A truth label is outside the problem's set.)
    """
    if not truth:
        raise EmptyTableError("cannot evaluate on an empty truth table")
    _check_labels(truth, model.problem)

    records = [
        ReportRecord(id=sample.id, truth=sample.label, prediction=classify(model, sample.features))
        for sample in truth
    ]
    matrix = confusion_from_pairs(
        model.problem.labels, ((r.truth, r.prediction.label) for r in records)
    )
    _classifier_logger.info(
        f"评估完成 (Evaluation done): accuracy {matrix.accuracy:.4f} over {matrix.total} samples",
        extra={"accuracy": matrix.accuracy, "samples": matrix.total},
    )
    return matrix, records


def evaluate(model: ClassifierModel, truth: Sequence[LabeledSample]) -> ConfusionMatrix:
    """见 `evaluate_detailed`。(See `evaluate_detailed`.)"""
    matrix, _ = evaluate_detailed(model, truth)
    return matrix


def leave_one_out_accuracy(samples: Sequence[LabeledSample]) -> float:
    """
    留一法 1-NN 准确率；每一折都在其余样本上重新拟合归一化参数。
    (Leave-one-out 1-NN accuracy; every fold refits the normalization on the
    remaining samples.)

    异常 (Raises):
        EmptyTableError: 样本少于 2 个。(Fewer than 2 samples.)
    """
    if len(samples) < 2:
        raise EmptyTableError("leave-one-out needs at least 2 samples")

    ordered = sorted(samples, key=lambda s: s.id)
    matrix = feature_matrix(ordered)
    labels = [s.label for s in ordered]
    correct = 0
    for k in range(len(ordered)):
        rest = np.delete(matrix, k, axis=0)
        means = rest.mean(axis=0)
        stddevs = rest.std(axis=0)
        stddevs[stddevs < ZERO_VARIANCE_EPS] = 1.0
        table = (rest - means) / stddevs
        query = (matrix[k] - means) / stddevs
        best = int(np.argmin(np.sum((table - query) ** 2, axis=1)))
        neighbor = best if best < k else best + 1
        correct += labels[neighbor] is labels[k]
    return correct / len(ordered)


# endregion

__all__ = [
    "CLASS_IMBALANCE_FACTOR",
    "train",
    "classify",
    "classify_frame",
    "confusion_from_pairs",
    "evaluate_detailed",
    "evaluate",
    "leave_one_out_accuracy",
]
