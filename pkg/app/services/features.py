# -*- coding: utf-8 -*-
"""
特征组装与归一化服务模块 (Feature Assembly & Normalization Service Module)。

每个 ROI 被描述为 28 个数值：宽度、高度、多边形数以及 25 个 Zernike 矩幅值。
归一化为逐特征 z-score，使用总体标准差；零方差特征的标准差取 1。
(Each ROI is described by 28 values: width, height, polygon count and the 25
Zernike magnitudes. Normalization is a per-feature z-score using the population
standard deviation; zero-variance features get a standard deviation of 1.)
"""

import logging
from typing import List, Sequence

import numpy as np

from ..core.errors import EmptyTableError
from ..models.feature_models import FeatureVector, LabeledSample, Normalization
from ..models.image_models import BinaryRoi
from .zernike import canonical_index_set, zernike_feature_set

_features_logger = logging.getLogger(__name__)

# 标准差低于此值视为零方差 (stddevs below this count as zero variance)
ZERO_VARIANCE_EPS = 1e-12

FEATURE_NAMES: List[str] = ["width", "height", "polygon_count"] + [
    idx.column_name for idx in canonical_index_set()
]


def featurize(roi: BinaryRoi) -> FeatureVector:
    """
    组装 ROI 的 28 维原始特征向量。
    (Assembles the raw 28-value feature vector of a ROI.)
    """
    zernike = zernike_feature_set(roi)
    return FeatureVector(
        values=(float(roi.width), float(roi.height), float(roi.polygon_count))
        + zernike.values
    )


def feature_matrix(samples: Sequence[LabeledSample]) -> np.ndarray:
    """(N, 28) float64 矩阵，行序与输入一致。(An (N, 28) float64 matrix in input order.)"""
    if not samples:
        return np.zeros((0, len(FEATURE_NAMES)), dtype=np.float64)
    return np.array([s.features.values for s in samples], dtype=np.float64)


def fit_normalization(samples: Sequence[LabeledSample]) -> Normalization:
    """
    拟合逐特征的总体均值与总体标准差。
    (Fits per-feature population means and population standard deviations.)

    统计量在按 id 排序后的样本上计算，因此与样本顺序无关 (逐位一致)。
    (Statistics are computed over the id-sorted samples, so the result is
    bit-identical for any ordering of the input.)

    异常 (Raises):
        EmptyTableError: 没有样本。(No samples.)
    """
    if not samples:
        raise EmptyTableError("cannot fit a normalization on an empty table")

    matrix = feature_matrix(sorted(samples, key=lambda s: s.id))
    means = matrix.mean(axis=0)
    stddevs = matrix.std(axis=0)
    constant = stddevs < ZERO_VARIANCE_EPS
    stddevs[constant] = 1.0

    if constant.any():
        _features_logger.debug(
            f"{int(constant.sum())} 个零方差特征使用标准差 1 "
            f"({int(constant.sum())} zero-variance feature(s) use stddev 1): "
            f"{[FEATURE_NAMES[k] for k in np.flatnonzero(constant)]}"
        )

    return Normalization(
        means=tuple(float(v) for v in means),
        stddevs=tuple(float(v) for v in stddevs),
    )


def normalize_matrix(norm: Normalization, matrix: np.ndarray) -> np.ndarray:
    """对 (N, 28) 矩阵逐行做 z-score。(Row-wise z-score of an (N, 28) matrix.)"""
    return (matrix - np.asarray(norm.means)) / np.asarray(norm.stddevs)


def apply_normalization(norm: Normalization, fv: FeatureVector) -> FeatureVector:
    """values'[k] = (values[k] − means[k]) / stddevs[k]"""
    normalized = normalize_matrix(norm, np.asarray(fv.values, dtype=np.float64))
    return FeatureVector(values=tuple(float(v) for v in normalized))


__all__ = [
    "FEATURE_NAMES",
    "ZERO_VARIANCE_EPS",
    "featurize",
    "feature_matrix",
    "fit_normalization",
    "normalize_matrix",
    "apply_normalization",
]
