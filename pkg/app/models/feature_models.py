# -*- coding: utf-8 -*-
"""
特征相关的Pydantic模型模块。
(Pydantic Models Module for Features.)

此模块定义了 28 维特征向量、带标签样本以及逐特征归一化参数的数据模型。
(This module defines data models for the 28-value feature vector, labeled
samples and the per-feature normalization parameters.)
"""

import math
from typing import Tuple

from pydantic import BaseModel, Field, field_validator

from .enums import ClassLabel

FEATURE_LENGTH = 28


def _check_length_and_finite(values: Tuple[float, ...], what: str) -> Tuple[float, ...]:
    if len(values) != FEATURE_LENGTH:
        raise ValueError(f"{what} must hold exactly {FEATURE_LENGTH} values, got {len(values)}")
    for k, value in enumerate(values):
        if not math.isfinite(value):
            raise ValueError(f"{what}[{k}] is not finite: {value}")
    return values


class FeatureVector(BaseModel):
    """
    有序的 28 维特征向量 (Ordered 28-value feature vector)。

    - [0] ROI 宽度 (ROI width in pixels)
    - [1] ROI 高度 (ROI height in pixels)
    - [2] 多边形数 (polygon count)
    - [3..27] 按规范顺序的 25 个 Zernike 矩幅值 (the 25 Zernike magnitudes, canonical order)

    归一化后的向量同样使用此模型，因此这里只校验长度与有限性；
    原始向量的取值约束见 `is_raw`。
    (Normalized vectors use this model too, so only length and finiteness are
    validated here; the raw-value contract is exposed through `is_raw`.)
    """

    values: Tuple[float, ...]

    @field_validator("values")
    @classmethod
    def check_values(cls, v: Tuple[float, ...]) -> Tuple[float, ...]:
        return _check_length_and_finite(v, "values")

    @property
    def is_raw(self) -> bool:
        """宽高 ≥ 1 且多边形数为 ≥ 1 的整数。(Width/height ≥ 1 and an integral polygon count ≥ 1.)"""
        width, height, polygons = self.values[:3]
        return width >= 1 and height >= 1 and polygons >= 1 and float(polygons).is_integer()

    model_config = {"frozen": True}


class LabeledSample(BaseModel):
    """
    一条带标签的样本：来源帧的 id、类别标签以及原始 (未归一化) 特征向量。
    (One labeled sample: source frame id, class label and the raw, unnormalized
    feature vector.)
    """

    id: str = Field(..., min_length=1, description="来源帧文件名 (Source frame basename)")
    label: ClassLabel
    features: FeatureVector

    model_config = {"frozen": True}


class Normalization(BaseModel):
    """
    逐特征的总体均值与总体标准差。零方差特征的标准差记为 1。
    (Per-feature population means and population standard deviations. Zero
    variance features carry a standard deviation of 1.)
    """

    means: Tuple[float, ...]
    stddevs: Tuple[float, ...]

    @field_validator("means")
    @classmethod
    def check_means(cls, v: Tuple[float, ...]) -> Tuple[float, ...]:
        return _check_length_and_finite(v, "means")

    @field_validator("stddevs")
    @classmethod
    def check_stddevs(cls, v: Tuple[float, ...]) -> Tuple[float, ...]:
        _check_length_and_finite(v, "stddevs")
        for k, value in enumerate(v):
            if value <= 0.0:
                raise ValueError(f"stddevs[{k}] must be > 0, got {value}")
        return v

    @classmethod
    def identity(cls) -> "Normalization":
        """均值 0、标准差 1 的恒等归一化。(Identity normalization: means 0, stddevs 1.)"""
        return cls(means=(0.0,) * FEATURE_LENGTH, stddevs=(1.0,) * FEATURE_LENGTH)

    model_config = {"frozen": True}


__all__ = ["FEATURE_LENGTH", "FeatureVector", "LabeledSample", "Normalization"]
