# -*- coding: utf-8 -*-
"""
测试用的数据构造函数。
(Data builders for tests.)
"""

from typing import List, Sequence

import numpy as np

from app.models.enums import ClassLabel
from app.models.feature_models import FEATURE_LENGTH, FeatureVector, LabeledSample
from app.models.image_models import BinaryMask, RgbFrame


def feature_vector(*head: float, fill: float = 0.0) -> FeatureVector:
    """前几个值由参数给出，其余填充为 `fill`。(Leading values from the arguments, the rest `fill`.)"""
    values = list(head) + [fill] * (FEATURE_LENGTH - len(head))
    return FeatureVector(values=tuple(float(v) for v in values))


def sample(sample_id: str, label: ClassLabel, *head: float) -> LabeledSample:
    return LabeledSample(id=sample_id, label=label, features=feature_vector(*head))


def random_samples(
    rng: np.random.Generator,
    labels: Sequence[ClassLabel],
    count: int,
    prefix: str = "s",
) -> List[LabeledSample]:
    """随机但合法的原始样本表。(A random but valid raw sample table.)"""
    samples = []
    for k in range(count):
        head = (
            float(rng.integers(1, 200)),
            float(rng.integers(1, 200)),
            float(rng.integers(1, 5)),
        )
        zernike = tuple(float(v) for v in rng.random(FEATURE_LENGTH - 3))
        samples.append(
            LabeledSample(
                id=f"{prefix}{k:04d}",
                label=labels[k % len(labels)],
                features=FeatureVector(values=head + zernike),
            )
        )
    return samples


def mask_from_rows(rows: Sequence[str]) -> BinaryMask:
    """'#' 为前景、'.' 为背景的文本掩码。('#' is foreground, '.' is background.)"""
    return BinaryMask(bits=np.array([[c == "#" for c in row] for row in rows], dtype=bool))


def frame_from_bits(
    bits: np.ndarray, color=(0, 0, 255), background=(40, 40, 40)
) -> RgbFrame:
    pixels = np.empty(bits.shape + (3,), dtype=np.uint8)
    pixels[...] = background
    pixels[bits] = color
    return RgbFrame(pixels=pixels)
