# -*- coding: utf-8 -*-
"""
合成形状相关的Pydantic模型模块。
(Pydantic Models Module for Synthetic Shapes.)
"""

from typing import NamedTuple

from pydantic import BaseModel, Field

from .enums import ClassLabel, ShapeKind
from .image_models import BinaryRoi

MAX_JITTER = 0.3


class ShapeSpec(BaseModel):
    """
    一个合成形状的完整描述；相同的 spec (含种子) 生成逐位相同的 ROI。
    (Complete description of one synthetic shape; an identical spec, seed
    included, yields a bit-identical ROI.)
    """

    kind: ShapeKind
    canvas: int = Field(64, ge=32, description="方形画布边长 (Square canvas side, pixels)")
    stroke: int = Field(5, ge=1, description="笔画粗细 (Stroke thickness, pixels)")
    angle: float = Field(0.0, description="整体旋转角度 (Global rotation, degrees)")
    jitter: float = Field(
        0.15, ge=0.0, le=MAX_JITTER, description="端点扰动比例 (Endpoint perturbation fraction)"
    )
    seed: int = Field(0, ge=0, lt=2**64)

    model_config = {"frozen": True}


class SyntheticItem(NamedTuple):
    """合成语料中的一项。(One item of a synthetic corpus.)"""

    sample_id: str
    label: ClassLabel
    spec: ShapeSpec
    roi: BinaryRoi


__all__ = ["MAX_JITTER", "ShapeSpec", "SyntheticItem"]
