# -*- coding: utf-8 -*-
"""
图像相关的Pydantic模型模块。
(Pydantic Models Module for Images.)

此模块定义了彩色帧、二值掩码、连通分量以及感兴趣区域 (ROI) 的数据模型。
像素数据以只读 numpy 数组保存，行优先 (row-major)，形状为 (height, width[, 3])。
(This module defines data models for color frames, binary masks, connected
components and regions of interest (ROI). Pixel data is held as read-only
numpy arrays, row-major, shaped (height, width[, 3]).)
"""

from typing import Any, Tuple

import numpy as np
from pydantic import BaseModel, Field, field_validator, model_validator


def _frozen_copy(array: np.ndarray, dtype) -> np.ndarray:
    copied = np.array(array, dtype=dtype, copy=True)
    copied.setflags(write=False)
    return copied


class _ArrayModel(BaseModel):
    """带 numpy 字段的模型基类，按数组内容比较相等。(Base for models with numpy fields; equality compares array contents.)"""

    model_config = {"arbitrary_types_allowed": True, "frozen": True}

    def __eq__(self, other: Any) -> bool:
        if type(self) is not type(other):
            return NotImplemented
        for name in type(self).model_fields:
            mine, theirs = getattr(self, name), getattr(other, name)
            if isinstance(mine, np.ndarray):
                if not np.array_equal(mine, theirs):
                    return False
            elif mine != theirs:
                return False
        return True


class RgbFrame(_ArrayModel):
    """
    解码后的彩色帧 (Decoded color frame)。
    `pixels` 形状为 (height, width, 3)，dtype 为 uint8。
    """

    pixels: np.ndarray

    @field_validator("pixels", mode="before")
    @classmethod
    def check_pixels(cls, v: Any) -> np.ndarray:
        array = np.asarray(v)
        if array.ndim != 3 or array.shape[2] != 3:
            raise ValueError(f"pixels must have shape (height, width, 3), got {array.shape}")
        if array.shape[0] < 1 or array.shape[1] < 1:
            raise ValueError("frame must be at least 1x1")
        if array.dtype != np.uint8:
            if array.size and (array.min() < 0 or array.max() > 255):
                raise ValueError("pixel components must lie in [0, 255]")
        return _frozen_copy(array, np.uint8)

    @property
    def width(self) -> int:
        return int(self.pixels.shape[1])

    @property
    def height(self) -> int:
        return int(self.pixels.shape[0])


class BinaryMask(_ArrayModel):
    """
    二值掩码 (Binary mask)。`bits` 为 (height, width) 的布尔数组，True 表示前景。
    (`bits` is a (height, width) boolean array, True = foreground.)
    """

    bits: np.ndarray

    @field_validator("bits", mode="before")
    @classmethod
    def check_bits(cls, v: Any) -> np.ndarray:
        array = np.asarray(v)
        if array.ndim != 2:
            raise ValueError(f"bits must be two-dimensional, got shape {array.shape}")
        return _frozen_copy(array, bool)

    @property
    def width(self) -> int:
        return int(self.bits.shape[1])

    @property
    def height(self) -> int:
        return int(self.bits.shape[0])


class Component(BaseModel):
    """
    8-连通的前景连通分量。`bbox` 为 (min_x, min_y, max_x, max_y)，闭区间像素坐标。
    (8-connected foreground component. `bbox` is (min_x, min_y, max_x, max_y),
    inclusive pixel coordinates.)
    """

    id: int = Field(..., ge=0, description="按光栅扫描发现顺序的序号 (Raster-scan discovery ordinal)")
    pixel_count: int = Field(..., ge=1)
    bbox: Tuple[int, int, int, int]

    model_config = {"frozen": True}


class BinaryRoi(_ArrayModel):
    """
    裁剪后的二值感兴趣区域，以及其中保留的连通分量数 ("多边形数")。
    (Cropped binary region of interest plus the count of retained components,
    the "polygon count".)
    """

    bits: np.ndarray
    polygon_count: int = Field(..., ge=1)

    @field_validator("bits", mode="before")
    @classmethod
    def check_bits(cls, v: Any) -> np.ndarray:
        array = np.asarray(v)
        if array.ndim != 2:
            raise ValueError(f"bits must be two-dimensional, got shape {array.shape}")
        return _frozen_copy(array, bool)

    @model_validator(mode="after")
    def check_foreground(self) -> "BinaryRoi":
        if not self.bits.any():
            raise ValueError("a BinaryRoi needs at least one foreground bit")
        return self

    @property
    def width(self) -> int:
        return int(self.bits.shape[1])

    @property
    def height(self) -> int:
        return int(self.bits.shape[0])

    @property
    def foreground_count(self) -> int:
        return int(np.count_nonzero(self.bits))


__all__ = ["RgbFrame", "BinaryMask", "Component", "BinaryRoi"]
