# -*- coding: utf-8 -*-
"""
彩色帧分割服务模块 (Color Frame Segmentation Service Module)。

将解码后的彩色多普勒帧转换为单一颜色通道的二值感兴趣区域：
HSV 阈值 -> 形态学开运算 -> 8-连通分量标记 -> 面积过滤 -> 外接框裁剪。
(Turns decoded color-Doppler frames into per-channel binary regions of
interest: HSV thresholding -> morphological opening -> 8-connected component
labeling -> area filter -> bounding-box crop.)

所有函数均为输入的纯函数，可在不同帧上并发调用。
(All functions are pure functions of their inputs and may run concurrently on
distinct frames.)
"""

# region 模块导入 (Module Imports)
import logging
from typing import List, Optional, Tuple

import numpy as np
from matplotlib.colors import rgb_to_hsv as _mpl_rgb_to_hsv
from scipy import ndimage

from ..core.config import SegmentationConfig
from ..core.errors import NoForegroundError
from ..models.enums import ColorChannel
from ..models.image_models import BinaryMask, BinaryRoi, Component, RgbFrame

# endregion

_imaging_logger = logging.getLogger(__name__)

# 8-连通结构元 (8-connectivity structuring element)
_EIGHT_CONNECTIVITY = np.ones((3, 3), dtype=bool)


# region 颜色空间 (Color Space)


def rgb_to_hsv(r: int, g: int, b: int) -> Tuple[float, float, float]:
    """
    将单个 RGB 字节三元组转换为 (色相度数, 饱和度, 明度)。
    (Converts one RGB byte triple into (hue degrees, saturation, value).)

    无彩色输入 (r=g=b) 返回 h = 0, s = 0。
    (Achromatic inputs (r=g=b) return h = 0, s = 0.)
    """
    hsv = _hsv_array(np.array([[[r, g, b]]], dtype=np.uint8))[0, 0]
    return float(hsv[0]), float(hsv[1]), float(hsv[2])


def _hsv_array(pixels: np.ndarray) -> np.ndarray:
    """(H, W, 3) uint8 -> (H, W, 3) float64，色相以度为单位，位于 [0, 360)。"""
    hsv = _mpl_rgb_to_hsv(pixels.astype(np.float64) / 255.0)
    hsv[..., 0] = np.mod(hsv[..., 0] * 360.0, 360.0)
    return hsv


def _hue_in_range(hue: np.ndarray, hue_range: Tuple[float, float]) -> np.ndarray:
    lo, hi = hue_range
    if lo <= hi:
        return (hue >= lo) & (hue <= hi)
    # 跨越 0° 的范围 (range wrapping through 0°)
    return (hue >= lo) | (hue <= hi)


def color_mask(
    frame: RgbFrame, channel: ColorChannel, cfg: SegmentationConfig
) -> BinaryMask:
    """
    按颜色通道的色相范围、最小饱和度与最小明度对帧做阈值分割。
    (Thresholds a frame by the channel's hue range, minimum saturation and
    minimum value.)
    """
    hsv = _hsv_array(frame.pixels)
    bits = (
        _hue_in_range(hsv[..., 0], cfg.hue_range(channel))
        & (hsv[..., 1] >= cfg.sat_min)
        & (hsv[..., 2] >= cfg.val_min)
    )
    return BinaryMask(bits=bits)


# endregion

# region 形态学与连通分量 (Morphology & Components)


def morphological_open(mask: BinaryMask, radius: int) -> BinaryMask:
    """
    以边长 2·radius+1 的方形结构元做开运算 (先腐蚀后膨胀)；radius = 0 为恒等变换。
    掩码外部视为背景。
    (Opening with a square structuring element of side 2·radius+1, erosion then
    dilation; radius = 0 is the identity. Outside the mask counts as background.)
    """
    if radius < 0:
        raise ValueError(f"radius must be >= 0, got {radius}")
    if radius == 0:
        return mask
    structure = np.ones((2 * radius + 1, 2 * radius + 1), dtype=bool)
    eroded = ndimage.binary_erosion(mask.bits, structure=structure, border_value=0)
    opened = ndimage.binary_dilation(eroded, structure=structure, border_value=0)
    # 结果不超出原掩码 (never exceeds the input mask)
    return BinaryMask(bits=opened & mask.bits)


def _label(bits: np.ndarray) -> Tuple[np.ndarray, int]:
    # ndimage.label 按光栅扫描的首次出现顺序编号 (labels follow first raster-scan occurrence)
    labels, count = ndimage.label(bits, structure=_EIGHT_CONNECTIVITY)
    return labels, int(count)


def _components_from_labels(labels: np.ndarray, count: int) -> List[Component]:
    if count == 0:
        return []
    pixel_counts = np.bincount(labels.ravel(), minlength=count + 1)
    components: List[Component] = []
    for index, slices in enumerate(ndimage.find_objects(labels)):
        rows, cols = slices
        components.append(
            Component(
                id=index,
                pixel_count=int(pixel_counts[index + 1]),
                bbox=(cols.start, rows.start, cols.stop - 1, rows.stop - 1),
            )
        )
    return components


def connected_components(mask: BinaryMask) -> List[Component]:
    """
    8-连通分量，按光栅扫描首次遇到的顺序排列；空掩码返回空列表。
    (8-connected components ordered by first raster-scan encounter; an empty
    mask yields an empty list.)
    """
    labels, count = _label(mask.bits)
    return _components_from_labels(labels, count)


# endregion

# region ROI 提取 (ROI Extraction)


def extract_roi(mask: BinaryMask, cfg: SegmentationConfig) -> BinaryRoi:
    """
    丢弃像素数小于 `min_component_area` 的分量，并裁剪到保留分量并集的紧致外接框。
    被丢弃分量的像素在 ROI 中置为背景。
    (Discards components with fewer than `min_component_area` pixels and crops
    to the tight bounding box of the union of survivors. Pixels of discarded
    components are cleared inside the ROI.)

    异常 (Raises):
        NoForegroundError: 没有分量通过面积过滤。(No component survives the area filter.)
    """
    labels, count = _label(mask.bits)
    components = _components_from_labels(labels, count)
    survivors = [c for c in components if c.pixel_count >= cfg.min_component_area]

    if not survivors:
        raise NoForegroundError(
            f"no component with at least {cfg.min_component_area} pixels "
            f"({len(components)} smaller component(s) discarded)"
        )

    keep = np.zeros(count + 1, dtype=bool)
    keep[[c.id + 1 for c in survivors]] = True
    kept_bits = keep[labels]

    min_x = min(c.bbox[0] for c in survivors)
    min_y = min(c.bbox[1] for c in survivors)
    max_x = max(c.bbox[2] for c in survivors)
    max_y = max(c.bbox[3] for c in survivors)

    if len(survivors) < len(components):
        _imaging_logger.debug(
            f"面积过滤丢弃了 {len(components) - len(survivors)} 个分量 "
            f"(area filter dropped {len(components) - len(survivors)} component(s))"
        )

    return BinaryRoi(
        bits=kept_bits[min_y : max_y + 1, min_x : max_x + 1],
        polygon_count=len(survivors),
    )


def roi_from_bits(bits: np.ndarray) -> BinaryRoi:
    """
    由已裁剪的二值数组 (例如读入的 PGM ROI) 重建 BinaryRoi，多边形数由连通分量重新计数。
    (Rebuilds a BinaryRoi from an already cropped binary array, such as a PGM ROI
    read from disk; the polygon count is recounted from its components.)
    """
    _, count = _label(np.asarray(bits, dtype=bool))
    if count == 0:
        raise NoForegroundError("ROI image has no foreground pixel")
    return BinaryRoi(bits=bits, polygon_count=count)


def segment_frame(
    frame: RgbFrame, channel: ColorChannel, cfg: SegmentationConfig
) -> Optional[BinaryRoi]:
    """
    完整分割流程；帧中没有可用前景时返回 None。
    (Full segmentation chain; returns None when the frame has no usable foreground.)
    """
    mask = morphological_open(color_mask(frame, channel, cfg), cfg.open_radius)
    try:
        return extract_roi(mask, cfg)
    except NoForegroundError as e:
        _imaging_logger.debug(f"帧无前景 (frame has no foreground): {e.detail}")
        return None


# endregion

__all__ = [
    "rgb_to_hsv",
    "color_mask",
    "morphological_open",
    "connected_components",
    "extract_roi",
    "roi_from_bits",
    "segment_frame",
]
