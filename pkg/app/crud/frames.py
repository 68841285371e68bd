# -*- coding: utf-8 -*-
"""
帧与 ROI 图像文件的读写模块 (Frame & ROI Image File IO Module)。

彩色帧以 PNG 或 PPM 读写；二值 ROI 以 8 位 PGM 写出 (前景 255，背景 0)。
所有 OSError (包括无法识别的图像) 均转换为 IoError。
(Color frames are read and written as PNG or PPM; binary ROIs are written as
8-bit PGM, foreground 255 and background 0. Every OSError, unidentifiable
images included, becomes an IoError.)
"""

import io
import logging
from pathlib import Path

import numpy as np
from PIL import Image

from ..core.errors import IoError
from ..models.image_models import BinaryRoi, RgbFrame
from ..services.imaging import roi_from_bits
from ..utils.helpers import atomic_write_bytes

_frames_logger = logging.getLogger(__name__)

# PGM 中判为前景的最小灰度 (smallest gray level read back as foreground)
ROI_FOREGROUND_THRESHOLD = 128


def _pillow_format(path: Path) -> str:
    suffix = path.suffix.lower()
    if suffix == ".png":
        return "PNG"
    if suffix in (".ppm", ".pgm", ".pnm"):
        return "PPM"
    raise IoError(path, f"unsupported image suffix '{path.suffix}'")


def _load_image(path: Path, mode: str) -> np.ndarray:
    try:
        with Image.open(path) as image:
            return np.asarray(image.convert(mode))
    except OSError as e:
        raise IoError(path, e.strerror or str(e)) from e


def _save_image(image: Image.Image, path: Path) -> None:
    buffer = io.BytesIO()
    image.save(buffer, format=_pillow_format(path))
    atomic_write_bytes(path, buffer.getvalue())


def read_frame(path: Path) -> RgbFrame:
    """读取 PNG / PPM 彩色帧。(Reads a PNG / PPM color frame.)"""
    path = Path(path)
    frame = RgbFrame(pixels=_load_image(path, "RGB"))
    _frames_logger.debug(f"读取帧 (Read frame) {path.name}: {frame.width}x{frame.height}")
    return frame


def write_frame(frame: RgbFrame, path: Path) -> None:
    """按后缀写出 PNG 或 PPM 彩色帧。(Writes a color frame as PNG or PPM, by suffix.)"""
    _save_image(Image.fromarray(np.ascontiguousarray(frame.pixels)), Path(path))


def write_roi_pgm(roi: BinaryRoi, path: Path) -> None:
    """以 8 位二进制 PGM (P5) 写出 ROI。(Writes a ROI as 8-bit binary PGM, P5.)"""
    gray = np.where(roi.bits, 255, 0).astype(np.uint8)
    _save_image(Image.fromarray(gray), Path(path))


def read_roi_pgm(path: Path) -> BinaryRoi:
    """
    读取 PGM ROI；多边形数由 8-连通分量重新计数。
    (Reads a PGM ROI; the polygon count is recounted from its 8-connected
    components.)

    异常 (Raises):
        IoError: 文件不可读或不是图像。(Unreadable or not an image.)
        NoForegroundError: 图像中没有前景像素。(The image has no foreground pixel.)
    """
    gray = _load_image(Path(path), "L")
    return roi_from_bits(gray >= ROI_FOREGROUND_THRESHOLD)


__all__ = [
    "ROI_FOREGROUND_THRESHOLD",
    "read_frame",
    "write_frame",
    "write_roi_pgm",
    "read_roi_pgm",
]
