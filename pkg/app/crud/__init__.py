# -*- coding: utf-8 -*-
"""
app.crud 包初始化文件。

此包包含所有文件持久化逻辑：帧与 ROI 图像 (frames)、特征表与标签表 (feature_table)
以及模型 JSON (model_store)。读写失败统一抛出 IoError。
(This package holds all file persistence: frame and ROI images (frames),
feature and label tables (feature_table) and model JSON (model_store). Read and
write failures are raised uniformly as IoError.)
"""

from .feature_table import (
    read_feature_csv,
    read_labels_csv,
    write_feature_csv,
    write_labels_csv,
)
from .frames import read_frame, read_roi_pgm, write_frame, write_roi_pgm
from .model_store import load_model, save_model

__all__ = [
    "read_feature_csv",
    "read_labels_csv",
    "write_feature_csv",
    "write_labels_csv",
    "read_frame",
    "read_roi_pgm",
    "write_frame",
    "write_roi_pgm",
    "load_model",
    "save_model",
]
