# -*- coding: utf-8 -*-
"""
app.models 包初始化文件。
(app.models package initialization file.)

此包集中了应用中所有 Pydantic 数据模型：图像、特征、分类器、合成形状与运行台账。
(This package centralizes all Pydantic data models of the application: images,
features, the classifier, synthetic shapes and the run ledger.)

例如 (e.g.): `from app.models import BinaryRoi, LabeledSample, ClassifierModel`
"""

from .classifier_models import (
    MODEL_FORMAT_VERSION,
    NO_FOREGROUND_PREDICTION,
    ClassifierModel,
    ConfusionMatrix,
    Prediction,
    ReportRecord,
)
from .enums import (
    ClassLabel,
    ColorChannel,
    ErrorKindEnum,
    LogLevelEnum,
    Problem,
    ShapeKind,
)
from .feature_models import FEATURE_LENGTH, FeatureVector, LabeledSample, Normalization
from .image_models import BinaryMask, BinaryRoi, Component, RgbFrame
from .run_log_models import RunLogEntry
from .synth_models import ShapeSpec, SyntheticItem

__all__ = [
    # enums
    "ClassLabel",
    "ColorChannel",
    "ErrorKindEnum",
    "LogLevelEnum",
    "Problem",
    "ShapeKind",
    # image_models
    "BinaryMask",
    "BinaryRoi",
    "Component",
    "RgbFrame",
    # feature_models
    "FEATURE_LENGTH",
    "FeatureVector",
    "LabeledSample",
    "Normalization",
    # classifier_models
    "MODEL_FORMAT_VERSION",
    "NO_FOREGROUND_PREDICTION",
    "ClassifierModel",
    "ConfusionMatrix",
    "Prediction",
    "ReportRecord",
    # synth_models
    "ShapeSpec",
    "SyntheticItem",
    # run_log_models
    "RunLogEntry",
]
