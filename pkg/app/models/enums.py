# -*- coding: utf-8 -*-
"""
共享枚举类型模块。
(Shared Enumeration Types Module.)

此模块定义了在整个应用中可能被多个模块复用的枚举类型：
颜色通道、分类问题、类别标签、合成形状类型以及错误类别。
(This module defines enumeration types reused across the application:
color channels, classification problems, class labels, synthetic shape
kinds and error kinds.)
"""

from enum import Enum
from typing import Tuple


class LogLevelEnum(str, Enum):
    """
    日志级别枚举。
    (Log Level Enumeration.)
    """

    DEBUG = "DEBUG"
    INFO = "INFO"
    WARNING = "WARNING"
    ERROR = "ERROR"
    CRITICAL = "CRITICAL"


class ColorChannel(str, Enum):
    """
    多普勒颜色通道。蓝色为远离探头的血流，红色为朝向探头的血流。
    (Doppler color channel. Blue is flow away from the probe, red is flow toward it.)
    """

    BLUE = "Blue"
    RED = "Red"


class ClassLabel(str, Enum):
    """
    帧类别标签。CSV 中区分大小写。
    (Frame class label. Case-sensitive in CSV files.)
    """

    V = "V"
    X = "X"
    PARALLEL = "Parallel"
    OTHER = "Other"


class Problem(str, Enum):
    """
    两个相互独立的分类问题：蓝色 {V, X, Other} 与红色 {Parallel, Other}。
    (The two independent classification problems: blue {V, X, Other}
    and red {Parallel, Other}.)

    CLI 中分别以 `blue` / `red` 表示。
    (Spelled `blue` / `red` on the command line.)
    """

    BLUE_SIGNATURES = "BlueSignatures"
    RED_PARALLEL = "RedParallel"

    @property
    def labels(self) -> Tuple[ClassLabel, ...]:
        """该问题的有序标签集合。(Ordered label set of this problem.)"""
        if self is Problem.BLUE_SIGNATURES:
            return (ClassLabel.V, ClassLabel.X, ClassLabel.OTHER)
        return (ClassLabel.PARALLEL, ClassLabel.OTHER)

    @property
    def channel(self) -> ColorChannel:
        """该问题绑定的颜色通道。(Color channel bound to this problem.)"""
        if self is Problem.BLUE_SIGNATURES:
            return ColorChannel.BLUE
        return ColorChannel.RED

    @classmethod
    def from_cli(cls, name: str) -> "Problem":
        """
        将命令行名称 (`blue` / `red`) 或枚举值解析为 Problem。
        (Parses a CLI name (`blue` / `red`) or an enum value into a Problem.)
        """
        lowered = name.strip().lower()
        if lowered in ("blue", "bluesignatures"):
            return cls.BLUE_SIGNATURES
        if lowered in ("red", "redparallel"):
            return cls.RED_PARALLEL
        raise ValueError(f"未知的分类问题 (Unknown problem): {name!r}")


class ShapeKind(str, Enum):
    """
    合成形状类型。
    (Synthetic shape kinds.)

    - `V`: 共享一个端点的两笔画。
    - `X`: 两条完整交叉的笔画。
    - `Parallel`: 两条方向相同且互不接触的笔画。
    - `OtherBlob`: 1–4 个随机实心椭圆。
    - `OtherLine`: 单条直线笔画。
    (
    - `V`: two strokes sharing one endpoint.
    - `X`: two full-length crossing strokes.
    - `Parallel`: two non-touching strokes with equal direction.
    - `OtherBlob`: 1–4 random filled ellipses.
    - `OtherLine`: one straight stroke.
    )
    """

    V = "V"
    X = "X"
    PARALLEL = "Parallel"
    OTHER_BLOB = "OtherBlob"
    OTHER_LINE = "OtherLine"


class ErrorKindEnum(str, Enum):
    """
    错误类别，用于命令行 `ERROR:<kind>:<detail>` 输出。
    (Error kinds, used in the CLI `ERROR:<kind>:<detail>` line.)
    """

    NO_FOREGROUND = "NoForeground"
    INVALID_INDEX = "InvalidIndex"
    EMPTY_TABLE = "EmptyTable"
    PARSE_ERROR = "ParseError"
    INVALID_LABEL = "InvalidLabel"
    DUPLICATE_ID = "DuplicateId"
    MISSING_LABEL = "MissingLabel"
    VERSION_MISMATCH = "VersionMismatch"
    PROBLEM_MISMATCH = "ProblemMismatch"
    DEGENERATE_SPEC = "DegenerateSpec"
    IO_ERROR = "IoError"
    INTERNAL = "Internal"


__all__ = [
    "LogLevelEnum",
    "ColorChannel",
    "ClassLabel",
    "Problem",
    "ShapeKind",
    "ErrorKindEnum",
]
