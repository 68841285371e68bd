# -*- coding: utf-8 -*-
"""
领域异常模块 (Domain Exceptions Module)。

所有可预期的失败都以 `EchoSigError` 的子类抛出。每个异常携带一个
`ErrorKindEnum` 类别和命令行退出码：IO 失败为 2，数据错误为 3。
(Every expected failure is raised as a subclass of `EchoSigError`. Each
exception carries an `ErrorKindEnum` kind and a CLI exit code: 2 for IO
failures, 3 for data errors.)
"""

from typing import Optional

from ..models.enums import ErrorKindEnum

EXIT_OK = 0
EXIT_IO_ERROR = 2
EXIT_DATA_ERROR = 3


class EchoSigError(Exception):
    """
    所有领域异常的基类。
    (Base class of all domain exceptions.)
    """

    kind: ErrorKindEnum = ErrorKindEnum.INTERNAL
    exit_code: int = EXIT_DATA_ERROR

    def __init__(self, detail: str):
        super().__init__(detail)
        self.detail = detail

    def cli_line(self) -> str:
        """
        单行、可机器解析的错误描述 `ERROR:<kind>:<detail>`。
        (Single-line machine-parsable reason `ERROR:<kind>:<detail>`.)
        """
        flat = " ".join(str(self.detail).split())
        return f"ERROR:{self.kind.value}:{flat}"


class NoForegroundError(EchoSigError):
    """面积过滤后没有任何连通分量保留。(No component survives the area filter.)"""

    kind = ErrorKindEnum.NO_FOREGROUND


class InvalidIndexError(EchoSigError):
    kind = ErrorKindEnum.INVALID_INDEX


class EmptyTableError(EchoSigError):
    kind = ErrorKindEnum.EMPTY_TABLE


class ParseError(EchoSigError):
    """
    文件内容格式错误。`row` 为 1 起始的行号（表头为第 1 行）。
    (Malformed file content. `row` is the 1-based line number, header is row 1.)
    """

    kind = ErrorKindEnum.PARSE_ERROR

    def __init__(self, detail: str, row: Optional[int] = None):
        if row is not None:
            detail = f"row {row}: {detail}"
        super().__init__(detail)
        self.row = row


class InvalidLabelError(EchoSigError):
    kind = ErrorKindEnum.INVALID_LABEL

    def __init__(self, detail: str, sample_id: Optional[str] = None):
        super().__init__(detail)
        self.sample_id = sample_id


class DuplicateIdError(EchoSigError):
    kind = ErrorKindEnum.DUPLICATE_ID

    def __init__(self, sample_id: str):
        super().__init__(f"duplicate sample id '{sample_id}'")
        self.sample_id = sample_id


class MissingLabelError(EchoSigError):
    kind = ErrorKindEnum.MISSING_LABEL

    def __init__(self, sample_id: str):
        super().__init__(f"no label for '{sample_id}'")
        self.sample_id = sample_id


class VersionMismatchError(EchoSigError):
    kind = ErrorKindEnum.VERSION_MISMATCH


class ProblemMismatchError(EchoSigError):
    kind = ErrorKindEnum.PROBLEM_MISMATCH


class DegenerateSpecError(EchoSigError):
    kind = ErrorKindEnum.DEGENERATE_SPEC

    def __init__(self, detail: str, sample_id: Optional[str] = None):
        if sample_id is not None:
            detail = f"{sample_id}: {detail}"
        super().__init__(detail)
        self.sample_id = sample_id


class IoError(EchoSigError):
    """
    文件系统读写失败，`path` 为出错的路径。
    (Filesystem read/write failure; `path` is the failing path.)
    """

    kind = ErrorKindEnum.IO_ERROR
    exit_code = EXIT_IO_ERROR

    def __init__(self, path, reason: str):
        super().__init__(f"{path}: {reason}")
        self.path = str(path)


__all__ = [
    "EXIT_OK",
    "EXIT_IO_ERROR",
    "EXIT_DATA_ERROR",
    "EchoSigError",
    "NoForegroundError",
    "InvalidIndexError",
    "EmptyTableError",
    "ParseError",
    "InvalidLabelError",
    "DuplicateIdError",
    "MissingLabelError",
    "VersionMismatchError",
    "ProblemMismatchError",
    "DegenerateSpecError",
    "IoError",
]
