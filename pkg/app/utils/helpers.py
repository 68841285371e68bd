# -*- coding: utf-8 -*-
"""
通用工具函数模块 (General Utility Functions Module)。

此模块包含项目中可能在多个地方被复用的一些辅助函数，
例如浮点数格式化、稳定哈希、原子文件写入以及帧文件列举。
(This module contains auxiliary functions that may be reused in multiple places
in the project, such as float formatting, stable hashing, atomic file writes and
frame file listing.)
"""

# region 模块导入 (Module Imports)
import hashlib
import logging
import os
import tempfile
from pathlib import Path
from typing import Iterable, List, Union

from ..core.errors import IoError

# endregion

# region 全局变量与初始化 (Global Variables & Initialization)
_helpers_logger = logging.getLogger(__name__)

FRAME_SUFFIXES = (".png", ".ppm")
ROI_SUFFIXES = (".pgm",)
# endregion

# region 格式化与哈希工具 (Formatting & Hashing Utilities)


def format_float(value: float) -> str:
    """
    以 17 位有效数字格式化浮点数，保证读回后逐位相等。
    (Formats a float at 17 significant digits so that reading it back is lossless.)
    """
    return format(float(value), ".17g")


def stable_hash64(text: str) -> int:
    """
    与进程无关的 64 位哈希：SHA-256 摘要的前 8 个字节 (大端)。
    (Process-independent 64-bit hash: the first 8 bytes of the SHA-256 digest,
    big-endian.)

    内置 `hash()` 受 PYTHONHASHSEED 影响，不能用于可复现的种子派生。
    (The built-in `hash()` depends on PYTHONHASHSEED and cannot derive
    reproducible seeds.)
    """
    digest = hashlib.sha256(text.encode("utf-8")).digest()
    return int.from_bytes(digest[:8], "big")


# endregion

# region 文件系统工具 (Filesystem Utilities)


def ensure_directory(path: Path) -> Path:
    """创建目录 (含父目录)。(Creates a directory including its parents.)"""
    try:
        path.mkdir(parents=True, exist_ok=True)
    except OSError as e:
        raise IoError(path, e.strerror or str(e)) from e
    return path


def atomic_write_bytes(path: Path, payload: bytes) -> None:
    """
    先写入同目录下的临时文件，再原子地重命名为目标文件；失败时不留下部分文件。
    (Writes to a temporary file in the same directory, then atomically renames
    it onto the target; a failure never leaves a partial file behind.)

    异常 (Raises):
        IoError: 写入或重命名失败。(Write or rename failed.)
    """
    path = Path(path)
    ensure_directory(path.parent if str(path.parent) else Path("."))
    tmp_name = None
    try:
        with tempfile.NamedTemporaryFile(
            "wb", dir=path.parent, prefix=f".{path.name}.", suffix=".tmp", delete=False
        ) as tmp:
            tmp_name = tmp.name
            tmp.write(payload)
            tmp.flush()
            os.fsync(tmp.fileno())
        os.replace(tmp_name, path)
    except OSError as e:
        if tmp_name is not None and os.path.exists(tmp_name):
            try:
                os.unlink(tmp_name)
            except OSError:
                _helpers_logger.warning(f"无法删除临时文件 (Cannot remove temp file): {tmp_name}")
        raise IoError(path, e.strerror or str(e)) from e
    _helpers_logger.debug(f"已写入 (Wrote) {path} ({len(payload)} bytes)")


def atomic_write_text(path: Path, text: str) -> None:
    """以 UTF-8、LF 行尾原子写入文本。(Atomically writes UTF-8 text with LF line endings.)"""
    atomic_write_bytes(path, text.encode("utf-8"))


def read_text(path: Path) -> str:
    """读取 UTF-8 文本，OSError 转换为 IoError。(Reads UTF-8 text; OSError becomes IoError.)"""
    try:
        return Path(path).read_text(encoding="utf-8")
    except OSError as e:
        raise IoError(path, e.strerror or str(e)) from e
    except UnicodeDecodeError as e:
        raise IoError(path, f"not valid UTF-8 ({e.reason})") from e


def list_files(directory: Path, suffixes: Iterable[str]) -> List[Path]:
    """
    按文件名字典序列出目录中具有给定后缀 (不区分大小写) 的普通文件。
    (Lists the regular files of a directory with one of the given suffixes,
    case-insensitive, in lexicographic file-name order.)

    异常 (Raises):
        IoError: 目录不存在或不可读。(Directory missing or unreadable.)
    """
    directory = Path(directory)
    wanted = {s.lower() for s in suffixes}
    try:
        entries = [
            entry
            for entry in directory.iterdir()
            if entry.suffix.lower() in wanted and entry.is_file()
        ]
    except OSError as e:
        raise IoError(directory, e.strerror or str(e)) from e
    return sorted(entries, key=lambda p: p.name)


def sample_id_for(path: Union[str, Path]) -> str:
    """帧或 ROI 文件的样本 id 为去掉后缀的文件名。(The sample id of a frame or ROI file is its stem.)"""
    return Path(path).stem


# endregion

__all__ = [
    "FRAME_SUFFIXES",
    "ROI_SUFFIXES",
    "format_float",
    "stable_hash64",
    "ensure_directory",
    "atomic_write_bytes",
    "atomic_write_text",
    "read_text",
    "list_files",
    "sample_id_for",
]
