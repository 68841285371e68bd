# -*- coding: utf-8 -*-
# region 包初始化
"""
app.utils 包初始化文件。

此包包含项目中可被多个模块复用的通用工具函数：浮点格式化、稳定哈希、原子写入与报告导出。
"""

from .helpers import (
    atomic_write_bytes,
    atomic_write_text,
    format_float,
    list_files,
    stable_hash64,
)

__all__ = [
    "atomic_write_bytes",
    "atomic_write_text",
    "format_float",
    "list_files",
    "stable_hash64",
]
# endregion
