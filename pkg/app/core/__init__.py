# -*- coding: utf-8 -*-
"""
核心模块，包含应用配置、日志设置与领域异常。
(Core package: application configuration, logging setup and domain exceptions.)
"""

from . import config, errors
from .config import (
    RunConfig,
    SegmentationConfig,
    Settings,
    build_run_config,
    get_settings,
    setup_logging,
)
from .errors import EchoSigError, IoError, ParseError

__all__ = [
    "config",
    "errors",
    "RunConfig",
    "SegmentationConfig",
    "Settings",
    "build_run_config",
    "get_settings",
    "setup_logging",
    "EchoSigError",
    "IoError",
    "ParseError",
]
