# -*- coding: utf-8 -*-
"""
应用配置模块 (Application Configuration Module)。

此模块负责定义应用的配置模型 (使用 Pydantic)，加载来自 .env 文件、
JSON 配置文件的配置项，并提供按需加载、全局缓存的配置实例。
它还包括分割阈值配置、单次命令运行配置以及设置日志记录的功能。

(This module is responsible for defining the application's configuration models
(using Pydantic), loading configuration items from .env files and JSON
configuration files, and providing a lazily loaded, globally cached
configuration instance. It also holds the segmentation threshold configuration,
the per-command run configuration, and the logging setup.)
"""

# region 模块导入 (Module Imports)
import json
import logging
import logging.handlers
import os
import sys
from datetime import datetime, timezone
from pathlib import Path
from typing import Any, Dict, Optional, Tuple

from dotenv import load_dotenv
from pydantic import BaseModel, Field, ValidationError, field_validator

from ..models.enums import ColorChannel, LogLevelEnum, Problem
from .errors import IoError, ParseError

# endregion


# region 自定义JSON日志格式化器 (Custom JSON Log Formatter)
class JsonFormatter(logging.Formatter):
    """
    自定义日志格式化器，将日志记录转换为单行JSON格式字符串。
    (Custom log formatter that converts log records into single-line JSON strings.)
    """

    # 标准 LogRecord 属性，用于只提取 "extra" 内容
    # (Standard LogRecord attributes, excluded so that only "extra" content is kept)
    _STANDARD_RECORD_ATTRS = {
        "args",
        "asctime",
        "created",
        "exc_info",
        "exc_text",
        "filename",
        "funcName",
        "levelname",
        "levelno",
        "lineno",
        "message",
        "module",
        "msecs",
        "msg",
        "name",
        "pathname",
        "process",
        "processName",
        "relativeCreated",
        "stack_info",
        "thread",
        "threadName",
        "taskName",
    }

    def format(self, record: logging.LogRecord) -> str:
        log_object: Dict[str, Any] = {
            "timestamp": datetime.fromtimestamp(
                record.created, tz=timezone.utc
            ).isoformat(),
            "level": record.levelname,
            "message": record.getMessage(),
            "logger_name": record.name,
            "module": record.module,
            "function": record.funcName,
            "line": record.lineno,
            "thread_name": record.threadName,
            "process_id": record.process,
        }

        if record.exc_info:
            log_object["exception"] = self.formatException(record.exc_info)

        for key, value in record.__dict__.items():
            if not key.startswith("_") and key not in self._STANDARD_RECORD_ATTRS:
                log_object.setdefault(key, value)

        return json.dumps(log_object, ensure_ascii=False, default=str)


# endregion

# region 全局变量与初始化 (Global Variables & Initialization)
_config_module_logger = logging.getLogger(__name__)
# endregion

# region Pydantic 配置模型定义 (Pydantic Configuration Model Definitions)


class SegmentationConfig(BaseModel):
    """
    颜色分割与 ROI 提取的阈值配置。
    (Threshold configuration for color segmentation and ROI extraction.)

    色相范围以度表示；当 `lo > hi` 时范围跨越 0° (红色默认如此)。
    (Hue ranges are in degrees; when `lo > hi` the range wraps through 0°,
    which is the case for the red default.)
    """

    blue_hue_range: Tuple[float, float] = Field(
        (190.0, 260.0), description="蓝色通道色相范围 [lo, hi] (Blue hue range)"
    )
    red_hue_range: Tuple[float, float] = Field(
        (330.0, 25.0),
        description="红色通道色相范围，跨越0° (Red hue range, wraps through 0°)",
    )
    sat_min: float = Field(
        0.35, ge=0.0, le=1.0, description="最小饱和度 (Minimum saturation)"
    )
    val_min: float = Field(0.25, ge=0.0, le=1.0, description="最小明度 (Minimum value)")
    open_radius: int = Field(
        1, ge=0, description="形态学开运算半径 (Morphological opening radius)"
    )
    min_component_area: int = Field(
        20, ge=1, description="保留连通分量的最小像素数 (Minimum component area)"
    )

    @field_validator("blue_hue_range", "red_hue_range")
    @classmethod
    def check_hue_bounds(cls, v: Tuple[float, float]) -> Tuple[float, float]:
        """校验色相边界位于 [0, 360)。(Validate hue bounds lie in [0, 360).)"""
        for bound in v:
            if not 0.0 <= bound < 360.0:
                raise ValueError(
                    f"色相边界必须位于 [0, 360) (hue bound must lie in [0, 360)): {bound}"
                )
        return v

    def hue_range(self, channel: ColorChannel) -> Tuple[float, float]:
        if channel is ColorChannel.BLUE:
            return self.blue_hue_range
        return self.red_hue_range

    model_config = {"frozen": True, "extra": "forbid"}


class Settings(BaseModel):
    """
    应用主配置模型 (Application Main Configuration Model)。
    配置项可以从环境变量、JSON文件加载，并具有默认值。
    (Configuration items can be loaded from environment variables and a JSON
    file, and have default values.)
    """

    app_name: str = Field(
        "echosig", description="应用名称 (Application name)"
    )
    log_level: LogLevelEnum = Field(
        default_factory=lambda: LogLevelEnum(
            os.getenv("ECHOSIG_LOG_LEVEL", "WARNING").upper()
        ),
        description="控制台日志级别 (Console log level)",
    )
    log_file_name: Optional[str] = Field(
        default_factory=lambda: os.getenv("ECHOSIG_LOG_FILE") or None,
        description="JSON日志文件名，位于 data_dir 下；为空则不写文件 (JSON log file name under data_dir; unset disables file logging)",
    )
    data_dir: Path = Field(
        default_factory=lambda: Path(os.getenv("ECHOSIG_DATA_DIR", "data")),
        description="数据文件基础目录 (Base directory for data files)",
    )
    max_workers: int = Field(
        default_factory=lambda: int(os.getenv("ECHOSIG_MAX_WORKERS", "1")),
        ge=1,
        description="逐帧处理的线程数 (Thread pool size for per-frame work)",
    )
    run_log_path: Optional[Path] = Field(
        default_factory=lambda: (
            Path(os.environ["ECHOSIG_RUN_LOG"]) if os.getenv("ECHOSIG_RUN_LOG") else None
        ),
        description="运行台账 (JSON Lines) 路径 (Run ledger JSON Lines path)",
    )
    segmentation: SegmentationConfig = Field(
        default_factory=SegmentationConfig,
        description="默认分割配置 (Default segmentation configuration)",
    )

    model_config = {
        "validate_assignment": True,
        "extra": "ignore",
    }


class RunConfig(BaseModel):
    """
    单次命令运行的配置，与命令行参数一一对应。
    (Configuration of one command run; mirrors the command-line flags.)
    """

    segmentation: SegmentationConfig = Field(default_factory=SegmentationConfig)
    problem: Optional[Problem] = None
    input: Optional[Path] = None
    output: Optional[Path] = None
    model: Optional[Path] = None
    labels: Optional[Path] = None
    seed: int = Field(0, ge=0, lt=2**64)
    workers: int = Field(1, ge=1)

    @field_validator("problem", mode="before")
    @classmethod
    def parse_problem(cls, v: Any) -> Any:
        if isinstance(v, str):
            return Problem.from_cli(v)
        return v

    model_config = {"extra": "forbid"}


# endregion

# region 配置加载与管理逻辑 (Configuration Loading and Management Logic)
_settings_instance: Optional[Settings] = None


def setup_logging(
    log_level_str: str,
    log_file_name: Optional[str] = None,
    data_dir: Optional[Path] = None,
) -> None:
    """
    配置应用范围的日志记录。会设置根日志记录器，添加控制台处理器，
    以及（如配置了文件名）按天轮转的JSON文件处理器。
    (Configure application-wide logging. Sets up the root logger, adds a console
    handler and, when a file name is configured, a daily rotated JSON file handler.)

    参数 (Args):
        log_level_str (str): 日志级别字符串 (如 "INFO")。 (Log level string (e.g., "INFO").)
        log_file_name (Optional[str]): 日志文件名。 (Log filename.)
        data_dir (Optional[Path]): 日志文件所在目录。 (Directory of the log file.)
    """
    log_level = getattr(logging, log_level_str.upper(), logging.WARNING)

    root_logger = logging.getLogger()
    root_logger.setLevel(log_level)

    # 移除已存在的处理器，防止重复记录日志
    # (Remove existing handlers to prevent duplicate logging)
    for handler in root_logger.handlers[:]:
        root_logger.removeHandler(handler)

    console_handler = logging.StreamHandler(sys.stderr)
    console_handler.setFormatter(
        logging.Formatter(
            "%(asctime)s - %(name)s - %(levelname)s - %(module)s:%(lineno)d - %(message)s"
        )
    )
    root_logger.addHandler(console_handler)

    if not log_file_name:
        return

    log_file_path = (data_dir or Path(".")) / log_file_name
    try:
        log_file_path.parent.mkdir(parents=True, exist_ok=True)
        # 每天午夜 (UTC) 轮转，保留7个备份 (Rotate at UTC midnight, keep 7 backups)
        file_handler = logging.handlers.TimedRotatingFileHandler(
            filename=log_file_path,
            when="midnight",
            interval=1,
            backupCount=7,
            encoding="utf-8",
            utc=True,
        )
        file_handler.setFormatter(JsonFormatter())
        # 文件日志总是记录到 INFO (File log always records down to INFO)
        file_handler.setLevel(min(log_level, logging.INFO))
        root_logger.setLevel(min(log_level, logging.INFO))
        console_handler.setLevel(log_level)
        root_logger.addHandler(file_handler)
        _config_module_logger.info(
            f"JSON日志写入 (JSON log written to): {log_file_path}",
        )
    except OSError as e:
        _config_module_logger.error(
            f"无法配置JSON日志文件处理器 '{log_file_path}' (Failed to configure JSON log file handler): {e}"
        )


def _read_json_file(path: Path) -> Dict[str, Any]:
    """读取一个顶层为对象的JSON文件。(Read a JSON file whose top level is an object.)"""
    try:
        with open(path, "r", encoding="utf-8") as f:
            data = json.load(f)
    except OSError as e:
        raise IoError(path, e.strerror or str(e)) from e
    except json.JSONDecodeError as e:
        raise ParseError(f"{path}: invalid JSON ({e.msg})", row=e.lineno) from e
    if not isinstance(data, dict):
        raise ParseError(f"{path}: top-level JSON value must be an object")
    return data


def load_settings(settings_file: Optional[Path] = None) -> Settings:
    """
    加载应用配置 (Load application configuration)。
    配置加载顺序: Pydantic模型默认值 -> 环境变量 (.env) -> JSON 配置文件。
    (Loading order: Pydantic model defaults -> environment variables (.env) ->
    JSON settings file.)

    参数 (Args):
        settings_file (Optional[Path]): JSON配置文件路径；为空时使用
            `ECHOSIG_SETTINGS` 环境变量，再为空则只用默认值和环境变量。
            (JSON settings file; falls back to the `ECHOSIG_SETTINGS`
            environment variable, then to defaults and environment only.)

    返回 (Returns):
        Settings: 加载并验证后的配置实例。(Loaded and validated settings instance.)
    """
    load_dotenv(dotenv_path=Path.cwd() / ".env")

    if settings_file is None and os.getenv("ECHOSIG_SETTINGS"):
        settings_file = Path(os.environ["ECHOSIG_SETTINGS"])

    json_config: Dict[str, Any] = {}
    if settings_file is not None:
        if settings_file.is_file():
            try:
                json_config = _read_json_file(settings_file)
            except (IoError, ParseError) as e:
                _config_module_logger.warning(
                    f"无法从 '{settings_file}' 加载JSON配置: {e}。将使用默认值和环境变量。"
                    f"(Cannot load JSON config from '{settings_file}'. Using defaults and env vars.)"
                )
        else:
            _config_module_logger.info(
                f"JSON配置文件 '{settings_file}' 未找到。(JSON config file not found.)"
            )

    try:
        parsed_settings = Settings(**json_config)
    except ValidationError as e:
        _config_module_logger.error(
            f"配置验证失败！将使用默认值。(Config validation failed! Using defaults.): {e}"
        )
        parsed_settings = Settings()

    return parsed_settings


def get_settings() -> Settings:
    """
    返回全局单例配置；首次调用时加载。
    (Return the global settings singleton, loading it on first call.)
    """
    global _settings_instance
    if _settings_instance is None:
        _settings_instance = load_settings()
    return _settings_instance


def reset_settings() -> None:
    """清除缓存的配置实例（主要供测试使用）。(Drop the cached settings; mainly for tests.)"""
    global _settings_instance
    _settings_instance = None


def build_run_config(
    settings: Settings,
    config_path: Optional[Path] = None,
    overrides: Optional[Dict[str, Any]] = None,
) -> RunConfig:
    """
    合并三层配置得到本次运行的 RunConfig：
    Settings 默认值 -> `--config` JSON 文件 -> 显式命令行参数。
    (Merge three layers into the RunConfig of this run:
    Settings defaults -> `--config` JSON file -> explicit command-line flags.)

    `overrides` 中值为 None 的键被忽略；键 `min_component_area` 与
    `open_radius` 作用于 `segmentation` 子对象。
    (Keys of `overrides` whose value is None are ignored; the keys
    `min_component_area` and `open_radius` apply to the `segmentation` object.)

    异常 (Raises):
        IoError: 配置文件无法读取。(Config file cannot be read.)
        ParseError: 配置文件或合并结果无效。(Config file or merged result invalid.)
    """
    merged: Dict[str, Any] = {
        "segmentation": settings.segmentation.model_dump(),
        "workers": settings.max_workers,
    }

    if config_path is not None:
        file_config = _read_json_file(config_path)
        file_segmentation = file_config.pop("segmentation", None) or {}
        if not isinstance(file_segmentation, dict):
            raise ParseError(f"{config_path}: 'segmentation' must be an object")
        merged["segmentation"].update(file_segmentation)
        merged.update(file_config)

    for key, value in (overrides or {}).items():
        if value is None:
            continue
        if key in ("min_component_area", "open_radius"):
            merged["segmentation"][key] = value
        else:
            merged[key] = value

    try:
        return RunConfig(**merged)
    except ValidationError as e:
        first = e.errors()[0]
        location = ".".join(str(part) for part in first["loc"])
        raise ParseError(f"invalid run configuration at '{location}': {first['msg']}") from e


# endregion

__all__ = [
    "JsonFormatter",
    "SegmentationConfig",
    "Settings",
    "RunConfig",
    "setup_logging",
    "load_settings",
    "get_settings",
    "reset_settings",
    "build_run_config",
]
