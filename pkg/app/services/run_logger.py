# -*- coding: utf-8 -*-
"""
运行台账服务模块。
(Run Ledger Service Module.)

此模块提供一个服务类，把每次命令行运行记录为 JSON Lines 台账中的一行，
包含事件ID、时间戳、子命令、状态、输入输出路径和详细信息。
台账写入失败只记录到应用日志，不会中断命令。
(This module provides a service class that records every command-line run as
one line of a JSON Lines ledger, holding event ID, timestamp, subcommand,
status, input/output paths and details. Ledger failures are only logged to the
application log and never interrupt the command.)
"""

import logging
from pathlib import Path
from typing import Any, Dict, Optional

from ..models.run_log_models import RunLogEntry

_run_logger_module_logger = logging.getLogger(__name__)

RUN_LOG_LOGGER_NAME = "echosig.run_log"


class RunLoggerService:
    """
    运行台账服务类。
    (Run Ledger Service class.)

    使用一个专用的、不向根记录器传播的日志记录器，格式化器直接输出 JSON 字符串。
    同一时刻只绑定一个台账文件；重新构造会替换之前的文件处理器。
    (Uses a dedicated logger that does not propagate to the root logger, whose
    formatter emits the JSON string as is. Only one ledger file is bound at a
    time; constructing again replaces the previous file handler.)
    """

    def __init__(self, ledger_path: Path):
        self.ledger_path = Path(ledger_path)
        self.logger = logging.getLogger(RUN_LOG_LOGGER_NAME)
        self.logger.setLevel(logging.INFO)
        self.logger.propagate = False
        self._handler: Optional[logging.Handler] = None

        for handler in self.logger.handlers[:]:
            self.logger.removeHandler(handler)
            handler.close()

        try:
            self.ledger_path.parent.mkdir(parents=True, exist_ok=True)
            handler = logging.FileHandler(self.ledger_path, encoding="utf-8", delay=True)
        except OSError as e:
            _run_logger_module_logger.error(
                f"无法打开运行台账 '{self.ledger_path}' (Cannot open run ledger): {e}"
            )
            return
        handler.setFormatter(logging.Formatter("%(message)s"))
        self.logger.addHandler(handler)
        self._handler = handler

    def log_event(
        self,
        command: str,
        status: str,
        input_path: Optional[Path] = None,
        output_path: Optional[Path] = None,
        details: Optional[Dict[str, Any]] = None,
    ) -> None:
        """
        记录一次运行。
        (Records one run.)

        参数 (Args):
            command (str): 子命令名称。(Subcommand name.)
            status (str): "SUCCESS" 或 "FAILURE"。("SUCCESS" or "FAILURE".)
            input_path / output_path: 本次运行的输入输出路径。(Input / output paths of the run.)
            details (Optional[Dict[str, Any]]): 其他详细信息。(Additional details.)
        """
        if self._handler is None:
            return
        try:
            entry = RunLogEntry(
                command=command,
                status=status,
                input_path=str(input_path) if input_path is not None else None,
                output_path=str(output_path) if output_path is not None else None,
                details=details,
            )
            self.logger.info(entry.model_dump_json())
            self._handler.flush()
        except Exception as e:
            _run_logger_module_logger.error(
                f"记录运行台账失败 (Failed to record run ledger entry): {e}",
                exc_info=True,
            )

    def close(self) -> None:
        """关闭并解绑台账文件。(Closes and unbinds the ledger file.)"""
        if self._handler is not None:
            self.logger.removeHandler(self._handler)
            self._handler.close()
            self._handler = None


__all__ = ["RUN_LOG_LOGGER_NAME", "RunLoggerService"]
