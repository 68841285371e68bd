# -*- coding: utf-8 -*-
"""
运行台账相关的Pydantic模型模块。
(Pydantic Models Module for the Run Ledger.)

每次命令行运行写入一条 `RunLogEntry`，以 JSON Lines 格式追加到台账文件。
(Every command-line run appends one `RunLogEntry` to the ledger file, in JSON
Lines format.)
"""

import uuid
from datetime import datetime, timezone
from typing import Any, Dict, Optional

from pydantic import BaseModel, Field


class RunLogEntry(BaseModel):
    """
    运行台账条目的Pydantic模型。
    (Pydantic model for a run ledger entry.)
    """

    event_id: str = Field(
        default_factory=lambda: uuid.uuid4().hex,
        description="事件的唯一ID (Unique ID for the event)",
    )
    timestamp: datetime = Field(
        default_factory=lambda: datetime.now(timezone.utc),
        description="事件发生的时间戳 (UTC) (Timestamp of the event (UTC))",
    )
    command: str = Field(
        ..., description="子命令名称 (例如: extract, train) (Subcommand name)"
    )
    status: str = Field(
        ..., description="运行结果状态 (SUCCESS / FAILURE) (Outcome status)"
    )
    input_path: Optional[str] = Field(None, description="输入路径 (Input path)")
    output_path: Optional[str] = Field(None, description="输出路径 (Output path)")
    details: Optional[Dict[str, Any]] = Field(
        None,
        description="其他详细信息，如帧数、准确率 (Additional details such as frame counts or accuracy)",
    )


__all__ = ["RunLogEntry"]
