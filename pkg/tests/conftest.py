# -*- coding: utf-8 -*-
"""
测试共享固件。
(Shared test fixtures.)
"""

import numpy as np
import pytest

from app.core.config import reset_settings

ECHOSIG_ENV_VARS = (
    "ECHOSIG_LOG_LEVEL",
    "ECHOSIG_LOG_FILE",
    "ECHOSIG_DATA_DIR",
    "ECHOSIG_MAX_WORKERS",
    "ECHOSIG_RUN_LOG",
    "ECHOSIG_SETTINGS",
)


@pytest.fixture(autouse=True)
def isolated_settings(monkeypatch, tmp_path):
    """
    每个测试使用干净的配置：清除 ECHOSIG_* 环境变量与缓存的 Settings。
    (Every test runs on clean settings: ECHOSIG_* variables and the cached
    Settings are cleared.)
    """
    for name in ECHOSIG_ENV_VARS:
        monkeypatch.delenv(name, raising=False)
    # load_settings 从当前目录读取 .env (load_settings reads .env from the working directory)
    monkeypatch.chdir(tmp_path)
    reset_settings()
    yield
    reset_settings()


@pytest.fixture
def rng() -> np.random.Generator:
    return np.random.default_rng(20240917)
