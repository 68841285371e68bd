# -*- coding: utf-8 -*-
"""
app.utils.helpers 模块的单元测试。
(Unit tests for the app.utils.helpers module.)
"""

import os
from pathlib import Path

import pytest

from app.core.errors import IoError
from app.utils import helpers

# --- Tests for format_float ---


@pytest.mark.parametrize(
    "value, text",
    [(0.1, "0.10000000000000001"), (12.0, "12"), (-2.5, "-2.5"), (float("inf"), "inf")],
)
def test_format_float(value, text):
    assert helpers.format_float(value) == text


def test_format_float_round_trips(rng):
    for value in rng.normal(scale=1e3, size=500):
        assert float(helpers.format_float(value)) == value


# --- Tests for stable_hash64 ---


def test_stable_hash64_known_value():
    # SHA-256("") 的前 8 字节 (first 8 bytes of SHA-256 of the empty string)
    assert helpers.stable_hash64("") == 0xE3B0C44298FC1C14


def test_stable_hash64_range_and_distinct():
    values = {helpers.stable_hash64(f"V:{k}") for k in range(100)}
    assert len(values) == 100
    assert all(0 <= v < 2**64 for v in values)


# --- Tests for atomic writes ---


def test_atomic_write_creates_parents_and_leaves_no_temp(tmp_path: Path):
    target = tmp_path / "nested" / "dir" / "out.txt"
    helpers.atomic_write_text(target, "第一行\nline two\n")
    assert target.read_bytes() == "第一行\nline two\n".encode("utf-8")
    assert os.listdir(target.parent) == ["out.txt"]


def test_atomic_write_replaces_existing(tmp_path: Path):
    target = tmp_path / "out.bin"
    target.write_bytes(b"old")
    helpers.atomic_write_bytes(target, b"new")
    assert target.read_bytes() == b"new"


def test_atomic_write_failure_keeps_old_file(tmp_path: Path, mocker):
    target = tmp_path / "report.csv"
    target.write_text("old,report\n", encoding="utf-8")
    mocker.patch("app.utils.helpers.os.replace", side_effect=OSError(13, "Permission denied"))
    with pytest.raises(IoError) as exc_info:
        helpers.atomic_write_text(target, "new,report\n")
    assert "Permission denied" in exc_info.value.cli_line()
    assert target.read_text(encoding="utf-8") == "old,report\n"
    assert os.listdir(tmp_path) == ["report.csv"]


def test_read_text_errors(tmp_path: Path):
    with pytest.raises(IoError):
        helpers.read_text(tmp_path / "absent.txt")
    binary = tmp_path / "binary.txt"
    binary.write_bytes(b"\xff\xfe\x00bad")
    with pytest.raises(IoError):
        helpers.read_text(binary)


# --- Tests for directory listing ---


def test_list_files_filters_and_sorts(tmp_path: Path):
    for name in ["b.png", "a.PPM", "c.txt", "a10.png", "a2.png"]:
        (tmp_path / name).write_bytes(b"")
    (tmp_path / "d.png").mkdir()
    names = [p.name for p in helpers.list_files(tmp_path, helpers.FRAME_SUFFIXES)]
    assert names == ["a.PPM", "a10.png", "a2.png", "b.png"]


def test_list_files_missing_directory(tmp_path: Path):
    with pytest.raises(IoError):
        helpers.list_files(tmp_path / "absent", helpers.FRAME_SUFFIXES)


def test_sample_id_for():
    assert helpers.sample_id_for("frames/f0001.png") == "f0001"
    assert helpers.sample_id_for(Path("rois/synth_V_0002.pgm")) == "synth_V_0002"


def test_ensure_directory_conflict(tmp_path: Path):
    blocker = tmp_path / "file"
    blocker.write_text("x", encoding="utf-8")
    with pytest.raises(IoError):
        helpers.ensure_directory(blocker / "sub")
