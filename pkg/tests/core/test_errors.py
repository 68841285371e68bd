# -*- coding: utf-8 -*-
"""
app.core.errors 模块的单元测试。
(Unit tests for the app.core.errors module.)
"""

import pytest

from app.core.errors import (
    EXIT_DATA_ERROR,
    EXIT_IO_ERROR,
    DegenerateSpecError,
    DuplicateIdError,
    EchoSigError,
    EmptyTableError,
    InvalidIndexError,
    InvalidLabelError,
    IoError,
    MissingLabelError,
    NoForegroundError,
    ParseError,
    ProblemMismatchError,
    VersionMismatchError,
)


def test_cli_line_is_single_line():
    error = ParseError("bad value\nin column 'z2_0'", row=4)
    assert error.cli_line() == "ERROR:ParseError:row 4: bad value in column 'z2_0'"
    assert "\n" not in error.cli_line()


def test_io_error_exit_code_and_path():
    error = IoError("/data/frames", "Permission denied")
    assert error.exit_code == EXIT_IO_ERROR == 2
    assert error.path == "/data/frames"
    assert error.cli_line() == "ERROR:IoError:/data/frames: Permission denied"


@pytest.mark.parametrize(
    "error, kind",
    [
        (NoForegroundError("empty"), "NoForeground"),
        (InvalidIndexError("m > n"), "InvalidIndex"),
        (EmptyTableError("no rows"), "EmptyTable"),
        (ParseError("oops"), "ParseError"),
        (InvalidLabelError("Parallel", sample_id="f01"), "InvalidLabel"),
        (DuplicateIdError("f01"), "DuplicateId"),
        (MissingLabelError("f02"), "MissingLabel"),
        (VersionMismatchError("999"), "VersionMismatch"),
        (ProblemMismatchError("red vs blue"), "ProblemMismatch"),
        (DegenerateSpecError("too small", sample_id="synth_V_0001"), "DegenerateSpec"),
        (EchoSigError("boom"), "Internal"),
    ],
)
def test_data_errors_exit_with_three(error, kind):
    assert error.exit_code == EXIT_DATA_ERROR == 3
    assert error.cli_line().startswith(f"ERROR:{kind}:")


def test_errors_name_offending_ids():
    assert "f01" in DuplicateIdError("f01").cli_line()
    assert MissingLabelError("f02").sample_id == "f02"
    degenerate = DegenerateSpecError("no room", sample_id="synth_X_0003")
    assert degenerate.sample_id == "synth_X_0003"
    assert degenerate.detail.startswith("synth_X_0003: ")
