# -*- coding: utf-8 -*-
"""
echoctl.py 命令行工具的测试。
(Tests for the echoctl.py command-line tool.)

每个测试直接调用 `echoctl.main([...])` 并检查退出码、标准输出/错误以及写出的文件。
(Every test calls `echoctl.main([...])` directly and checks the exit code,
stdout/stderr and the files written.)
"""

import json
import logging
from pathlib import Path

import numpy as np
import pytest

import echoctl
from app.crud.frames import write_frame
from tests.factories import frame_from_bits

SMALL_BLUE = "V=3,X=3,Other=4"


@pytest.fixture(autouse=True)
def restore_root_logger():
    """main() 会重新配置根日志记录器；测试后恢复。(main() reconfigures the root logger; restore it afterwards.)"""
    root = logging.getLogger()
    handlers, level = root.handlers[:], root.level
    yield
    for handler in root.handlers[:]:
        if handler not in handlers:
            root.removeHandler(handler)
            handler.close()
    for handler in handlers:
        if handler not in root.handlers:
            root.addHandler(handler)
    root.setLevel(level)


# region 辅助函数 (Helper Functions)


def _run(*argv) -> int:
    return echoctl.main([str(a) for a in argv])


def _error_line(capsys) -> str:
    """标准错误的最后一行即机器可读的错误行。(The last stderr line is the machine-readable error.)"""
    err = capsys.readouterr().err.strip().splitlines()
    assert err, "expected an error line on stderr"
    return err[-1]


def _synth(tmp_path: Path, name: str = "corpus", *extra) -> Path:
    out = tmp_path / name
    assert _run("synth", "--problem", "blue", "--seed", 11, "--counts", SMALL_BLUE, "--output", out, *extra) == 0
    return out


def _train(tmp_path: Path, corpus: Path) -> Path:
    model = tmp_path / "model.json"
    assert _run("train", "--problem", "blue", "--input", corpus / "features.csv", "--output", model) == 0
    return model


def _tree_bytes(root: Path) -> dict:
    return {
        str(p.relative_to(root)): p.read_bytes() for p in sorted(root.rglob("*")) if p.is_file()
    }


# endregion

# region 端到端流程 (End-to-End Pipeline)


def test_pipeline_synth_to_evaluate(tmp_path: Path, capsys):
    corpus = _synth(tmp_path, "corpus", "--frames")
    frames = corpus / "frames"
    assert len(list(frames.glob("*.png"))) == 10
    assert (corpus / "labels.csv").read_text(encoding="utf-8").startswith("id,label\n")

    # 从渲染帧中重新提取 ROI，特征应与合成时完全一致
    # (ROIs re-extracted from rendered frames featurize identically)
    rois = tmp_path / "rois"
    assert _run("extract", "--problem", "blue", "--open-radius", 0, "--input", frames, "--output", rois) == 0
    manifest = (rois / "manifest.csv").read_text(encoding="utf-8").splitlines()
    assert manifest[0] == "frame_id,roi_file"
    assert "no_foreground" not in "\n".join(manifest)

    table = tmp_path / "reextracted.csv"
    assert _run("featurize", "--input", rois, "--labels", corpus / "labels.csv", "--output", table) == 0
    assert table.read_bytes() == (corpus / "features.csv").read_bytes()

    model = _train(tmp_path, corpus)
    report = tmp_path / "report.csv"
    assert _run(
        "classify", "--model", model, "--input", frames, "--open-radius", 0, "--output", report
    ) == 0
    rows = report.read_text(encoding="utf-8").splitlines()
    assert rows[0] == "id,predicted,distance,neighbor_id"
    assert len(rows) == 11
    for row in rows[1:]:
        frame_id, predicted, distance, neighbor_id = row.split(",")
        assert float(distance) == 0.0
        assert neighbor_id == frame_id
        assert predicted == frame_id.split("_")[1]

    capsys.readouterr()
    evaluation = tmp_path / "eval.csv"
    assert _run(
        "evaluate", "--model", model, "--input", frames, "--labels", corpus / "labels.csv",
        "--open-radius", 0, "--output", evaluation, "--xlsx", tmp_path / "eval.xlsx",
    ) == 0
    out = capsys.readouterr().out
    assert "problem: BlueSignatures" in out
    assert "samples: 10" in out
    assert "accuracy: 1.0000" in out
    assert evaluation.read_text(encoding="utf-8").startswith("id,truth,predicted,distance,neighbor_id\n")
    assert (tmp_path / "eval.xlsx").is_file()
    summary = (tmp_path / "eval_summary.txt").read_text(encoding="utf-8")
    assert summary.startswith("problem: BlueSignatures")
    assert summary in out


def test_evaluate_feature_table(tmp_path: Path, capsys):
    corpus = _synth(tmp_path)
    model = _train(tmp_path, corpus)
    capsys.readouterr()
    assert _run("evaluate", "--model", model, "--input", corpus / "features.csv") == 0
    out = capsys.readouterr().out
    assert "samples: 10" in out
    assert "accuracy: 1.0000" in out


def test_synth_feature_table_rows_ordered_by_id(tmp_path: Path):
    corpus = _synth(tmp_path)
    ids = [line.split(",")[0] for line in (corpus / "features.csv").read_text(encoding="utf-8").splitlines()[1:]]
    assert len(ids) == 10
    assert ids == sorted(ids)
    labels = [line.split(",")[0] for line in (corpus / "labels.csv").read_text(encoding="utf-8").splitlines()[1:]]
    assert ids == labels


def test_evaluate_output_writes_summary_next_to_report(tmp_path: Path, capsys):
    corpus = _synth(tmp_path)
    model = _train(tmp_path, corpus)
    capsys.readouterr()
    report = tmp_path / "eval.csv"
    assert _run("evaluate", "--model", model, "--input", corpus / "features.csv", "--output", report) == 0
    out = capsys.readouterr().out
    summary = (tmp_path / "eval_summary.txt").read_text(encoding="utf-8")
    assert "samples: 10" in summary
    assert summary in out
    assert report.read_text(encoding="utf-8").startswith("id,truth,predicted,distance,neighbor_id\n")


def test_synth_is_deterministic(tmp_path: Path):
    first = _synth(tmp_path, "a", "--frames")
    second = _synth(tmp_path, "b", "--frames")
    assert _tree_bytes(first) == _tree_bytes(second)


def test_synth_other_seed_differs(tmp_path: Path):
    first = _synth(tmp_path, "a")
    other = tmp_path / "b"
    assert _run("synth", "--problem", "blue", "--seed", 12, "--counts", SMALL_BLUE, "--output", other) == 0
    assert (first / "features.csv").read_bytes() != (other / "features.csv").read_bytes()


def test_workers_do_not_change_output(tmp_path: Path):
    sequential = _synth(tmp_path, "seq", "--frames")
    parallel = _synth(tmp_path, "par", "--frames", "--workers", 4)
    assert _tree_bytes(sequential) == _tree_bytes(parallel)

    for name, workers in (("rois1", 1), ("rois4", 4)):
        assert _run(
            "extract", "--problem", "blue", "--workers", workers,
            "--input", sequential / "frames", "--output", tmp_path / name,
        ) == 0
    assert _tree_bytes(tmp_path / "rois1") == _tree_bytes(tmp_path / "rois4")


# endregion

# region extract 命令 (extract Command)


def test_extract_marks_frames_without_foreground(tmp_path: Path, capsys):
    frames = tmp_path / "frames"
    bits = np.zeros((32, 32), dtype=bool)
    bits[4:14, 4:14] = True
    write_frame(frame_from_bits(bits), frames / "f1.png")
    write_frame(frame_from_bits(np.zeros_like(bits)), frames / "f2.png")
    write_frame(frame_from_bits(np.roll(bits, 10, axis=1)), frames / "f3.ppm")

    out = tmp_path / "rois"
    assert _run("extract", "--problem", "blue", "--input", frames, "--output", out) == 0
    assert (out / "manifest.csv").read_text(encoding="utf-8") == (
        "frame_id,roi_file\nf1,f1.pgm\nf2,no_foreground\nf3,f3.pgm\n"
    )
    assert sorted(p.name for p in out.glob("*.pgm")) == ["f1.pgm", "f3.pgm"]
    assert "2/3" in capsys.readouterr().out


def test_extract_red_problem_ignores_blue(tmp_path: Path):
    frames = tmp_path / "frames"
    bits = np.zeros((32, 32), dtype=bool)
    bits[4:14, 4:14] = True
    write_frame(frame_from_bits(bits), frames / "f1.png")
    assert _run("extract", "--problem", "red", "--input", frames, "--output", tmp_path / "out") == 0
    assert "f1,no_foreground" in (tmp_path / "out" / "manifest.csv").read_text(encoding="utf-8")


def test_extract_empty_directory(tmp_path: Path):
    frames = tmp_path / "frames"
    frames.mkdir()
    assert _run("extract", "--problem", "blue", "--input", frames, "--output", tmp_path / "out") == 0
    assert (tmp_path / "out" / "manifest.csv").read_text(encoding="utf-8") == "frame_id,roi_file\n"


def test_extract_duplicate_frame_id(tmp_path: Path, capsys):
    frames = tmp_path / "frames"
    bits = np.zeros((16, 16), dtype=bool)
    write_frame(frame_from_bits(bits), frames / "f1.png")
    write_frame(frame_from_bits(bits), frames / "f1.ppm")
    assert _run("extract", "--problem", "blue", "--input", frames, "--output", tmp_path / "out") == 3
    assert _error_line(capsys).startswith("ERROR:DuplicateId:")


# endregion

# region 错误与退出码 (Errors & Exit Codes)


def test_missing_input_directory_is_io_error(tmp_path: Path, capsys):
    code = _run("extract", "--problem", "blue", "--input", tmp_path / "absent", "--output", tmp_path / "out")
    assert code == 2
    assert _error_line(capsys).startswith("ERROR:IoError:")


def test_missing_label(tmp_path: Path, capsys):
    corpus = _synth(tmp_path)
    labels = corpus / "labels.csv"
    lines = labels.read_text(encoding="utf-8").splitlines()
    labels.write_text("\n".join(lines[:-1]) + "\n", encoding="utf-8")
    dropped_id = lines[-1].split(",")[0]

    code = _run("featurize", "--input", corpus / "rois", "--labels", labels, "--output", tmp_path / "f.csv")
    assert code == 3
    line = _error_line(capsys)
    assert line.startswith("ERROR:MissingLabel:")
    assert dropped_id in line
    assert not (tmp_path / "f.csv").exists()


def test_duplicate_label_id(tmp_path: Path, capsys):
    corpus = _synth(tmp_path)
    labels = corpus / "labels.csv"
    lines = labels.read_text(encoding="utf-8").splitlines()
    labels.write_text("\n".join(lines + [lines[1]]) + "\n", encoding="utf-8")

    code = _run("featurize", "--input", corpus / "rois", "--labels", labels, "--output", tmp_path / "f.csv")
    assert code == 3
    assert _error_line(capsys).startswith("ERROR:DuplicateId:")


def test_label_outside_problem(tmp_path: Path, capsys):
    corpus = _synth(tmp_path)
    code = _run(
        "featurize", "--problem", "red", "--input", corpus / "rois",
        "--labels", corpus / "labels.csv", "--output", tmp_path / "f.csv",
    )
    assert code == 3
    assert _error_line(capsys).startswith("ERROR:InvalidLabel:")


def test_unsupported_model_version(tmp_path: Path, capsys):
    corpus = _synth(tmp_path, "corpus", "--frames")
    model = _train(tmp_path, corpus)
    document = json.loads(model.read_text(encoding="utf-8"))
    document["version"] = 999
    model.write_text(json.dumps(document), encoding="utf-8")

    code = _run("classify", "--model", model, "--input", corpus / "frames", "--output", tmp_path / "r.csv")
    assert code == 3
    assert _error_line(capsys).startswith("ERROR:VersionMismatch:")
    assert not (tmp_path / "r.csv").exists()


def test_truncated_model_is_parse_error(tmp_path: Path, capsys):
    corpus = _synth(tmp_path, "corpus", "--frames")
    model = _train(tmp_path, corpus)
    model.write_text(model.read_text(encoding="utf-8")[:40], encoding="utf-8")
    code = _run("classify", "--model", model, "--input", corpus / "frames", "--output", tmp_path / "r.csv")
    assert code == 3
    assert _error_line(capsys).startswith("ERROR:ParseError:")


def test_problem_mismatch(tmp_path: Path, capsys):
    corpus = _synth(tmp_path, "corpus", "--frames")
    model = _train(tmp_path, corpus)
    code = _run(
        "classify", "--problem", "red", "--model", model,
        "--input", corpus / "frames", "--output", tmp_path / "r.csv",
    )
    assert code == 3
    assert _error_line(capsys).startswith("ERROR:ProblemMismatch:")


def test_train_empty_table(tmp_path: Path, capsys):
    table = tmp_path / "empty.csv"
    corpus = _synth(tmp_path)
    header = (corpus / "features.csv").read_text(encoding="utf-8").splitlines()[0]
    table.write_text(header + "\n", encoding="utf-8")
    assert _run("train", "--problem", "blue", "--input", table, "--output", tmp_path / "m.json") == 3
    assert _error_line(capsys).startswith("ERROR:EmptyTable:")


@pytest.mark.parametrize(
    "argv",
    [
        [],
        ["bogus"],
        ["train", "--unknown-flag"],
        ["train", "--problem", "blue"],
        ["synth", "--problem", "green", "--output", "x"],
        ["synth", "--problem", "blue", "--output", "x", "--counts", "V=three"],
        ["synth", "--problem", "blue", "--output", "x", "--workers", "0"],
    ],
)
def test_usage_errors(argv, capsys):
    assert echoctl.main(argv) == 3
    assert _error_line(capsys).startswith("ERROR:ParseError:")


def test_synth_degenerate_counts(tmp_path: Path, capsys):
    code = _run("synth", "--problem", "red", "--counts", "V=2", "--output", tmp_path / "x")
    assert code == 3
    assert _error_line(capsys).split(":")[1] in {"InvalidLabel", "DegenerateSpec"}


def test_unexpected_exception_is_internal(tmp_path: Path, capsys, mocker):
    mocker.patch.object(echoctl.synthgen, "generate_items", side_effect=RuntimeError("boom"))
    code = _run("synth", "--problem", "blue", "--output", tmp_path / "x")
    assert code == 3
    assert _error_line(capsys) == "ERROR:Internal:RuntimeError: boom"


# endregion

# region 配置与运行台账 (Configuration & Run Ledger)


def test_config_file_sets_segmentation(tmp_path: Path):
    corpus = _synth(tmp_path, "corpus", "--frames")
    config = tmp_path / "run.json"
    config.write_text(
        json.dumps({"problem": "blue", "segmentation": {"open_radius": 0}}), encoding="utf-8"
    )
    assert _run("extract", "--config", config, "--input", corpus / "frames", "--output", tmp_path / "rois") == 0
    table = tmp_path / "f.csv"
    assert _run("featurize", "--input", tmp_path / "rois", "--labels", corpus / "labels.csv", "--output", table) == 0
    assert table.read_bytes() == (corpus / "features.csv").read_bytes()


def test_config_file_unknown_key(tmp_path: Path, capsys):
    config = tmp_path / "run.json"
    config.write_text(json.dumps({"colour": "blue"}), encoding="utf-8")
    code = _run("extract", "--config", config, "--input", tmp_path, "--output", tmp_path / "out")
    assert code == 3
    assert _error_line(capsys).startswith("ERROR:ParseError:")


def test_run_ledger(tmp_path: Path, monkeypatch):
    ledger = tmp_path / "runs.jsonl"
    monkeypatch.setenv("ECHOSIG_RUN_LOG", str(ledger))
    _synth(tmp_path)
    assert _run("extract", "--problem", "blue", "--input", tmp_path / "absent", "--output", tmp_path / "o") == 2

    entries = [json.loads(line) for line in ledger.read_text(encoding="utf-8").splitlines()]
    assert [(e["command"], e["status"]) for e in entries] == [
        ("synth", "SUCCESS"),
        ("extract", "FAILURE"),
    ]
    assert entries[0]["details"]["samples"] == 10
    assert entries[1]["details"]["error"].startswith("ERROR:IoError:")


# endregion
