#!/usr/bin/env python
# -*- coding: utf-8 -*-
"""
命令行批处理工具 (echoctl.py)
(Command Line Batch Tool (echoctl.py))

此脚本把彩色多普勒帧的处理流程串联为六个子命令：
提取 ROI、构建特征表、训练模型、分类帧目录、对照真实标签评估以及生成合成语料。
(This script wires the color-Doppler frame pipeline into six subcommands:
extract ROIs, build feature tables, train a model, classify a directory of
frames, evaluate against truth labels and emit a synthetic corpus.)

退出码 (Exit codes): 0 成功 (success)，2 IO 错误 (IO error)，3 数据错误 (data error)。
失败时标准错误输出一行 `ERROR:<kind>:<detail>`。
(On failure standard error carries one line `ERROR:<kind>:<detail>`.)

使用示例 (Usage Examples):
  python echoctl.py synth --problem blue --seed 7 --output corpus --frames
  python echoctl.py featurize --input corpus/rois --labels corpus/labels.csv --output blue.csv
  python echoctl.py train --problem blue --input blue.csv --output blue_model.json
  python echoctl.py extract --problem blue --input frames --output rois
  python echoctl.py classify --model blue_model.json --input frames --output report.csv
  python echoctl.py evaluate --model blue_model.json --input frames --labels truth.csv --output eval.csv
"""

import argparse
import logging
import sys
from concurrent.futures import ThreadPoolExecutor
from pathlib import Path
from typing import Any, Callable, Dict, List, Optional, Sequence, Tuple, TypeVar

# 调整Python搜索路径，以允许从 'app' 包导入模块
# (Adjust Python search path to allow importing modules from the 'app' package)
sys.path.insert(0, str(Path(__file__).resolve().parent))

from app.core.config import RunConfig, build_run_config, get_settings, setup_logging
from app.core.errors import (
    EXIT_DATA_ERROR,
    EXIT_OK,
    DuplicateIdError,
    EmptyTableError,
    EchoSigError,
    InvalidLabelError,
    MissingLabelError,
    ParseError,
    ProblemMismatchError,
)
from app.crud.feature_table import (
    read_feature_csv,
    read_labels_csv,
    write_feature_csv,
    write_labels_csv,
)
from app.crud.frames import read_frame, read_roi_pgm, write_frame, write_roi_pgm
from app.crud.model_store import load_model, save_model
from app.models.classifier_models import ClassifierModel, ReportRecord
from app.models.enums import ClassLabel, ErrorKindEnum, LogLevelEnum, Problem
from app.models.feature_models import LabeledSample
from app.services import classifier, features, imaging, synthgen
from app.services.run_logger import RunLoggerService
from app.utils.export_utils import (
    write_manifest_csv,
    summary_path_for,
    write_report_csv,
    write_summary_text,
    write_xlsx_report,
)
from app.utils.helpers import (
    FRAME_SUFFIXES,
    ROI_SUFFIXES,
    ensure_directory,
    list_files,
    sample_id_for,
)

_echoctl_logger = logging.getLogger("echoctl")

T = TypeVar("T")
R = TypeVar("R")

MANIFEST_FILE_NAME = "manifest.csv"
DEFAULT_SYNTH_COUNTS: Dict[Problem, Dict[ClassLabel, int]] = {
    Problem.BLUE_SIGNATURES: {ClassLabel.V: 20, ClassLabel.X: 12, ClassLabel.OTHER: 21},
    Problem.RED_PARALLEL: {ClassLabel.PARALLEL: 20, ClassLabel.OTHER: 20},
}


class UsageError(EchoSigError):
    """命令行参数错误。(Invalid command-line usage.)"""

    kind = ErrorKindEnum.PARSE_ERROR


class _ArgumentParser(argparse.ArgumentParser):
    """参数错误以 UsageError 抛出，而不是打印用法后退出。(Raises UsageError instead of printing usage and exiting.)"""

    def error(self, message: str):
        raise UsageError(f"usage: {message}")


# region 辅助函数 (Helper Functions)


def _require(value: Optional[T], flag: str, command: str) -> T:
    if value is None:
        raise UsageError(f"{flag} is required for '{command}'")
    return value


def _parallel_map(func: Callable[[T], R], items: Sequence[T], workers: int) -> List[R]:
    """按输入顺序返回结果；workers = 1 时顺序执行。(Results in input order; sequential when workers = 1.)"""
    if workers <= 1 or len(items) <= 1:
        return [func(item) for item in items]
    with ThreadPoolExecutor(max_workers=workers) as pool:
        return list(pool.map(func, items))


def _files_by_id(directory: Path, suffixes: Sequence[str]) -> List[Tuple[str, Path]]:
    """目录中的文件按样本 id 排序；同名不同后缀视为重复 id。(Files ordered by sample id; same stem twice is a duplicate.)"""
    entries: Dict[str, Path] = {}
    for path in list_files(directory, suffixes):
        sample_id = sample_id_for(path)
        if sample_id in entries:
            raise DuplicateIdError(sample_id)
        entries[sample_id] = path
    return sorted(entries.items())


def _check_problem(model: ClassifierModel, cfg: RunConfig) -> None:
    if cfg.problem is not None and cfg.problem is not model.problem:
        raise ProblemMismatchError(
            f"model was trained for {model.problem.value}, run asks for {cfg.problem.value}"
        )


def _check_label(label: ClassLabel, problem: Problem, sample_id: str) -> None:
    if label not in problem.labels:
        raise InvalidLabelError(
            f"sample '{sample_id}' has label '{label.value}', not valid for {problem.value}",
            sample_id=sample_id,
        )


def _parse_counts(text: str) -> Dict[ClassLabel, int]:
    """解析 `V=20,X=12,Other=21` 形式的类别数量。(Parses `V=20,X=12,Other=21` style counts.)"""
    counts: Dict[ClassLabel, int] = {}
    for part in filter(None, (p.strip() for p in text.split(","))):
        name, sep, number = part.partition("=")
        try:
            label = ClassLabel(name.strip())
            count = int(number)
        except ValueError:
            raise UsageError(f"--counts entry '{part}' is not LABEL=COUNT") from None
        if not sep or count < 0:
            raise UsageError(f"--counts entry '{part}' is not LABEL=COUNT")
        counts[label] = count
    return counts


def _classify_frames(
    model: ClassifierModel, frames: List[Tuple[str, Path]], cfg: RunConfig
) -> List[Tuple[str, Any]]:
    # 预先构建缓存，避免多线程重复计算 (build the cache up front so worker threads share it)
    model.neighbor_table()

    def run(entry: Tuple[str, Path]):
        frame_id, path = entry
        return frame_id, classifier.classify_frame(model, read_frame(path), cfg.segmentation)

    return _parallel_map(run, frames, cfg.workers)


def _write_optional_xlsx(args: argparse.Namespace, records, matrix=None) -> None:
    if getattr(args, "xlsx", None):
        write_xlsx_report(records, Path(args.xlsx), matrix)
        print(f"XLSX 报告已写入 (XLSX report written): {args.xlsx}")


# endregion

# region 子命令 (Subcommands)


def extract_command(args: argparse.Namespace, cfg: RunConfig) -> Dict[str, Any]:
    """
    处理 'extract' 命令：从帧目录中逐帧提取 ROI 并写出 PGM 与清单。
    (Handles the 'extract' command: extracts one ROI per frame into PGM files
    plus a manifest.)
    """
    problem = _require(cfg.problem, "--problem", "extract")
    input_dir = _require(cfg.input, "--input", "extract")
    output_dir = ensure_directory(_require(cfg.output, "--output", "extract"))

    frames = _files_by_id(input_dir, FRAME_SUFFIXES)

    def run(entry: Tuple[str, Path]):
        frame_id, path = entry
        return frame_id, imaging.segment_frame(read_frame(path), problem.channel, cfg.segmentation)

    manifest: List[Tuple[str, Optional[str]]] = []
    for frame_id, roi in _parallel_map(run, frames, cfg.workers):
        if roi is None:
            manifest.append((frame_id, None))
            continue
        roi_name = f"{frame_id}.pgm"
        write_roi_pgm(roi, output_dir / roi_name)
        manifest.append((frame_id, roi_name))
    write_manifest_csv(manifest, output_dir / MANIFEST_FILE_NAME)

    with_roi = sum(1 for _, name in manifest if name)
    print(f"已提取 {with_roi}/{len(manifest)} 帧的 ROI (Extracted ROIs from {with_roi}/{len(manifest)} frames)")
    return {"frames": len(manifest), "rois": with_roi}


def featurize_command(args: argparse.Namespace, cfg: RunConfig) -> Dict[str, Any]:
    """
    处理 'featurize' 命令：为 ROI 目录中每个带标签的 PGM 计算 28 维特征并写出 CSV。
    (Handles the 'featurize' command: computes the 28 features of every labeled
    PGM ROI of a directory and writes the CSV.)
    """
    input_dir = _require(cfg.input, "--input", "featurize")
    labels_path = _require(cfg.labels, "--labels", "featurize")
    output = _require(cfg.output, "--output", "featurize")

    labels = read_labels_csv(labels_path)
    rois = _files_by_id(input_dir, ROI_SUFFIXES)
    for roi_id, _ in rois:
        if roi_id not in labels:
            raise MissingLabelError(roi_id)
        if cfg.problem is not None:
            _check_label(labels[roi_id], cfg.problem, roi_id)

    unused = sorted(set(labels) - {roi_id for roi_id, _ in rois})
    if unused:
        _echoctl_logger.warning(
            f"{len(unused)} 个标签没有对应的 ROI 文件 ({len(unused)} label(s) without ROI file): {unused[:5]}"
        )

    def run(entry: Tuple[str, Path]) -> LabeledSample:
        roi_id, path = entry
        return LabeledSample(
            id=roi_id, label=labels[roi_id], features=features.featurize(read_roi_pgm(path))
        )

    samples = _parallel_map(run, rois, cfg.workers)
    write_feature_csv(samples, output)
    print(f"特征表已写入 (Feature table written): {output} ({len(samples)} rows)")
    return {"samples": len(samples)}


def train_command(args: argparse.Namespace, cfg: RunConfig) -> Dict[str, Any]:
    """处理 'train' 命令：读取特征表、训练 1-NN 模型并保存 JSON。(Handles 'train'.)"""
    problem = _require(cfg.problem, "--problem", "train")
    input_path = _require(cfg.input, "--input", "train")
    output = _require(cfg.output, "--output", "train")

    model = classifier.train(read_feature_csv(input_path), problem)
    save_model(model, output)
    print(f"模型已保存 (Model saved): {output} ({len(model.samples)} samples)")
    return {
        "samples": len(model.samples),
        "class_counts": {label.value: n for label, n in model.class_counts()},
    }


def classify_command(args: argparse.Namespace, cfg: RunConfig) -> Dict[str, Any]:
    """
    处理 'classify' 命令：按帧 id 字典序对帧目录分类并写出报告 CSV。
    (Handles the 'classify' command: classifies a frame directory in
    lexicographic frame id order and writes the report CSV.)
    """
    model = load_model(_require(cfg.model, "--model", "classify"))
    _check_problem(model, cfg)
    input_dir = _require(cfg.input, "--input", "classify")
    output = _require(cfg.output, "--output", "classify")

    frames = _files_by_id(input_dir, FRAME_SUFFIXES)
    records = [
        ReportRecord(id=frame_id, prediction=prediction)
        for frame_id, prediction in _classify_frames(model, frames, cfg)
    ]
    write_report_csv(records, output)
    _write_optional_xlsx(args, records)

    per_label = {label.value: 0 for label in model.problem.labels}
    for record in records:
        per_label[record.prediction.label.value] += 1
    print(f"已分类 {len(records)} 帧 (Classified {len(records)} frames): {per_label}")
    return {"frames": len(records), "predicted": per_label}


def evaluate_command(args: argparse.Namespace, cfg: RunConfig) -> Dict[str, Any]:
    """
    处理 'evaluate' 命令：输入为特征表 CSV (真实表)，或帧目录加 `--labels` 真实标签；
    打印混淆矩阵摘要；给出 `--output` 时写出报告 CSV 及其旁边的 `<stem>_summary.txt`。
    (Handles the 'evaluate' command: the input is either a feature CSV truth
    table, or a frame directory plus a `--labels` truth CSV; prints the
    confusion matrix summary. With `--output` it writes the report CSV and the
    same summary next to it as `<stem>_summary.txt`.)
    """
    model = load_model(_require(cfg.model, "--model", "evaluate"))
    _check_problem(model, cfg)
    input_path = _require(cfg.input, "--input", "evaluate")

    if input_path.is_dir():
        truth = read_labels_csv(_require(cfg.labels, "--labels", "evaluate"))
        frames = _files_by_id(input_path, FRAME_SUFFIXES)
        for frame_id, _ in frames:
            if frame_id not in truth:
                raise MissingLabelError(frame_id)
            _check_label(truth[frame_id], model.problem, frame_id)
        records = [
            ReportRecord(id=frame_id, truth=truth[frame_id], prediction=prediction)
            for frame_id, prediction in _classify_frames(model, frames, cfg)
        ]
        if not records:
            raise EmptyTableError(f"no frames in {input_path}")
        matrix = classifier.confusion_from_pairs(
            model.problem.labels, ((r.truth, r.prediction.label) for r in records)
        )
    else:
        matrix, records = classifier.evaluate_detailed(model, read_feature_csv(input_path))

    if cfg.output is not None:
        write_report_csv(records, cfg.output, with_truth=True)
        write_summary_text(matrix, summary_path_for(cfg.output), model.problem)
    _write_optional_xlsx(args, records, matrix)

    sys.stdout.write(matrix.summary_text(model.problem))
    return {
        "samples": matrix.total,
        "accuracy": matrix.accuracy,
        "macro_recall": matrix.macro_recall,
    }


def synth_command(args: argparse.Namespace, cfg: RunConfig) -> Dict[str, Any]:
    """
    处理 'synth' 命令：生成带种子的合成语料 (rois/, labels.csv, features.csv，
    以及 `--frames` 时的彩色帧 frames/)。
    (Handles the 'synth' command: writes a seeded synthetic corpus, rois/,
    labels.csv and features.csv, plus colored frames/ with `--frames`.)
    """
    problem = _require(cfg.problem, "--problem", "synth")
    output_dir = ensure_directory(_require(cfg.output, "--output", "synth"))
    counts = _parse_counts(args.counts) if args.counts else DEFAULT_SYNTH_COUNTS[problem]

    items = synthgen.generate_items(counts, problem, cfg.seed, cfg.workers)

    roi_dir = ensure_directory(output_dir / "rois")
    for item in items:
        write_roi_pgm(item.roi, roi_dir / f"{item.sample_id}.pgm")
    write_labels_csv({item.sample_id: item.label for item in items}, output_dir / "labels.csv")

    samples = _parallel_map(
        lambda item: LabeledSample(
            id=item.sample_id, label=item.label, features=features.featurize(item.roi)
        ),
        items,
        cfg.workers,
    )
    write_feature_csv(sorted(samples, key=lambda s: s.id), output_dir / "features.csv")

    if args.frames:
        frame_dir = ensure_directory(output_dir / "frames")
        for item in items:
            frame = synthgen.render_frame(item.roi, problem.channel, item.spec.seed)
            write_frame(frame, frame_dir / f"{item.sample_id}.png")

    print(f"已生成 {len(items)} 个合成样本 (Generated {len(items)} synthetic samples): {output_dir}")
    return {"samples": len(items), "counts": {label.value: n for label, n in counts.items()}}


# endregion

# region 参数解析与入口 (Argument Parsing & Entry Point)


def build_parser() -> argparse.ArgumentParser:
    """构建命令行参数解析器。(Builds the command-line argument parser.)"""
    common = _ArgumentParser(add_help=False)
    common.add_argument("--problem", help="分类问题 blue|red (Classification problem)")
    common.add_argument("--config", type=Path, help="JSON 运行配置文件 (JSON run configuration)")
    common.add_argument("--input", type=Path, help="输入目录或文件 (Input directory or file)")
    common.add_argument("--output", type=Path, help="输出目录或文件 (Output directory or file)")
    common.add_argument("--model", type=Path, help="模型 JSON 文件 (Model JSON file)")
    common.add_argument("--labels", type=Path, help="标签 CSV (id,label) (Label CSV)")
    common.add_argument("--seed", type=int, help="合成语料主种子 (Master seed for synth)")
    common.add_argument(
        "--min-area", dest="min_component_area", type=int, help="最小连通分量像素数 (Minimum component area)"
    )
    common.add_argument("--open-radius", type=int, help="形态学开运算半径 (Opening radius)")
    common.add_argument("--workers", type=int, help="逐帧处理线程数 (Worker threads)")
    common.add_argument("-v", "--verbose", action="store_true", help="输出 INFO 级日志 (INFO logging)")
    common.add_argument(
        "--log-level",
        choices=[level.value for level in LogLevelEnum],
        help="控制台日志级别 (Console log level)",
    )

    parser = _ArgumentParser(
        prog="echoctl",
        description="彩色多普勒帧分类批处理工具 (Color-Doppler frame classification batch tool)",
    )
    subparsers = parser.add_subparsers(dest="command", required=True, help="可用的命令")

    extract_parser = subparsers.add_parser("extract", parents=[common], help="从帧中提取 ROI。")
    extract_parser.set_defaults(func=extract_command)

    featurize_parser = subparsers.add_parser("featurize", parents=[common], help="构建特征表。")
    featurize_parser.set_defaults(func=featurize_command)

    train_parser = subparsers.add_parser("train", parents=[common], help="训练最近邻模型。")
    train_parser.set_defaults(func=train_command)

    classify_parser = subparsers.add_parser("classify", parents=[common], help="分类帧目录。")
    classify_parser.add_argument("--xlsx", help="额外写出 XLSX 报告 (Also write an XLSX report)")
    classify_parser.set_defaults(func=classify_command)

    evaluate_parser = subparsers.add_parser("evaluate", parents=[common], help="对照真实标签评估。")
    evaluate_parser.add_argument("--xlsx", help="额外写出 XLSX 报告 (Also write an XLSX report)")
    evaluate_parser.set_defaults(func=evaluate_command)

    synth_parser = subparsers.add_parser("synth", parents=[common], help="生成合成语料。")
    synth_parser.add_argument("--counts", help="类别数量，如 V=20,X=12,Other=21 (Per-class counts)")
    synth_parser.add_argument(
        "--frames", action="store_true", help="同时渲染彩色帧 (Also render colored frames)"
    )
    synth_parser.set_defaults(func=synth_command)

    return parser


def _console_level(args: argparse.Namespace, default: LogLevelEnum) -> str:
    if getattr(args, "log_level", None):
        return args.log_level
    if getattr(args, "verbose", False):
        return LogLevelEnum.INFO.value
    return default.value


def main(argv: Optional[Sequence[str]] = None) -> int:
    """
    命令行入口，返回退出码 0 / 2 / 3。
    (Command-line entry point; returns exit code 0 / 2 / 3.)
    """
    command = "unknown"
    cfg: Optional[RunConfig] = None
    details: Dict[str, Any] = {}
    try:
        args = build_parser().parse_args(argv)
        command = args.command
        settings = get_settings()
        setup_logging(
            _console_level(args, settings.log_level), settings.log_file_name, settings.data_dir
        )
        cfg = build_run_config(
            settings,
            args.config,
            {
                "problem": args.problem,
                "input": args.input,
                "output": args.output,
                "model": args.model,
                "labels": args.labels,
                "seed": args.seed,
                "min_component_area": args.min_component_area,
                "open_radius": args.open_radius,
                "workers": args.workers,
            },
        )
        _echoctl_logger.info(f"运行 (Running) {command}", extra={"command": command})
        details = args.func(args, cfg) or {}
        exit_code, status = EXIT_OK, "SUCCESS"
    except EchoSigError as e:
        print(e.cli_line(), file=sys.stderr)
        exit_code, status = e.exit_code, "FAILURE"
        details = {"error": e.cli_line()}
    except Exception as e:
        _echoctl_logger.debug("未预期的异常 (Unexpected exception)", exc_info=True)
        internal = EchoSigError(f"{type(e).__name__}: {e}")
        print(internal.cli_line(), file=sys.stderr)
        exit_code, status = EXIT_DATA_ERROR, "FAILURE"
        details = {"error": internal.cli_line()}

    _record_run(command, status, cfg, details)
    return exit_code


def _record_run(
    command: str, status: str, cfg: Optional[RunConfig], details: Dict[str, Any]
) -> None:
    try:
        ledger_path = get_settings().run_log_path
    except Exception:
        return
    if ledger_path is None:
        return
    ledger = RunLoggerService(ledger_path)
    ledger.log_event(
        command=command,
        status=status,
        input_path=cfg.input if cfg else None,
        output_path=cfg.output if cfg else None,
        details=details,
    )
    ledger.close()


if __name__ == "__main__":
    sys.exit(main())

# endregion
