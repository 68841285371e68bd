# -*- coding: utf-8 -*-
"""
合成形状生成服务模块 (Synthetic Shape Generation Service Module)。

以固定的 splitmix64 伪随机数生成器，确定性地生成 V、X、平行线以及"其他"类
(随机椭圆团块 / 单条直线) 的二值 ROI，用于替代不可获得的临床数据。
(Deterministically generates binary ROIs of V, X, parallel-line and "other"
shapes, random ellipse blobs or a single straight line, from the fixed
splitmix64 pseudorandom generator. They stand in for unavailable clinical data.)

栅格化只使用整数运算：粗线段由 "像素中心到线段距离 ≤ stroke/2" 定义，
比较式两边都乘以整数分母。端点由三角函数计算后取整。
(Rasterization is integer-only: a thick segment is the set of pixel centers
within stroke/2 of the segment, with both sides of the comparison scaled to
integers. Endpoints are computed with trigonometry and then rounded.)
"""

# region 模块导入 (Module Imports)
import logging
import math
from concurrent.futures import ThreadPoolExecutor
from typing import Callable, Dict, List, Mapping, Optional, Sequence, Tuple

import numpy as np

from ..core.config import SegmentationConfig
from ..core.errors import DegenerateSpecError, InvalidLabelError
from ..models.enums import ClassLabel, ColorChannel, Problem, ShapeKind
from ..models.feature_models import LabeledSample
from ..models.image_models import BinaryMask, BinaryRoi, Component, RgbFrame
from ..models.synth_models import ShapeSpec, SyntheticItem
from ..utils.helpers import stable_hash64
from .features import featurize
from .imaging import connected_components, extract_roi

# endregion

_synthgen_logger = logging.getLogger(__name__)

Point = Tuple[int, int]

MAX_ATTEMPTS = 8
MIN_SHAPE_AREA = 20
V_OPENING_RANGE = (40.0, 100.0)
X_CROSSING_RANGE = (50.0, 130.0)

# 合成语料的默认参数 (Default parameters of synthetic corpora)
DATASET_CANVAS = 64
DATASET_STROKE_RANGE = (4, 7)
DATASET_JITTER = 0.15

_SHAPE_CONFIG = SegmentationConfig(open_radius=0, min_component_area=MIN_SHAPE_AREA)

# region splitmix64

_MASK64 = (1 << 64) - 1
_GOLDEN_GAMMA = 0x9E3779B97F4A7C15
_MIX1 = 0xBF58476D1CE4E5B9
_MIX2 = 0x94D049BB133111EB


class SplitMix64:
    """
    splitmix64 伪随机数生成器。输出序列与平台无关。
    (splitmix64 pseudorandom generator. Its output sequence is platform-independent.)
    """

    def __init__(self, seed: int):
        self._state = seed & _MASK64

    def next_u64(self) -> int:
        self._state = (self._state + _GOLDEN_GAMMA) & _MASK64
        z = self._state
        z = ((z ^ (z >> 30)) * _MIX1) & _MASK64
        z = ((z ^ (z >> 27)) * _MIX2) & _MASK64
        return z ^ (z >> 31)

    def random(self) -> float:
        """[0, 1) 内的 53 位精度浮点数。(53-bit float in [0, 1).)"""
        return (self.next_u64() >> 11) * (1.0 / (1 << 53))

    def uniform(self, lo: float, hi: float) -> float:
        return lo + (hi - lo) * self.random()

    def randint(self, lo: int, hi: int) -> int:
        """闭区间 [lo, hi] 内的整数。(Integer in the closed range [lo, hi].)"""
        if hi < lo:
            raise ValueError(f"empty range [{lo}, {hi}]")
        return lo + self.next_u64() % (hi - lo + 1)


def splitmix64_array(seed: int, count: int) -> np.ndarray:
    """
    向量化计算 `SplitMix64(seed)` 的前 `count` 个输出。
    (Vectorized first `count` outputs of `SplitMix64(seed)`.)
    """
    steps = np.arange(1, count + 1, dtype=np.uint64)
    # uint64 数组运算按 2^64 取模回绕 (uint64 array arithmetic wraps modulo 2^64)
    with np.errstate(over="ignore"):
        z = np.uint64(seed & _MASK64) + steps * np.uint64(_GOLDEN_GAMMA)
        z = (z ^ (z >> np.uint64(30))) * np.uint64(_MIX1)
        z = (z ^ (z >> np.uint64(27))) * np.uint64(_MIX2)
    return z ^ (z >> np.uint64(31))


def derive_seed(master_seed: int, label: ClassLabel, index: int) -> int:
    """
    每个样本的种子 = (主种子 + 稳定哈希("标签:序号")) mod 2^64。
    (Per-sample seed = (master seed + stable hash of "label:index") mod 2^64.)
    """
    return (master_seed + stable_hash64(f"{label.value}:{index}")) & _MASK64


# endregion

# region 整数栅格化 (Integer Rasterization)


def _polar(length: float, degrees: float) -> Point:
    radians = math.radians(degrees)
    return round(length * math.cos(radians)), round(length * math.sin(radians))


def _add(a: Point, b: Point) -> Point:
    return a[0] + b[0], a[1] + b[1]


def _sub(a: Point, b: Point) -> Point:
    return a[0] - b[0], a[1] - b[1]


def _cross(a: Point, b: Point) -> int:
    return a[0] * b[1] - a[1] * b[0]


def _paint_segment(bits: np.ndarray, a: Point, b: Point, stroke: int) -> None:
    """
    将与线段 ab 距离 ≤ stroke/2 的像素置为前景 (圆头线帽)。
    (Sets every pixel within stroke/2 of segment ab, round caps.)

    比较 4·d² ≤ stroke²；线段内部 d² = cross² / len²。
    (Compares 4·d² ≤ stroke²; inside the segment d² = cross² / len².)
    """
    height, width = bits.shape
    reach = stroke // 2 + 1
    x0, x1 = max(min(a[0], b[0]) - reach, 0), min(max(a[0], b[0]) + reach, width - 1)
    y0, y1 = max(min(a[1], b[1]) - reach, 0), min(max(a[1], b[1]) + reach, height - 1)
    if x0 > x1 or y0 > y1:
        return

    ys, xs = np.mgrid[y0 : y1 + 1, x0 : x1 + 1]
    xs = xs.astype(np.int64)
    ys = ys.astype(np.int64)
    dx, dy = b[0] - a[0], b[1] - a[1]
    wx, wy = xs - a[0], ys - a[1]
    limit = stroke * stroke
    len2 = dx * dx + dy * dy

    to_a = 4 * (wx * wx + wy * wy) <= limit
    if len2 == 0:
        inside = to_a
    else:
        dot = wx * dx + wy * dy
        to_b = 4 * ((xs - b[0]) ** 2 + (ys - b[1]) ** 2) <= limit
        cross = wx * dy - wy * dx
        to_line = 4 * cross * cross <= limit * len2
        inside = np.where(dot <= 0, to_a, np.where(dot >= len2, to_b, to_line))
    bits[y0 : y1 + 1, x0 : x1 + 1] |= inside


def _paint_ellipse(bits: np.ndarray, center: Point, a: int, b: int) -> None:
    """轴对齐实心椭圆：(x−cx)²·b² + (y−cy)²·a² ≤ a²·b²。(Axis-aligned filled ellipse.)"""
    height, width = bits.shape
    x0, x1 = max(center[0] - a, 0), min(center[0] + a, width - 1)
    y0, y1 = max(center[1] - b, 0), min(center[1] + b, height - 1)
    ys, xs = np.mgrid[y0 : y1 + 1, x0 : x1 + 1]
    xs = xs.astype(np.int64) - center[0]
    ys = ys.astype(np.int64) - center[1]
    bits[y0 : y1 + 1, x0 : x1 + 1] |= xs * xs * b * b + ys * ys * a * a <= a * a * b * b


def _within(points: Sequence[Point], canvas: int, margin: int) -> bool:
    return all(margin <= c <= canvas - 1 - margin for p in points for c in p)


# endregion

# region 形状绘制 (Shape Drawers)


def _margin(spec: ShapeSpec) -> int:
    return spec.stroke // 2 + 2


def _jitter_offset(rng: SplitMix64, spec: ShapeSpec, length: float) -> Point:
    reach = int(round(spec.jitter * length / 4.0))
    return rng.randint(-reach, reach), rng.randint(-reach, reach)


def _draw_v(spec: ShapeSpec, rng: SplitMix64, bits: np.ndarray) -> bool:
    n = spec.canvas
    center = (n // 2, n // 2)
    length = rng.uniform(0.30 * n, 0.42 * n)
    opening = rng.uniform(*V_OPENING_RANGE)
    apex = _sub(center, _polar(length / 2.0, spec.angle))
    ends = []
    for side in (-1.0, 1.0):
        arm = length * (1.0 - spec.jitter * rng.random())
        tip = _add(apex, _polar(arm, spec.angle + side * opening / 2.0))
        ends.append(_add(tip, _jitter_offset(rng, spec, arm)))
    if not _within([apex] + ends, n, _margin(spec)):
        return False
    for end in ends:
        _paint_segment(bits, apex, end, spec.stroke)
    return True


def _draw_x(spec: ShapeSpec, rng: SplitMix64, bits: np.ndarray) -> bool:
    n = spec.canvas
    center = (n // 2, n // 2)
    length = rng.uniform(0.28 * n, 0.38 * n)
    crossing = rng.uniform(*X_CROSSING_RANGE)
    polylines = []
    for direction in (spec.angle, spec.angle + crossing):
        ends = []
        for sign in (1.0, -1.0):
            half = length * (1.0 - spec.jitter * rng.random())
            tip = _add(center, _polar(sign * half, direction))
            ends.append(_add(tip, _jitter_offset(rng, spec, half)))
        polylines.append(ends)
    if not _within([p for ends in polylines for p in ends], n, _margin(spec)):
        return False
    # 每笔都穿过精确的中心点，两笔必然相交 (both strokes pass through the exact center)
    for first, second in polylines:
        _paint_segment(bits, first, center, spec.stroke)
        _paint_segment(bits, center, second, spec.stroke)
    return True


def _draw_parallel(spec: ShapeSpec, rng: SplitMix64, bits: np.ndarray) -> bool:
    n = spec.canvas
    center = (n // 2, n // 2)
    min_separation = 2 * spec.stroke + 2
    direction = _polar(rng.uniform(0.50 * n, 0.70 * n), spec.angle)
    separation = rng.uniform(min_separation + 1, min_separation + 0.15 * n)
    offset = _polar(separation, spec.angle + 90.0)
    stagger = spec.jitter * rng.uniform(-0.25, 0.25)
    offset = _add(offset, (round(stagger * direction[0]), round(stagger * direction[1])))

    len2 = direction[0] ** 2 + direction[1] ** 2
    if len2 == 0:
        return False
    # 两条中心线的垂直距离 |offset × direction| / |direction| ≥ 2·stroke + 2
    # (perpendicular distance between the two center lines)
    if _cross(offset, direction) ** 2 < min_separation**2 * len2:
        return False

    start = (
        center[0] - direction[0] // 2 - offset[0] // 2,
        center[1] - direction[1] // 2 - offset[1] // 2,
    )
    segments = [
        (start, _add(start, direction)),
        (_add(start, offset), _add(_add(start, offset), direction)),
    ]
    if not _within([p for seg in segments for p in seg], n, _margin(spec)):
        return False
    for a, b in segments:
        _paint_segment(bits, a, b, spec.stroke)
    return True


def _draw_other_blob(spec: ShapeSpec, rng: SplitMix64, bits: np.ndarray) -> bool:
    n = spec.canvas
    center = (n // 2, n // 2)
    margin = _margin(spec)
    min_axis = max(3, spec.stroke)
    max_axis = max(min_axis, n // 5)
    for _ in range(rng.randint(1, 4)):
        a = rng.randint(min_axis, max_axis)
        b = rng.randint(min_axis, max_axis)
        reach = max(0.0, n / 2.0 - max(a, b) - margin - 1)
        spot = _add(center, _polar(rng.uniform(0.0, reach), spec.angle + rng.uniform(0.0, 360.0)))
        if not _within([(spot[0] - a, spot[1] - b), (spot[0] + a, spot[1] + b)], n, margin):
            return False
        _paint_ellipse(bits, spot, a, b)
    return True


def _draw_other_line(spec: ShapeSpec, rng: SplitMix64, bits: np.ndarray) -> bool:
    n = spec.canvas
    center = (n // 2, n // 2)
    length = rng.uniform(0.40 * n, 0.70 * n)
    direction = _polar(length, spec.angle)
    a = _add(_sub(center, (direction[0] // 2, direction[1] // 2)), _jitter_offset(rng, spec, length))
    b = _add(_add(a, direction), _jitter_offset(rng, spec, length))
    if not _within([a, b], n, _margin(spec)):
        return False
    _paint_segment(bits, a, b, spec.stroke)
    return True


_DRAWERS: Dict[ShapeKind, Callable[[ShapeSpec, SplitMix64, np.ndarray], bool]] = {
    ShapeKind.V: _draw_v,
    ShapeKind.X: _draw_x,
    ShapeKind.PARALLEL: _draw_parallel,
    ShapeKind.OTHER_BLOB: _draw_other_blob,
    ShapeKind.OTHER_LINE: _draw_other_line,
}

# 各形状要求的连通分量数；None 表示至少 1 个 (required component count; None means at least one)
_EXPECTED_COMPONENTS: Dict[ShapeKind, Optional[int]] = {
    ShapeKind.V: 1,
    ShapeKind.X: 1,
    ShapeKind.PARALLEL: 2,
    ShapeKind.OTHER_BLOB: None,
    ShapeKind.OTHER_LINE: 1,
}


def _geometry_holds(kind: ShapeKind, components: List[Component]) -> bool:
    expected = _EXPECTED_COMPONENTS[kind]
    if expected is None:
        return any(c.pixel_count >= MIN_SHAPE_AREA for c in components)
    return len(components) == expected and all(
        c.pixel_count >= MIN_SHAPE_AREA for c in components
    )


# endregion

# region 生成接口 (Generation API)


def generate(spec: ShapeSpec) -> BinaryRoi:
    """
    按 spec 栅格化形状并经过 ROI 提取 (紧致裁剪、设置多边形数)。
    形状几何约束不成立时在同一随机流上重新采样，最多 8 次。
    (Rasterizes the shape of a spec and passes it through ROI extraction, tight
    crop and polygon count. When the class geometry does not hold the shape is
    resampled on the same random stream, at most 8 times.)

    异常 (Raises):
        DegenerateSpecError: 8 次采样都失败。(All 8 attempts failed.)
    """
    rng = SplitMix64(spec.seed)
    drawer = _DRAWERS[spec.kind]
    for attempt in range(1, MAX_ATTEMPTS + 1):
        bits = np.zeros((spec.canvas, spec.canvas), dtype=bool)
        if not drawer(spec, rng, bits):
            _synthgen_logger.debug(
                f"{spec.kind.value} 第 {attempt} 次采样越界 (attempt {attempt} out of canvas)"
            )
            continue
        mask = BinaryMask(bits=bits)
        if not _geometry_holds(spec.kind, connected_components(mask)):
            _synthgen_logger.debug(
                f"{spec.kind.value} 第 {attempt} 次采样几何不符 (attempt {attempt} geometry check failed)"
            )
            continue
        return extract_roi(mask, _SHAPE_CONFIG)
    raise DegenerateSpecError(
        f"{spec.kind.value} (canvas {spec.canvas}, stroke {spec.stroke}, seed {spec.seed}) "
        f"failed {MAX_ATTEMPTS} attempts"
    )


def _kind_for(label: ClassLabel, index: int) -> ShapeKind:
    if label is ClassLabel.OTHER:
        return ShapeKind.OTHER_BLOB if index % 2 == 0 else ShapeKind.OTHER_LINE
    return ShapeKind(label.value)


def sample_spec(label: ClassLabel, index: int, master_seed: int) -> ShapeSpec:
    """
    由主种子派生第 index 个 `label` 样本的 ShapeSpec：笔画 4–7，角度均匀分布。
    (Derives the ShapeSpec of the index-th `label` sample from the master seed:
    stroke 4–7, uniformly distributed angle.)
    """
    seed = derive_seed(master_seed, label, index)
    rng = SplitMix64(seed)
    return ShapeSpec(
        kind=_kind_for(label, index),
        canvas=DATASET_CANVAS,
        stroke=rng.randint(*DATASET_STROKE_RANGE),
        angle=rng.uniform(0.0, 360.0),
        jitter=DATASET_JITTER,
        seed=seed,
    )


def synthetic_id(label: ClassLabel, index: int) -> str:
    return f"synth_{label.value}_{index:04d}"


def _check_counts(counts: Mapping[ClassLabel, int], problem: Problem) -> None:
    for label, count in counts.items():
        if label not in problem.labels:
            raise InvalidLabelError(
                f"label '{label.value}' is not valid for problem {problem.value}"
            )
        if count < 0:
            raise ValueError(f"count for {label.value} must be >= 0, got {count}")


def generate_items(
    counts: Mapping[ClassLabel, int],
    problem: Problem,
    seed: int,
    max_workers: int = 1,
) -> List[SyntheticItem]:
    """
    生成带标签的合成 ROI，按问题的标签顺序、再按序号排列。
    (Generates labeled synthetic ROIs ordered by the problem's label order,
    then by index.)

    异常 (Raises):
        InvalidLabelError: counts 中含有不属于该问题的标签。(A label outside the problem's set.)
        DegenerateSpecError: 某个样本生成失败，错误中带有样本 id。(A sample failed; the id is attached.)
    """
    _check_counts(counts, problem)
    jobs = [
        (synthetic_id(label, index), label, sample_spec(label, index, seed))
        for label in problem.labels
        for index in range(counts.get(label, 0))
    ]

    def build(job: Tuple[str, ClassLabel, ShapeSpec]) -> SyntheticItem:
        sample_id, label, spec = job
        try:
            return SyntheticItem(sample_id, label, spec, generate(spec))
        except DegenerateSpecError as e:
            raise DegenerateSpecError(e.detail, sample_id=sample_id) from e

    if max_workers > 1:
        with ThreadPoolExecutor(max_workers=max_workers) as pool:
            items = list(pool.map(build, jobs))
    else:
        items = [build(job) for job in jobs]

    _synthgen_logger.info(
        f"已生成 {len(items)} 个合成样本 (Generated {len(items)} synthetic samples)",
        extra={"problem": problem.value, "seed": seed},
    )
    return items


def generate_dataset(
    counts: Mapping[ClassLabel, int],
    problem: Problem,
    seed: int,
    max_workers: int = 1,
) -> List[LabeledSample]:
    """
    生成并特征化合成语料；id 形如 `synth_<label>_<index>`。
    (Generates and featurizes a synthetic corpus; ids look like
    `synth_<label>_<index>`.)
    """
    return [
        LabeledSample(id=item.sample_id, label=item.label, features=featurize(item.roi))
        for item in generate_items(counts, problem, seed, max_workers)
    ]


# endregion

# region 彩色帧渲染 (Color Frame Rendering)

DOPPLER_COLORS: Dict[ColorChannel, Tuple[int, int, int]] = {
    ColorChannel.BLUE: (30, 60, 220),
    ColorChannel.RED: (220, 30, 40),
}
FRAME_PADDING = 6
BACKGROUND_GRAY_RANGE = (16, 72)
SPECKLE_COUNT = 4


def render_frame(roi: BinaryRoi, channel: ColorChannel, seed: int) -> RgbFrame:
    """
    将 ROI 以多普勒蓝色或红色绘制到带噪声的深灰背景上，四周留 6 像素边框，
    并在边框内撒少量孤立的同色噪点 (面积 1，会被面积过滤丢弃)。
    (Paints a ROI in Doppler blue or red onto a noisy dark-gray background with a
    6-pixel border, and sprinkles a few isolated same-colored speckles of area 1
    in the border, which the area filter discards.)

    灰色像素 r = g = b，饱和度为 0，永远不会成为前景。
    (Gray pixels have r = g = b, hence saturation 0, and never become foreground.)
    """
    height = roi.height + 2 * FRAME_PADDING
    width = roi.width + 2 * FRAME_PADDING
    noise = splitmix64_array(seed, height * width + SPECKLE_COUNT)

    lo, hi = BACKGROUND_GRAY_RANGE
    gray = (lo + noise[: height * width] % np.uint64(hi - lo + 1)).astype(np.uint8)
    pixels = np.repeat(gray.reshape(height, width, 1), 3, axis=2)

    color = np.array(DOPPLER_COLORS[channel], dtype=np.uint8)
    window = pixels[FRAME_PADDING : FRAME_PADDING + roi.height, FRAME_PADDING : FRAME_PADDING + roi.width]
    window[roi.bits] = color

    # 噪点位于第 1 行或倒数第 2 行，彼此间隔 ≥ 2，距 ROI ≥ 4 像素
    # (speckles sit on row 1 or the second-to-last row, ≥ 2 apart and ≥ 4 pixels from the ROI)
    slots = (width - 2) // 2
    for k in range(SPECKLE_COUNT):
        draw = int(noise[height * width + k])
        row = 1 if k % 2 == 0 else height - 2
        column = 1 + 2 * (draw % slots)
        pixels[row, column] = color

    return RgbFrame(pixels=pixels)


# endregion

__all__ = [
    "MAX_ATTEMPTS",
    "MIN_SHAPE_AREA",
    "DOPPLER_COLORS",
    "SplitMix64",
    "splitmix64_array",
    "derive_seed",
    "generate",
    "sample_spec",
    "synthetic_id",
    "generate_items",
    "generate_dataset",
    "render_frame",
]
