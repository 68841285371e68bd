# -*- coding: utf-8 -*-
"""
Zernike 矩服务模块 (Zernike Moments Service Module)。

在以前景质心为中心、以最远前景像素距离为半径的单位圆盘上，计算二值 ROI 的
25 个旋转不变 Zernike 矩幅值 (阶数 n ≤ 8，n − m 为偶数)。
(Computes the 25 rotation-invariant Zernike moment magnitudes of a binary ROI
over a unit disk centered on the foreground centroid, with the radius set by the
farthest foreground pixel; orders n ≤ 8 with n − m even.)

像素 (x, y) 的采样点位于整数坐标 (x, y)。特征顺序 (`canonical_index_set`)
是持久化 CSV / 模型格式的一部分，不得随意更改。
(Pixel (x, y) samples at the integer point (x, y). The feature order,
`canonical_index_set`, is part of the persisted CSV / model schema and must not
change.)
"""

import math
from functools import lru_cache
from typing import List, NamedTuple, Tuple

import numpy as np

from ..core.errors import InvalidIndexError
from ..models.image_models import BinaryRoi

MAX_ORDER = 8
FEATURE_COUNT = 25

# 0! .. 8! 的精确整数表 (exact integer table of 0! .. 8!)
_FACTORIALS: Tuple[int, ...] = tuple(math.factorial(k) for k in range(MAX_ORDER + 1))


class ZernikeIndex(NamedTuple):
    """阶数 n 与重复度 m。(Order n and repetition m.)"""

    n: int
    m: int

    @property
    def column_name(self) -> str:
        return f"z{self.n}_{self.m}"


class DiskMapping(NamedTuple):
    """像素坐标到单位圆盘的映射。(Mapping from pixel coordinates onto the unit disk.)"""

    cx: float
    cy: float
    radius: float


class ZernikeFeatures(NamedTuple):
    """按规范顺序排列的 25 个矩幅值。(The 25 moment magnitudes in canonical order.)"""

    values: Tuple[float, ...]


def validate_index(n: int, m: int) -> ZernikeIndex:
    """
    校验 (n, m)：0 ≤ m ≤ n ≤ 8 且 n − m 为偶数。
    (Validates (n, m): 0 ≤ m ≤ n ≤ 8 and n − m even.)

    异常 (Raises):
        InvalidIndexError: 索引不合法。(The index is invalid.)
    """
    if n < 0 or m < 0:
        raise InvalidIndexError(f"n and m must be non-negative, got ({n}, {m})")
    if m > n:
        raise InvalidIndexError(f"m must not exceed n, got ({n}, {m})")
    if (n - m) % 2:
        raise InvalidIndexError(f"n - m must be even, got ({n}, {m})")
    if n > MAX_ORDER:
        raise InvalidIndexError(f"order above {MAX_ORDER} is not supported, got n={n}")
    return ZernikeIndex(n, m)


@lru_cache(maxsize=1)
def _canonical_indices() -> Tuple[ZernikeIndex, ...]:
    return tuple(
        ZernikeIndex(n, m)
        for n in range(MAX_ORDER + 1)
        for m in range(n % 2, n + 1, 2)
    )


def canonical_index_set() -> List[ZernikeIndex]:
    """
    按 (n 升序, m 升序) 返回 25 个规范索引。
    (Returns the 25 canonical indices in (n ascending, m ascending) order.)
    """
    return list(_canonical_indices())


def radial_polynomial(n: int, m: int, rho: float) -> float:
    """
    径向多项式 R_{n,m}(ρ) 的直接阶乘和。
    (Direct factorial-sum evaluation of the radial polynomial R_{n,m}(ρ).)

    R_{n,m}(ρ) = Σ_{s=0}^{(n−m)/2} (−1)^s (n−s)! / [s! ((n+m)/2 − s)! ((n−m)/2 − s)!] ρ^{n−2s}
    """
    validate_index(n, m)
    total = 0.0
    for s in range((n - m) // 2 + 1):
        coefficient = (-1) ** s * _FACTORIALS[n - s] // (
            _FACTORIALS[s]
            * _FACTORIALS[(n + m) // 2 - s]
            * _FACTORIALS[(n - m) // 2 - s]
        )
        total += coefficient * rho ** (n - 2 * s)
    return total


@lru_cache(maxsize=None)
def _radial_coefficients(n: int, m: int) -> np.ndarray:
    """
    R_{n,m} 的幂次系数 (按 ρ^0 .. ρ^n 升序)，缓存复用。
    (Power-basis coefficients of R_{n,m}, ρ^0 .. ρ^n ascending, cached.)
    """
    validate_index(n, m)
    coefficients = np.zeros(n + 1, dtype=np.float64)
    for s in range((n - m) // 2 + 1):
        coefficients[n - 2 * s] = (-1) ** s * _FACTORIALS[n - s] // (
            _FACTORIALS[s]
            * _FACTORIALS[(n + m) // 2 - s]
            * _FACTORIALS[(n - m) // 2 - s]
        )
    coefficients.setflags(write=False)
    return coefficients


def radial_polynomial_array(n: int, m: int, rho: np.ndarray) -> np.ndarray:
    """向量化的 R_{n,m}，使用缓存系数。(Vectorized R_{n,m} using cached coefficients.)"""
    return np.polynomial.polynomial.polyval(
        np.asarray(rho, dtype=np.float64), _radial_coefficients(n, m)
    )


def zernike_basis(idx: ZernikeIndex, rho: np.ndarray, theta: np.ndarray) -> np.ndarray:
    """基函数 V_{n,m}(ρ, θ) = R_{n,m}(ρ) e^{i m θ}。(Basis function V_{n,m}(ρ, θ).)"""
    return radial_polynomial_array(idx.n, idx.m, rho) * np.exp(1j * idx.m * theta)


def disk_mapping(roi: BinaryRoi) -> DiskMapping:
    """
    质心 = 前景像素中心的平均；半径 = 前景像素到质心的最大欧氏距离，下限为 1。
    (Centroid = mean of foreground pixel centers; radius = largest Euclidean
    distance from the centroid to a foreground pixel, clamped below at 1.)
    """
    ys, xs = np.nonzero(roi.bits)
    cx = float(xs.mean())
    cy = float(ys.mean())
    radius = float(np.sqrt(((xs - cx) ** 2 + (ys - cy) ** 2).max()))
    return DiskMapping(cx=cx, cy=cy, radius=max(radius, 1.0))


def _polar_coordinates(
    roi: BinaryRoi, mapping: DiskMapping
) -> Tuple[np.ndarray, np.ndarray]:
    ys, xs = np.nonzero(roi.bits)
    dx = xs - mapping.cx
    dy = ys - mapping.cy
    rho = np.sqrt(dx**2 + dy**2) / mapping.radius
    theta = np.arctan2(dy, dx)
    inside = rho <= 1.0
    return rho[inside], theta[inside]


def _moment_from_polar(
    rho: np.ndarray, theta: np.ndarray, radius: float, idx: ZernikeIndex
) -> complex:
    radial = radial_polynomial_array(idx.n, idx.m, rho)
    total = np.sum(radial * np.exp(-1j * idx.m * theta))
    return complex((idx.n + 1) / math.pi * total / (radius * radius))


def zernike_moment(roi: BinaryRoi, mapping: DiskMapping, idx: ZernikeIndex) -> complex:
    """
    离散 Zernike 矩 A_{n,m} = ((n+1)/π) Σ R_{n,m}(ρ) e^{−imθ} ΔA，ΔA = 1/radius²；
    映射到单位圆外的像素被跳过。
    (Discrete Zernike moment with area element 1/radius²; pixels mapping outside
    the unit disk are skipped.)
    """
    idx = validate_index(idx.n, idx.m)
    rho, theta = _polar_coordinates(roi, mapping)
    return _moment_from_polar(rho, theta, mapping.radius, idx)


def zernike_feature_set(roi: BinaryRoi) -> ZernikeFeatures:
    """
    ROI 的 25 个 Zernike 矩幅值，按规范索引顺序。
    (The 25 Zernike moment magnitudes of a ROI, in canonical index order.)
    """
    mapping = disk_mapping(roi)
    rho, theta = _polar_coordinates(roi, mapping)
    values = tuple(
        abs(_moment_from_polar(rho, theta, mapping.radius, idx))
        for idx in _canonical_indices()
    )
    return ZernikeFeatures(values=values)


__all__ = [
    "MAX_ORDER",
    "FEATURE_COUNT",
    "ZernikeIndex",
    "DiskMapping",
    "ZernikeFeatures",
    "validate_index",
    "canonical_index_set",
    "radial_polynomial",
    "radial_polynomial_array",
    "zernike_basis",
    "disk_mapping",
    "zernike_moment",
    "zernike_feature_set",
]
