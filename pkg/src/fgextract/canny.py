"""Canny edge detector built from scratch on numpy primitives.

Stages: separable Gaussian smoothing, 3x3 Sobel gradients, non-maximum
suppression with 4-sector direction quantization, and double-threshold
hysteresis with 8-connected edge linking.  Thresholds are fractions of the
maximum post-suppression magnitude, so the defaults (0.04, 0.10) behave like
the usual MATLAB-style relative thresholds.
"""

from __future__ import annotations

import math
from collections import deque
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass

import numpy as np

from .raster import EdgeMap, GrayImage

DEFAULT_LOW = 0.04
DEFAULT_HIGH = 0.10
DEFAULT_SIGMA = 1.5

_PARALLEL_WORKERS = 4

_SOBEL_SMOOTH = np.array([1.0, 2.0, 1.0])

_NEIGHBORS8 = ((-1, -1), (-1, 0), (-1, 1), (0, -1), (0, 1), (1, -1), (1, 0), (1, 1))


@dataclass(frozen=True)
class CannyParams:
    """Detector parameters: relative thresholds plus smoothing sigma."""

    low_threshold: float = DEFAULT_LOW
    high_threshold: float = DEFAULT_HIGH
    sigma: float = DEFAULT_SIGMA

    def __post_init__(self) -> None:
        if not 0.0 < self.low_threshold < self.high_threshold < 1.0:
            raise ValueError(
                "thresholds must satisfy 0 < low < high < 1, got "
                f"low={self.low_threshold} high={self.high_threshold}"
            )
        if not self.sigma > 0.0:
            raise ValueError(f"sigma must be positive, got {self.sigma}")


@dataclass(frozen=True, eq=False)
class GradientField:
    """Per-pixel gradient magnitude (non-negative) and direction in radians."""

    magnitude: np.ndarray
    direction: np.ndarray

    def __post_init__(self) -> None:
        mag = np.asarray(self.magnitude, dtype=np.float64)
        ang = np.asarray(self.direction, dtype=np.float64)
        if mag.ndim != 2 or mag.shape != ang.shape:
            raise ValueError(
                f"magnitude {mag.shape} and direction {ang.shape} must be equal 2-D shapes"
            )
        if mag.min() < 0.0:
            raise ValueError("gradient magnitudes must be non-negative")
        mag = mag.copy()
        ang = ang.copy()
        mag.setflags(write=False)
        ang.setflags(write=False)
        object.__setattr__(self, "magnitude", mag)
        object.__setattr__(self, "direction", ang)

    @property
    def shape(self) -> tuple[int, int]:
        return self.magnitude.shape


def gaussian_kernel(sigma: float) -> np.ndarray:
    """Symmetric 1-D Gaussian of radius ceil(3*sigma), normalized to unit sum."""
    if not sigma > 0.0:
        raise ValueError(f"sigma must be positive, got {sigma}")
    radius = math.ceil(3.0 * float(sigma))
    x = np.arange(-radius, radius + 1, dtype=np.float64)
    k = np.exp(-(x * x) / (2.0 * float(sigma) ** 2))
    return k / k.sum()


def _conv_axis1(a: np.ndarray, kernel: np.ndarray) -> np.ndarray:
    # Symmetric kernel along rows, clamp-to-edge borders.  Mirror taps are
    # added pairwise so a left/right flip of the axis is bit-exact.
    r = kernel.size // 2
    w = a.shape[1]
    p = np.pad(a, ((0, 0), (r, r)), mode="edge")
    out = kernel[r] * a
    for t in range(1, r + 1):
        out += kernel[r + t] * (p[:, r - t:r - t + w] + p[:, r + t:r + t + w])
    return out


def _conv_axis0(a: np.ndarray, kernel: np.ndarray) -> np.ndarray:
    r = kernel.size // 2
    h = a.shape[0]
    p = np.pad(a, ((r, r), (0, 0)), mode="edge")
    out = kernel[r] * a
    for t in range(1, r + 1):
        out += kernel[r + t] * (p[r - t:r - t + h, :] + p[r + t:r + t + h, :])
    return out


def _split_rows(a: np.ndarray, fn, workers: int) -> np.ndarray:
    bounds = np.linspace(0, a.shape[0], min(workers, a.shape[0]) + 1, dtype=int)
    chunks = [a[bounds[i]:bounds[i + 1]] for i in range(len(bounds) - 1) if bounds[i] < bounds[i + 1]]
    with ThreadPoolExecutor(max_workers=len(chunks)) as pool:
        parts = list(pool.map(fn, chunks))
    return np.vstack(parts)


def _split_cols(a: np.ndarray, fn, workers: int) -> np.ndarray:
    bounds = np.linspace(0, a.shape[1], min(workers, a.shape[1]) + 1, dtype=int)
    chunks = [a[:, bounds[i]:bounds[i + 1]] for i in range(len(bounds) - 1) if bounds[i] < bounds[i + 1]]
    with ThreadPoolExecutor(max_workers=len(chunks)) as pool:
        parts = list(pool.map(fn, chunks))
    return np.hstack(parts)


def gaussian_blur(img: GrayImage, sigma: float, parallel: bool = False) -> GrayImage:
    """Separable Gaussian smoothing (horizontal pass, then vertical).

    Borders are clamp-to-edge.  The parallel path splits the horizontal pass
    by row blocks and the vertical pass by column blocks; per-pixel arithmetic
    is identical, so its output is bit-identical to the sequential one.
    """
    kernel = gaussian_kernel(sigma)
    a = img.pixels
    if parallel:
        tmp = _split_rows(a, lambda c: _conv_axis1(c, kernel), _PARALLEL_WORKERS)
        out = _split_cols(tmp, lambda c: _conv_axis0(c, kernel), _PARALLEL_WORKERS)
    else:
        tmp = _conv_axis1(a, kernel)
        out = _conv_axis0(tmp, kernel)
    # The kernel is a convex combination; clip only sheds float overshoot.
    return GrayImage(np.clip(out, 0.0, 1.0))


def _sobel_pair(a: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
    # 3x3 Sobel as smooth-then-difference; clamp-to-edge borders.
    h, w = a.shape
    sv = _conv_axis0(a, _SOBEL_SMOOTH)
    p = np.pad(sv, ((0, 0), (1, 1)), mode="edge")
    gx = p[:, 2:] - p[:, :w]
    sh = _conv_axis1(a, _SOBEL_SMOOTH)
    q = np.pad(sh, ((1, 1), (0, 0)), mode="edge")
    gy = q[2:, :] - q[:h, :]
    return gx, gy


def gradient(img: GrayImage) -> GradientField:
    """Sobel gradient field: magnitude sqrt(gx^2+gy^2), direction atan2(gy, gx)."""
    gx, gy = _sobel_pair(img.pixels)
    magnitude = np.sqrt(gx * gx + gy * gy)
    direction = np.arctan2(gy, gx)
    return GradientField(magnitude, direction)


def non_max_suppression(field: GradientField) -> np.ndarray:
    """Thin the magnitude image to local maxima along the gradient direction.

    The direction is quantized to 4 sectors with boundaries at odd multiples
    of 22.5 degrees; boundary ties resolve to the lower sector index.  A pixel
    keeps its magnitude iff it is >= both neighbors along its sector (ties
    keep, preserving plateau centers); neighbors beyond the border count as 0.
    Returns the thinned magnitudes as a plain float array.
    """
    mag = field.magnitude
    h, w = mag.shape
    theta = np.mod(field.direction, np.pi)
    b1, b3, b5, b7 = np.pi * 0.125, np.pi * 0.375, np.pi * 0.625, np.pi * 0.875

    sectors = (
        ((theta <= b1) | (theta >= b7), (0, 1)),   # ~horizontal gradient
        ((theta > b1) & (theta <= b3), (1, 1)),    # ~45 degrees
        ((theta > b3) & (theta <= b5), (1, 0)),    # ~vertical
        ((theta > b5) & (theta < b7), (1, -1)),    # ~135 degrees
    )

    p = np.pad(mag, 1)
    keep = np.zeros(mag.shape, dtype=bool)
    for in_sector, (dr, dc) in sectors:
        fwd = p[1 + dr:1 + dr + h, 1 + dc:1 + dc + w]
        bwd = p[1 - dr:1 - dr + h, 1 - dc:1 - dc + w]
        keep |= in_sector & (mag >= fwd) & (mag >= bwd)
    return np.where(keep, mag, 0.0)


def normalize_magnitudes(thinned: np.ndarray) -> GrayImage:
    """Scale magnitudes by the global maximum into [0, 1]; all-zero stays zero."""
    t = np.asarray(thinned, dtype=np.float64)
    peak = float(t.max())
    if peak == 0.0:
        return GrayImage(np.zeros_like(t))
    return GrayImage(t / peak)


def hysteresis(thinned: GrayImage, params: CannyParams) -> EdgeMap:
    """Double-threshold edge linking on normalized magnitudes.

    Pixels >= high seed the edge set; a pixel is an edge iff it is >= low and
    8-connected to a seed through pixels >= low.
    """
    norm = thinned.pixels
    h, w = norm.shape
    weak = norm >= params.low_threshold
    edges = norm >= params.high_threshold
    if not edges.any():
        return EdgeMap(np.zeros((h, w), dtype=np.uint8))

    queue = deque(zip(*np.nonzero(edges)))
    while queue:
        r, c = queue.popleft()
        for dr, dc in _NEIGHBORS8:
            rr, cc = r + dr, c + dc
            if 0 <= rr < h and 0 <= cc < w and weak[rr, cc] and not edges[rr, cc]:
                edges[rr, cc] = True
                queue.append((rr, cc))
    return EdgeMap(edges.astype(np.uint8))


def canny(img: GrayImage, params: CannyParams | None = None, parallel: bool = False) -> EdgeMap:
    """Full detector: blur -> gradient -> NMS -> normalize -> hysteresis.

    ``params`` defaults to CannyParams(0.04, 0.10, 1.5).
    """
    p = CannyParams() if params is None else params
    blurred = gaussian_blur(img, p.sigma, parallel=parallel)
    field = gradient(blurred)
    thinned = non_max_suppression(field)
    if float(thinned.max()) == 0.0:
        return EdgeMap(np.zeros(thinned.shape, dtype=np.uint8))
    return hysteresis(normalize_magnitudes(thinned), p)
