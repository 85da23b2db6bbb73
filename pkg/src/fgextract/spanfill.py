"""Region reconstruction from a binary edge map via orthogonal span fills.

Each scan line is filled from its first boundary pixel to its last one: once
per column (vertical spans) and once per row (horizontal spans).  The
intersection of the two fills is the extracted foreground region.  Spans
deliberately bridge gaps between the first and last boundary pixel, which is
what makes the method tolerant of small breaks in the detected contour.
"""

from __future__ import annotations

from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from typing import Literal

import numpy as np

from .canny import CannyParams, canny
from .raster import ColorImage, EdgeMap, to_grayscale

Axis = Literal["row", "column"]

_PARALLEL_WORKERS = 4


@dataclass(frozen=True, eq=False)
class IndexMap:
    """Edge map with each 1 replaced by its 1-based row (or column) index.

    1-based indices keep "value > 0" a sound boundary test even for edges in
    the first row or column.
    """

    values: np.ndarray

    def __post_init__(self) -> None:
        v = np.asarray(self.values)
        if v.ndim != 2:
            raise ValueError(f"expected an (H, W) index array, got shape {v.shape}")
        if v.dtype.kind not in "iu":
            raise ValueError(f"index map must hold integers, got dtype {v.dtype}")
        if v.min() < 0:
            raise ValueError("index map values must be non-negative")
        v = v.astype(np.int32, copy=True)
        v.setflags(write=False)
        object.__setattr__(self, "values", v)

    @property
    def height(self) -> int:
        return self.values.shape[0]

    @property
    def width(self) -> int:
        return self.values.shape[1]


@dataclass(frozen=True, eq=False)
class FillMask:
    """Binary mask of the region bounded by edge pixels."""

    bits: np.ndarray

    def __post_init__(self) -> None:
        b = np.asarray(self.bits)
        if b.ndim != 2:
            raise ValueError(f"expected an (H, W) bit array, got shape {b.shape}")
        if b.dtype == bool:
            b = b.astype(np.uint8)
        elif b.dtype.kind in "iu":
            if b.min() < 0 or b.max() > 1:
                raise ValueError("mask values must be exactly 0 or 1")
            b = b.astype(np.uint8, copy=True)
        else:
            raise ValueError(f"mask must be binary integers, got dtype {b.dtype}")
        b.setflags(write=False)
        object.__setattr__(self, "bits", b)

    @property
    def height(self) -> int:
        return self.bits.shape[0]

    @property
    def width(self) -> int:
        return self.bits.shape[1]


def _check_axis(axis: str) -> None:
    if axis not in ("row", "column"):
        raise ValueError(f"axis must be 'row' or 'column', got {axis!r}")


def index_map(edges: EdgeMap, axis: Axis) -> IndexMap:
    """Replace each edge 1 with its 1-based row index (axis='row') or
    1-based column index (axis='column'); zeros stay zero."""
    _check_axis(axis)
    bits = edges.bits
    h, w = bits.shape
    if axis == "row":
        idx = np.arange(1, h + 1, dtype=np.int32)[:, None]
    else:
        idx = np.arange(1, w + 1, dtype=np.int32)[None, :]
    return IndexMap(np.where(bits != 0, idx, np.int32(0)))


def column_max(index: IndexMap) -> np.ndarray:
    """Per-column maximum of a row-index map: the last boundary row of each
    column (1-based), or 0 for columns without boundary pixels."""
    return index.values.max(axis=0)


def _fill_spans(bits: np.ndarray) -> np.ndarray:
    # Per column: set rows k3..k2 where k3/k2 are the first/last boundary
    # rows (1-based); columns without boundary pixels stay empty.
    h = bits.shape[0]
    present = bits != 0
    row_index = np.where(present, np.arange(1, h + 1, dtype=np.int32)[:, None], np.int32(0))
    k2 = row_index.max(axis=0)
    k3 = np.argmax(present, axis=0).astype(np.int32) + 1
    rows = np.arange(1, h + 1, dtype=np.int32)[:, None]
    return ((rows >= k3[None, :]) & (rows <= k2[None, :])).astype(np.uint8)


def _fill_spans_parallel(bits: np.ndarray) -> np.ndarray:
    bounds = np.linspace(0, bits.shape[1], min(_PARALLEL_WORKERS, bits.shape[1]) + 1, dtype=int)
    chunks = [bits[:, bounds[i]:bounds[i + 1]] for i in range(len(bounds) - 1) if bounds[i] < bounds[i + 1]]
    with ThreadPoolExecutor(max_workers=len(chunks)) as pool:
        parts = list(pool.map(_fill_spans, chunks))
    return np.hstack(parts)


def span_fill(edges: EdgeMap, axis: Axis, parallel: bool = False) -> FillMask:
    """Fill every scan line of ``axis`` from its first to its last edge pixel.

    axis='column' spans each column top-to-bottom (vertical fills);
    axis='row' spans each row left-to-right.  Columns are independent, so the
    parallel path (per-column-block) is bit-identical to the sequential one.
    """
    _check_axis(axis)
    fill = _fill_spans_parallel if parallel else _fill_spans
    if axis == "column":
        return FillMask(fill(edges.bits))
    return FillMask(fill(np.ascontiguousarray(edges.bits.T)).T)


def intersect(a: FillMask, b: FillMask) -> FillMask:
    """Pointwise logical AND of two equal-sized masks."""
    if a.bits.shape != b.bits.shape:
        raise ValueError(f"mask dimensions differ: {a.bits.shape} vs {b.bits.shape}")
    return FillMask(a.bits & b.bits)


def extract_foreground(
    img: ColorImage,
    mask: FillMask,
    background: tuple[int, int, int] = (255, 255, 255),
) -> ColorImage:
    """Keep image pixels where the mask is 1; paint ``background`` elsewhere."""
    if mask.bits.shape != (img.height, img.width):
        raise ValueError(
            f"mask shape {mask.bits.shape} does not match image {(img.height, img.width)}"
        )
    bg = tuple(int(v) for v in background)
    if len(bg) != 3 or any(v < 0 or v > 255 for v in bg):
        raise ValueError(f"background must be an RGB triple in [0, 255], got {background!r}")
    out = np.where(mask.bits[:, :, None] != 0, img.pixels, np.asarray(bg, dtype=np.uint8))
    return ColorImage(out)


def extract_pipeline(
    img: ColorImage,
    params: CannyParams | None = None,
    background: tuple[int, int, int] = (255, 255, 255),
    parallel: bool = False,
) -> tuple[ColorImage, FillMask, EdgeMap]:
    """Full extraction: grayscale -> canny -> both span fills -> intersection
    -> recolored foreground.  Returns (extracted image, mask, edge map) so the
    intermediates can be inspected or dumped."""
    gray = to_grayscale(img)
    edges = canny(gray, params, parallel=parallel)
    vertical = span_fill(edges, "column", parallel=parallel)
    horizontal = span_fill(edges, "row", parallel=parallel)
    mask = intersect(vertical, horizontal)
    extracted = extract_foreground(img, mask, background)
    return extracted, mask, edges
