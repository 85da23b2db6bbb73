"""Deterministic synthetic scenes and their analytic ground-truth masks.

Used by the bench command (seeded ellipse scenes at arbitrary sizes) and by
tests that need exact region membership to score extraction quality against.
"""

from __future__ import annotations

import numpy as np

from .raster import ColorImage


def disk_mask(height: int, width: int, center: tuple[float, float], radius: float) -> np.ndarray:
    """Binary (H, W) mask of pixels whose centers satisfy the disk equation."""
    cr, cc = center
    rows = np.arange(height, dtype=np.float64)[:, None]
    cols = np.arange(width, dtype=np.float64)[None, :]
    return (((rows - cr) ** 2 + (cols - cc) ** 2) <= radius * radius).astype(np.uint8)


def ellipse_mask(
    height: int,
    width: int,
    center: tuple[float, float],
    semi_axes: tuple[float, float],
) -> np.ndarray:
    """Binary (H, W) mask of an axis-aligned filled ellipse."""
    cr, cc = center
    ar, ac = semi_axes
    rows = np.arange(height, dtype=np.float64)[:, None]
    cols = np.arange(width, dtype=np.float64)[None, :]
    return ((((rows - cr) / ar) ** 2 + (((cols - cc) / ac) ** 2)) <= 1.0).astype(np.uint8)


def rect_mask(height: int, width: int, top: int, left: int, box_h: int, box_w: int) -> np.ndarray:
    """Binary (H, W) mask of a filled axis-aligned rectangle."""
    m = np.zeros((height, width), dtype=np.uint8)
    m[top:top + box_h, left:left + box_w] = 1
    return m


def scene_from_mask(
    mask: np.ndarray,
    foreground: tuple[int, int, int] = (60, 60, 60),
    background: tuple[int, int, int] = (235, 235, 235),
) -> ColorImage:
    """Paint a flat two-color image from a binary region mask."""
    fg = np.asarray(foreground, dtype=np.uint8)
    bg = np.asarray(background, dtype=np.uint8)
    return ColorImage(np.where(np.asarray(mask)[:, :, None] != 0, fg, bg))


def ellipse_scene(height: int, width: int, seed: int = 7) -> ColorImage:
    """Seeded benchmark scene: one dark filled ellipse on a plain light field.

    Deterministic for a given (height, width, seed); the ellipse scales with
    the frame so runtime tracks the pixel count.
    """
    rng = np.random.RandomState(seed)
    center = (
        height * (0.5 + rng.uniform(-0.04, 0.04)),
        width * (0.5 + rng.uniform(-0.04, 0.04)),
    )
    semi_axes = (
        height * rng.uniform(0.26, 0.33),
        width * rng.uniform(0.26, 0.33),
    )
    foreground = tuple(int(v) for v in rng.randint(20, 90, size=3))
    background = tuple(int(v) for v in rng.randint(200, 245, size=3))
    mask = ellipse_mask(height, width, center, semi_axes)
    return scene_from_mask(mask, foreground, background)
