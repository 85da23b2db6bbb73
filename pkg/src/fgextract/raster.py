"""Image containers, grayscale conversion, and PNG/JPEG file I/O.

All containers are thin frozen wrappers around numpy arrays.  The wrapped
array is copied and marked read-only on construction, so instances are
immutable and safe to share across threads.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np
from PIL import Image, UnidentifiedImageError


class ImageIOError(Exception):
    """File could not be read or written (missing path, permissions, ...)."""


class ImageFormatError(Exception):
    """File exists but is not decodable PNG or JPEG data."""


_SUPPORTED_FORMATS = ("PNG", "JPEG")

# ITU-R BT.601 luma weights (the classic rgb2gray convention); they sum to 1,
# so a constant (v, v, v) pixel maps back to v.
_LUMA_R, _LUMA_G, _LUMA_B = 0.299, 0.587, 0.114


@dataclass(frozen=True, eq=False)
class ColorImage:
    """8-bit RGB raster; ``pixels`` has shape (height, width, 3)."""

    pixels: np.ndarray

    def __post_init__(self) -> None:
        px = np.asarray(self.pixels)
        if px.ndim != 3 or px.shape[2] != 3:
            raise ValueError(f"expected an (H, W, 3) pixel array, got shape {px.shape}")
        if px.shape[0] < 1 or px.shape[1] < 1:
            raise ValueError("image must be at least 1x1")
        if px.dtype != np.uint8:
            if px.dtype.kind not in "iu":
                raise ValueError(f"RGB channels must be integers, got dtype {px.dtype}")
            if px.min() < 0 or px.max() > 255:
                raise ValueError("RGB channel values must lie in [0, 255]")
        px = px.astype(np.uint8, copy=True)
        px.setflags(write=False)
        object.__setattr__(self, "pixels", px)

    @property
    def height(self) -> int:
        return self.pixels.shape[0]

    @property
    def width(self) -> int:
        return self.pixels.shape[1]


@dataclass(frozen=True, eq=False)
class GrayImage:
    """Grayscale raster with intensities stored as floats in [0, 1].

    Threshold parameters downstream are fractions, so the working scale is
    [0, 1]; an integer [0, 255] view is available through :meth:`to_u8`.
    """

    pixels: np.ndarray

    def __post_init__(self) -> None:
        px = np.asarray(self.pixels, dtype=np.float64)
        if px.ndim != 2:
            raise ValueError(f"expected an (H, W) intensity array, got shape {px.shape}")
        if px.shape[0] < 1 or px.shape[1] < 1:
            raise ValueError("image must be at least 1x1")
        if px.min() < 0.0 or px.max() > 1.0:
            raise ValueError("intensities must lie in [0, 1]")
        px = px.copy()
        px.setflags(write=False)
        object.__setattr__(self, "pixels", px)

    @property
    def height(self) -> int:
        return self.pixels.shape[0]

    @property
    def width(self) -> int:
        return self.pixels.shape[1]

    def to_u8(self) -> np.ndarray:
        """Quantize to the integer [0, 255] scale (fresh array)."""
        return np.rint(self.pixels * 255.0).astype(np.uint8)


@dataclass(frozen=True, eq=False)
class EdgeMap:
    """Binary raster: 1 on boundary pixels, 0 everywhere else."""

    bits: np.ndarray

    def __post_init__(self) -> None:
        b = np.asarray(self.bits)
        if b.ndim != 2:
            raise ValueError(f"expected an (H, W) bit array, got shape {b.shape}")
        if b.shape[0] < 1 or b.shape[1] < 1:
            raise ValueError("edge map must be at least 1x1")
        if b.dtype == bool:
            b = b.astype(np.uint8)
        elif b.dtype.kind in "iu":
            if b.min() < 0 or b.max() > 1:
                raise ValueError("edge map values must be exactly 0 or 1")
            b = b.astype(np.uint8, copy=True)
        else:
            raise ValueError(f"edge map must be binary integers, got dtype {b.dtype}")
        b.setflags(write=False)
        object.__setattr__(self, "bits", b)

    @property
    def height(self) -> int:
        return self.bits.shape[0]

    @property
    def width(self) -> int:
        return self.bits.shape[1]


def to_grayscale(img: ColorImage) -> GrayImage:
    """BT.601 weighted luma, rounded on the 0-255 scale, then scaled to [0, 1]."""
    px = img.pixels.astype(np.float64)
    luma = np.rint(_LUMA_R * px[..., 0] + _LUMA_G * px[..., 1] + _LUMA_B * px[..., 2])
    return GrayImage(luma / 255.0)


def load_image(path) -> ColorImage:
    """Decode a PNG or JPEG file into a :class:`ColorImage`.

    Grayscale files expand to R=G=B; any alpha channel is composited over
    white.  Raises :class:`ImageIOError` when the file cannot be read at all,
    and :class:`ImageFormatError` when it is not valid PNG/JPEG data
    (unsupported format, truncated, or otherwise corrupt).
    """
    try:
        src = Image.open(path)
    except UnidentifiedImageError as exc:
        raise ImageFormatError(f"{path}: not a recognizable image ({exc})") from exc
    except OSError as exc:
        raise ImageIOError(f"{path}: {exc}") from exc

    with src:
        if src.format not in _SUPPORTED_FORMATS:
            raise ImageFormatError(
                f"{path}: unsupported format {src.format!r}, expected PNG or JPEG"
            )
        try:
            if src.mode in ("RGBA", "LA", "PA") or (
                src.mode == "P" and "transparency" in src.info
            ):
                rgba = src.convert("RGBA")
                flat = Image.new("RGB", rgba.size, (255, 255, 255))
                flat.paste(rgba, mask=rgba.getchannel("A"))
            else:
                flat = src.convert("RGB")
            pixels = np.asarray(flat)
        except OSError as exc:
            raise ImageFormatError(f"{path}: corrupt or truncated image ({exc})") from exc
    return ColorImage(pixels)


def save_image(img: ColorImage, path) -> None:
    """Write ``img`` as an 8-bit RGB PNG (lossless round-trip with load_image)."""
    out = Image.fromarray(np.asarray(img.pixels), mode="RGB")
    try:
        out.save(path, format="PNG")
    except OSError as exc:
        raise ImageIOError(f"{path}: {exc}") from exc


def save_image_rgba(img: ColorImage, alpha: np.ndarray, path) -> None:
    """Write an RGBA PNG; ``alpha`` is an (H, W) uint8 opacity plane."""
    a = np.asarray(alpha, dtype=np.uint8)
    if a.shape != (img.height, img.width):
        raise ValueError(
            f"alpha plane shape {a.shape} does not match image {(img.height, img.width)}"
        )
    rgba = np.dstack([img.pixels, a])
    out = Image.fromarray(rgba, mode="RGBA")
    try:
        out.save(path, format="PNG")
    except OSError as exc:
        raise ImageIOError(f"{path}: {exc}") from exc
