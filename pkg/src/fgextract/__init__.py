"""Foreground object extraction from color images.

Pipeline: grayscale conversion, a from-scratch Canny edge detector, two
orthogonal span fills over the edge map, their intersection, and recoloring
of the extracted region.  Ships with goodness-of-fit metrics and a
benchmarking CLI.
"""

from .canny import (
    CannyParams,
    GradientField,
    canny,
    gaussian_blur,
    gaussian_kernel,
    gradient,
    hysteresis,
    non_max_suppression,
    normalize_magnitudes,
)
from .fitmetrics import (
    DegenerateVarianceError,
    FitStats,
    PairedSeries,
    fit_stats,
    r_square,
    residuals,
    sse,
    ssr,
    sst,
)
from .raster import (
    ColorImage,
    EdgeMap,
    GrayImage,
    ImageFormatError,
    ImageIOError,
    load_image,
    save_image,
    save_image_rgba,
    to_grayscale,
)
from .spanfill import (
    FillMask,
    IndexMap,
    column_max,
    extract_foreground,
    extract_pipeline,
    index_map,
    intersect,
    span_fill,
)

__version__ = "0.1.0"

__all__ = [
    "CannyParams",
    "ColorImage",
    "DegenerateVarianceError",
    "EdgeMap",
    "FillMask",
    "FitStats",
    "GradientField",
    "GrayImage",
    "ImageFormatError",
    "ImageIOError",
    "IndexMap",
    "PairedSeries",
    "canny",
    "column_max",
    "extract_foreground",
    "extract_pipeline",
    "fit_stats",
    "gaussian_blur",
    "gaussian_kernel",
    "gradient",
    "hysteresis",
    "index_map",
    "intersect",
    "load_image",
    "non_max_suppression",
    "normalize_magnitudes",
    "r_square",
    "residuals",
    "save_image",
    "save_image_rgba",
    "span_fill",
    "sse",
    "ssr",
    "sst",
    "to_grayscale",
]
