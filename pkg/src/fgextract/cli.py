"""Command-line front end: extraction, runtime benchmarking, and fit metrics.

Exit codes: 0 success, 1 usage error, 2 I/O error, 3 data/format error.
"""

from __future__ import annotations

import argparse
import csv
import re
import statistics
import sys
import time
from dataclasses import dataclass
from pathlib import Path

import numpy as np

from .canny import CannyParams
from .fitmetrics import PairedSeries, fit_stats
from .raster import (
    ColorImage,
    ImageFormatError,
    ImageIOError,
    load_image,
    save_image,
    save_image_rgba,
)
from .spanfill import extract_pipeline
from .synth import ellipse_scene

EXIT_OK = 0
EXIT_USAGE = 1
EXIT_IO = 2
EXIT_DATA = 3

BENCH_CSV_HEADER = "name,height,width,pixels,elapsed_s,reps"

# Benchmark sizes as (height, width), smallest to largest: 133,488 px up to
# 4,096,000 px.
TABLE_SIZES = (
    (324, 412), (376, 528), (438, 533), (600, 400),
    (422, 600), (424, 800), (600, 722), (800, 587),
    (1000, 768), (1050, 746), (1200, 797), (1221, 817),
    (1366, 768), (1546, 870), (1920, 1200), (2560, 1600),
)

_BACKGROUND_RGB = {
    "white": (255, 255, 255),
    "black": (0, 0, 0),
    "alpha": (255, 255, 255),  # RGB under a transparent alpha plane
}

_IMAGE_SUFFIXES = (".png", ".jpg", ".jpeg")


class UsageError(Exception):
    """Bad command line or unusable argument values."""


class DataError(Exception):
    """Input files parsed but carried malformed or inconsistent data."""


@dataclass(frozen=True)
class BenchRecord:
    """One timed image: wall-clock seconds over the extraction pipeline only
    (file and codec I/O excluded), median of ``reps`` runs."""

    name: str
    height: int
    width: int
    pixels: int
    elapsed_s: float
    reps: int

    def __post_init__(self) -> None:
        if self.pixels != self.height * self.width:
            raise ValueError("pixel count must equal height * width")
        if not self.elapsed_s > 0.0:
            raise ValueError("elapsed time must be positive")
        if self.reps < 1:
            raise ValueError("repetitions must be >= 1")


def _binary_image(bits: np.ndarray) -> ColorImage:
    gray = (np.asarray(bits, dtype=np.uint8) * np.uint8(255))
    return ColorImage(np.repeat(gray[:, :, None], 3, axis=2))


def cmd_extract(
    input_path: str,
    output_path: str,
    params: CannyParams | None = None,
    background: str = "white",
    dump_edges: str | None = None,
    dump_mask: str | None = None,
) -> int:
    """Extract the foreground of one image; prints pipeline seconds."""
    if background not in _BACKGROUND_RGB:
        raise UsageError(f"unknown background {background!r}, pick white, black, or alpha")
    img = load_image(input_path)

    start = time.perf_counter()
    extracted, mask, edges = extract_pipeline(img, params, _BACKGROUND_RGB[background])
    elapsed = time.perf_counter() - start

    if background == "alpha":
        save_image_rgba(extracted, mask.bits * np.uint8(255), output_path)
    else:
        save_image(extracted, output_path)
    if dump_edges is not None:
        save_image(_binary_image(edges.bits), dump_edges)
    if dump_mask is not None:
        save_image(_binary_image(mask.bits), dump_mask)
    print(f"elapsed_s={elapsed:.6f}")
    return EXIT_OK


def _time_pipeline(img: ColorImage, reps: int) -> float:
    extract_pipeline(img)  # warm-up run, discarded
    times = []
    for _ in range(reps):
        start = time.perf_counter()
        extract_pipeline(img)
        times.append(time.perf_counter() - start)
    return statistics.median(times)


def loglog_slope(records: list[BenchRecord]) -> float:
    """Least-squares slope of log(elapsed) vs log(pixels)."""
    px = np.log([r.pixels for r in records])
    el = np.log([r.elapsed_s for r in records])
    return float(np.polyfit(px, el, 1)[0])


def run_bench(
    sizes: list[tuple[int, int]] | None = None,
    directory: str | None = None,
    reps: int = 5,
    seed: int = 7,
) -> list[BenchRecord]:
    """Time the pipeline over synthetic scenes (or a directory of images)."""
    if reps < 1:
        raise UsageError("--reps must be >= 1")
    scenes: list[tuple[str, ColorImage]] = []
    if directory is not None:
        paths = sorted(
            p for p in Path(directory).iterdir() if p.suffix.lower() in _IMAGE_SUFFIXES
        )
        if not paths:
            raise UsageError(f"no PNG/JPEG images found in {directory}")
        scenes = [(p.stem, load_image(p)) for p in paths]
    else:
        for h, w in sizes if sizes is not None else TABLE_SIZES:
            scenes.append((f"ellipse_{w}x{h}", ellipse_scene(h, w, seed=seed)))

    records = []
    for name, img in scenes:
        elapsed = _time_pipeline(img, reps)
        rec = BenchRecord(name, img.height, img.width, img.height * img.width, elapsed, reps)
        records.append(rec)
        print(f"{rec.name}: {rec.pixels} px, {rec.elapsed_s:.4f} s")
    return records


def write_bench_csv(records: list[BenchRecord], csv_path: str) -> None:
    with open(csv_path, "w", newline="", encoding="utf-8") as f:
        writer = csv.writer(f)
        writer.writerow(BENCH_CSV_HEADER.split(","))
        for r in records:
            writer.writerow([r.name, r.height, r.width, r.pixels, f"{r.elapsed_s:.9f}", r.reps])


def cmd_bench(
    sizes: list[tuple[int, int]] | None,
    directory: str | None,
    reps: int,
    csv_path: str,
) -> int:
    """Benchmark the pipeline and report the runtime-vs-pixels scaling."""
    records = run_bench(sizes, directory, reps)
    write_bench_csv(records, csv_path)
    if len({r.pixels for r in records}) >= 2:
        print(f"loglog_slope={loglog_slope(records):.4f}")
    return EXIT_OK


def _read_series_csv(path: str) -> np.ndarray:
    """One-column CSV of reals with a mandatory header row."""
    with open(path, newline="", encoding="utf-8") as f:
        rows = list(csv.reader(f))
    if not rows:
        raise UsageError(f"{path}: empty file, need a header row and at least one value")
    header, data = rows[0], rows[1:]
    if len(header) != 1:
        raise DataError(f"{path}: expected a single column, header has {len(header)} cells")
    if not data:
        raise UsageError(f"{path}: no data rows (need at least one value)")
    values = []
    for lineno, row in enumerate(data, start=2):
        if len(row) != 1:
            raise DataError(f"{path}: line {lineno}: expected one cell, got {len(row)}")
        try:
            values.append(float(row[0]))
        except ValueError:
            raise DataError(f"{path}: line {lineno}: non-numeric value {row[0]!r}") from None
    return np.asarray(values)


def cmd_metrics(
    observed_csv: str,
    predicted_csv: str,
    weights_csv: str | None = None,
    residuals_out: str | None = None,
) -> int:
    """Print SSE/SSR/SST/R-square for paired CSV series."""
    observed = _read_series_csv(observed_csv)
    predicted = _read_series_csv(predicted_csv)
    weights = _read_series_csv(weights_csv) if weights_csv is not None else None
    if observed.size != predicted.size:
        raise DataError(
            f"series lengths differ: {observed_csv} has {observed.size}, "
            f"{predicted_csv} has {predicted.size}"
        )
    if weights is not None and weights.size != observed.size:
        raise DataError(
            f"series lengths differ: {weights_csv} has {weights.size}, expected {observed.size}"
        )
    stats = fit_stats(PairedSeries(observed, predicted, weights))
    print(f"SSE={stats.sse:.12g}")
    print(f"SSR={stats.ssr:.12g}")
    print(f"SST={stats.sst:.12g}")
    print(f"R2={stats.r_square:.12g}")
    if residuals_out is not None:
        with open(residuals_out, "w", newline="", encoding="utf-8") as f:
            writer = csv.writer(f)
            writer.writerow(["residual"])
            for v in stats.residuals:
                writer.writerow([f"{v:.12g}"])
    return EXIT_OK


def _parse_sizes(text: str) -> list[tuple[int, int]]:
    sizes = []
    for part in text.split(","):
        m = re.fullmatch(r"(\d+)x(\d+)", part.strip())
        if m is None:
            raise UsageError(f"bad size {part.strip()!r}, expected WxH like 412x324")
        w, h = int(m.group(1)), int(m.group(2))
        if w < 1 or h < 1:
            raise UsageError(f"size {part.strip()!r} must be at least 1x1")
        sizes.append((h, w))
    return sizes


class _Parser(argparse.ArgumentParser):
    def error(self, message):  # route argparse failures to exit code 1
        raise UsageError(message)


def _build_parser() -> _Parser:
    parser = _Parser(prog="fgextract", description="Foreground object extraction toolkit")
    sub = parser.add_subparsers(dest="command", required=True)

    p_ext = sub.add_parser("extract", help="extract the foreground of one image")
    p_ext.add_argument("input", help="input PNG or JPEG")
    p_ext.add_argument("-o", "--output", required=True, help="output PNG path")
    p_ext.add_argument("--low", type=float, default=0.04, help="low threshold fraction")
    p_ext.add_argument("--high", type=float, default=0.10, help="high threshold fraction")
    p_ext.add_argument("--sigma", type=float, default=1.5, help="Gaussian sigma in pixels")
    p_ext.add_argument("--background", choices=("white", "black", "alpha"), default="white")
    p_ext.add_argument("--dump-edges", metavar="PATH", help="write the edge map as a PNG")
    p_ext.add_argument("--dump-mask", metavar="PATH", help="write the fill mask as a PNG")

    p_bench = sub.add_parser("bench", help="time the pipeline across image sizes")
    group = p_bench.add_mutually_exclusive_group()
    group.add_argument("--sizes", help="comma-separated WxH list (default: built-in sweep)")
    group.add_argument("--dir", help="benchmark the images in this directory instead")
    p_bench.add_argument("--reps", type=int, default=5, help="timed repetitions per image")
    p_bench.add_argument("--csv", required=True, help="output CSV path")

    p_met = sub.add_parser("metrics", help="goodness-of-fit stats over CSV series")
    p_met.add_argument("--observed", required=True, help="observed-values CSV")
    p_met.add_argument("--predicted", required=True, help="predicted-values CSV")
    p_met.add_argument("--weights", help="optional weights CSV")
    p_met.add_argument("--residuals-out", metavar="PATH", help="write residuals CSV here")
    return parser


def main(argv: list[str] | None = None) -> int:
    parser = _build_parser()
    try:
        args = parser.parse_args(argv)
        if args.command == "extract":
            try:
                params = CannyParams(args.low, args.high, args.sigma)
            except ValueError as exc:
                raise UsageError(str(exc)) from exc
            return cmd_extract(
                args.input, args.output, params, args.background,
                args.dump_edges, args.dump_mask,
            )
        if args.command == "bench":
            sizes = _parse_sizes(args.sizes) if args.sizes is not None else None
            return cmd_bench(sizes, args.dir, args.reps, args.csv)
        return cmd_metrics(args.observed, args.predicted, args.weights, args.residuals_out)
    except UsageError as exc:
        print(f"usage error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except (ImageIOError, OSError) as exc:
        print(f"io error: {exc}", file=sys.stderr)
        return EXIT_IO
    except (ImageFormatError, DataError, ValueError) as exc:
        print(f"data error: {exc}", file=sys.stderr)
        return EXIT_DATA


if __name__ == "__main__":
    sys.exit(main())
