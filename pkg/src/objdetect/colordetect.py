"""Detection of regions of a selected color by HSV range thresholding."""

from __future__ import annotations

import json
import os
from dataclasses import dataclass, field

import numpy as np

from .errors import ParameterError, UnknownColorError
from .imgcore import (
    Contour,
    ImageKind,
    Overlay,
    RasterImage,
    annotate,
    dilate,
    erode,
    find_contours,
    gaussian_blur,
    rgb_to_hsv,
)
from .imgcore.draw import contour_stroke

HSV = tuple[int, int, int]
RGB = tuple[int, int, int]


@dataclass(frozen=True)
class ColorRange:
    """A named inclusive HSV box plus the RGB color used for highlighting."""

    name: str
    minimum: HSV
    maximum: HSV
    highlight: RGB

    def __post_init__(self):
        for lo, hi in zip(self.minimum, self.maximum):
            if not (0 <= lo <= hi <= 255):
                raise ParameterError(
                    f"color {self.name!r}: need 0 <= min <= max <= 255 per channel, "
                    f"got {self.minimum} / {self.maximum}"
                )

    @property
    def degenerate(self) -> bool:
        return self.minimum == self.maximum

    def contains(self, hsv: HSV) -> bool:
        return all(lo <= v <= hi for lo, v, hi in zip(self.minimum, hsv, self.maximum))

    @property
    def midpoint(self) -> HSV:
        return tuple((lo + hi) // 2 for lo, hi in zip(self.minimum, self.maximum))


# HSV ranges the application ships with, in menu order. The hue layout is
# unconventional but kept verbatim; pass a table override to change it.
_DEFAULT_TABLE_SPEC = [
    ("Black", (0, 0, 0), (0, 0, 0)),
    ("White", (0, 0, 236), (0, 0, 255)),
    ("Gray", (0, 0, 1), (255, 50, 235)),
    ("Blue", (0, 50, 0), (41, 255, 255)),
    ("Green", (42, 0, 0), (88, 255, 255)),
    ("Yellow", (89, 50, 0), (97, 255, 255)),
    ("Orange", (98, 50, 0), (119, 255, 210)),
    ("Beige", (99, 0, 0), (120, 11, 255)),
    ("Red", (120, 140, 0), (128, 255, 255)),
    ("Pink", (120, 0, 241), (149, 255, 255)),
    ("Violet", (150, 0, 0), (200, 255, 255)),
]


def _highlight_for(minimum: HSV, maximum: HSV) -> RGB:
    """Pick a highlight whose HSV sits inside the range (the stroke is drawn
    "with a color value from the range"). Degenerate ranges admit exactly
    one color."""
    from .imgcore.convert import hsv_to_rgb

    mid = tuple((lo + hi) // 2 for lo, hi in zip(minimum, maximum))
    one = RasterImage(ImageKind.HSV8, np.array([[mid]], dtype=np.uint8))
    rgb = hsv_to_rgb(one).pixels[0, 0]
    return int(rgb[0]), int(rgb[1]), int(rgb[2])


def default_color_table() -> list[ColorRange]:
    """The eleven shipped color ranges, in table order."""
    table = []
    for name, mn, mx in _DEFAULT_TABLE_SPEC:
        table.append(ColorRange(name, mn, mx, _highlight_for(mn, mx)))
    return table


def load_color_table(path: str | os.PathLike) -> list[ColorRange]:
    """Load a JSON override table: [{name, min, max, highlight}, ...]."""
    with open(path, encoding="utf-8") as fh:
        raw = json.load(fh)
    if not isinstance(raw, list) or not raw:
        raise ParameterError("color table must be a non-empty JSON array")
    table = []
    for i, entry in enumerate(raw):
        try:
            table.append(
                ColorRange(
                    str(entry["name"]),
                    tuple(int(v) for v in entry["min"]),
                    tuple(int(v) for v in entry["max"]),
                    tuple(int(v) for v in entry["highlight"]),
                )
            )
        except (KeyError, TypeError, ValueError) as exc:
            raise ParameterError(f"color table entry {i}: {exc}") from exc
    return table


def lookup_color(table: list[ColorRange], name: str) -> ColorRange:
    """Case-insensitive lookup by color name."""
    for entry in table:
        if entry.name.lower() == name.lower():
            return entry
    raise UnknownColorError(name, [entry.name for entry in table])


def threshold_color(image: RasterImage, color_range: ColorRange) -> RasterImage:
    """Per-pixel inclusive triple-interval test on an HSV image."""
    image.require_kind(ImageKind.HSV8)
    px = image.pixels
    lo = np.array(color_range.minimum, dtype=np.uint8)
    hi = np.array(color_range.maximum, dtype=np.uint8)
    inside = np.all((px >= lo) & (px <= hi), axis=2)
    return RasterImage(ImageKind.MASK1, inside.astype(np.uint8))


@dataclass(frozen=True)
class ColorParams:
    sigma: float = 1.5
    se_size: int = 3
    min_area: float = 100.0
    table: tuple[ColorRange, ...] | None = None


@dataclass(frozen=True)
class ColorDetectionResult:
    regions: dict[str, list[Contour]]
    pixel_counts: dict[str, int]
    annotated: RasterImage
    params: ColorParams = field(default_factory=ColorParams)


def detect_color_objects(
    image: RasterImage,
    colors: list[str],
    params: ColorParams | None = None,
) -> ColorDetectionResult:
    """Full color pipeline: HSV convert, blur, threshold, open, contour, draw.

    Each requested color is thresholded independently; a pixel may belong
    to several colors when their ranges overlap.
    """
    image.require_kind(ImageKind.RGB8)
    params = params or ColorParams()
    table = list(params.table) if params.table else default_color_table()
    ranges = [lookup_color(table, name) for name in colors]

    hsv = gaussian_blur(rgb_to_hsv(image), params.sigma)
    regions: dict[str, list[Contour]] = {}
    pixel_counts: dict[str, int] = {}
    strokes = []
    for color_range in ranges:
        mask = threshold_color(hsv, color_range)
        mask = dilate(erode(mask, params.se_size), params.se_size)
        contours = find_contours(mask, params.min_area)
        regions[color_range.name] = contours
        pixel_counts[color_range.name] = int(mask.pixels.sum())
        strokes.extend(contour_stroke(c, color_range.highlight, 1) for c in contours)
    annotated = annotate(image, Overlay(tuple(strokes)))
    return ColorDetectionResult(regions, pixel_counts, annotated, params)
