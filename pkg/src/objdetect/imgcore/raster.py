"""Core raster types: images, contours, drawing overlays."""

from __future__ import annotations

from dataclasses import dataclass, field
from enum import Enum

import numpy as np

from ..errors import ImageKindError


class ImageKind(Enum):
    RGB8 = "rgb8"
    GRAY8 = "gray8"
    HSV8 = "hsv8"
    MASK1 = "mask1"

    @property
    def channels(self) -> int:
        return 3 if self in (ImageKind.RGB8, ImageKind.HSV8) else 1


@dataclass(frozen=True)
class RasterImage:
    """An immutable rectangular pixel grid.

    ``pixels`` is a uint8 array of shape (height, width) for single-channel
    kinds and (height, width, 3) for three-channel kinds. Mask pixels hold
    only 0 or 1.
    """

    kind: ImageKind
    pixels: np.ndarray = field(repr=False)

    def __post_init__(self):
        px = np.asarray(self.pixels, dtype=np.uint8)
        expected_ndim = 3 if self.kind.channels == 3 else 2
        if px.ndim != expected_ndim:
            raise ValueError(
                f"{self.kind.value} image needs {expected_ndim}-d pixel array, got {px.ndim}-d"
            )
        if px.ndim == 3 and px.shape[2] != 3:
            raise ValueError(f"expected 3 channels, got {px.shape[2]}")
        if px.shape[0] < 1 or px.shape[1] < 1:
            raise ValueError("image must be at least 1x1")
        if self.kind is ImageKind.MASK1 and px.max(initial=0) > 1:
            raise ValueError("mask pixels must be 0 or 1")
        px = np.ascontiguousarray(px)
        px.setflags(write=False)
        object.__setattr__(self, "pixels", px)

    @property
    def width(self) -> int:
        return self.pixels.shape[1]

    @property
    def height(self) -> int:
        return self.pixels.shape[0]

    def require_kind(self, *kinds: ImageKind) -> "RasterImage":
        if self.kind not in kinds:
            wanted = ", ".join(k.value for k in kinds)
            raise ImageKindError(f"expected {wanted} image, got {self.kind.value}")
        return self

    def writable_copy(self) -> np.ndarray:
        return self.pixels.copy()


@dataclass(frozen=True)
class Contour:
    """Ordered boundary pixels of a region, 8-connected when traced."""

    points: tuple[tuple[int, int], ...]
    closed: bool = True

    def __len__(self) -> int:
        return len(self.points)

    def as_array(self) -> np.ndarray:
        return np.array(self.points, dtype=np.float64).reshape(-1, 2)

    def perimeter(self) -> float:
        pts = self.as_array()
        if len(pts) < 2:
            return 0.0
        nxt = np.roll(pts, -1, axis=0) if self.closed else pts[1:]
        cur = pts if self.closed else pts[:-1]
        return float(np.hypot(*(nxt - cur).T).sum())

    def area(self) -> float:
        """Enclosed area by the shoelace formula on the point sequence."""
        pts = self.as_array()
        if len(pts) < 3:
            return 0.0
        x, y = pts[:, 0], pts[:, 1]
        return float(abs(np.dot(x, np.roll(y, -1)) - np.dot(y, np.roll(x, -1))) / 2.0)

    def bounding_box(self) -> tuple[int, int, int, int]:
        xs = [p[0] for p in self.points]
        ys = [p[1] for p in self.points]
        return min(xs), min(ys), max(xs), max(ys)

    def centroid(self) -> tuple[float, float]:
        pts = self.as_array()
        return float(pts[:, 0].mean()), float(pts[:, 1].mean())


RGB = tuple[int, int, int]


@dataclass(frozen=True)
class ContourStroke:
    contour: Contour
    color: RGB
    thickness: int = 1


@dataclass(frozen=True)
class PolygonStroke:
    vertices: tuple[tuple[float, float], ...]
    color: RGB
    thickness: int = 1


@dataclass(frozen=True)
class CircleStroke:
    cx: float
    cy: float
    r: float
    color: RGB
    thickness: int = 1


@dataclass(frozen=True)
class LineSegment:
    p0: tuple[float, float]
    p1: tuple[float, float]
    color: RGB
    thickness: int = 1


OverlayElement = ContourStroke | PolygonStroke | CircleStroke | LineSegment


@dataclass(frozen=True)
class Overlay:
    """A batch of strokes rendered on top of an RGB image."""

    elements: tuple[OverlayElement, ...] = ()

    def __post_init__(self):
        for el in self.elements:
            if el.thickness < 1:
                raise ValueError("stroke thickness must be >= 1")
