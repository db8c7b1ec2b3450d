"""Overlay rasterization: Bresenham lines and midpoint circles."""

from __future__ import annotations

import numpy as np

from .raster import (
    CircleStroke,
    Contour,
    ContourStroke,
    ImageKind,
    LineSegment,
    Overlay,
    PolygonStroke,
    RasterImage,
)


def bresenham_line(x0: int, y0: int, x1: int, y1: int) -> list[tuple[int, int]]:
    points = []
    dx = abs(x1 - x0)
    dy = -abs(y1 - y0)
    sx = 1 if x0 < x1 else -1
    sy = 1 if y0 < y1 else -1
    err = dx + dy
    x, y = x0, y0
    while True:
        points.append((x, y))
        if x == x1 and y == y1:
            return points
        e2 = 2 * err
        if e2 >= dy:
            err += dy
            x += sx
        if e2 <= dx:
            err += dx
            y += sy


def midpoint_circle(cx: int, cy: int, r: int) -> list[tuple[int, int]]:
    """All pixels of the 8-way symmetric midpoint circle of integer radius."""
    if r <= 0:
        return [(cx, cy)]
    points = set()
    x, y = r, 0
    err = 1 - r
    while x >= y:
        for px, py in ((x, y), (y, x), (-y, x), (-x, y), (-x, -y), (-y, -x), (y, -x), (x, -y)):
            points.add((cx + px, cy + py))
        y += 1
        if err < 0:
            err += 2 * y + 1
        else:
            x -= 1
            err += 2 * (y - x) + 1
    return sorted(points)


def _stamp(px: np.ndarray, points, color, thickness: int) -> None:
    h, w = px.shape[:2]
    col = np.array(color, dtype=np.uint8)
    if thickness <= 1:
        for x, y in points:
            if 0 <= x < w and 0 <= y < h:
                px[y, x] = col
        return
    rad = (thickness - 1) / 2.0
    offs = [
        (dx, dy)
        for dy in range(-int(np.ceil(rad)), int(np.ceil(rad)) + 1)
        for dx in range(-int(np.ceil(rad)), int(np.ceil(rad)) + 1)
        if dx * dx + dy * dy <= rad * rad + 0.5
    ]
    for x, y in points:
        for dx, dy in offs:
            xx, yy = x + dx, y + dy
            if 0 <= xx < w and 0 <= yy < h:
                px[yy, xx] = col


def _polyline_pixels(vertices, close: bool) -> list[tuple[int, int]]:
    pts = [(int(round(x)), int(round(y))) for x, y in vertices]
    if len(pts) == 1:
        return pts
    pixels = []
    pairs = list(zip(pts, pts[1:] + ([pts[0]] if close else [])))
    for (x0, y0), (x1, y1) in pairs:
        pixels.extend(bresenham_line(x0, y0, x1, y1))
    return pixels


def annotate(image: RasterImage, overlay: Overlay) -> RasterImage:
    """Return a copy of `image` with the overlay strokes drawn.

    Out-of-bounds stroke pixels are clipped silently; the input image is
    never modified.
    """
    image.require_kind(ImageKind.RGB8)
    px = image.writable_copy()
    for el in overlay.elements:
        if isinstance(el, LineSegment):
            pts = _polyline_pixels([el.p0, el.p1], close=False)
        elif isinstance(el, PolygonStroke):
            pts = _polyline_pixels(el.vertices, close=True)
        elif isinstance(el, ContourStroke):
            pts = _polyline_pixels(el.contour.points, close=el.contour.closed)
        elif isinstance(el, CircleStroke):
            pts = midpoint_circle(int(round(el.cx)), int(round(el.cy)), int(round(el.r)))
        else:  # pragma: no cover
            raise TypeError(f"unknown overlay element {type(el).__name__}")
        _stamp(px, pts, el.color, el.thickness)
    return RasterImage(ImageKind.RGB8, px)


def contour_stroke(contour: Contour, color, thickness: int = 1) -> ContourStroke:
    return ContourStroke(contour, tuple(color), thickness)
