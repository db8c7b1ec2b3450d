"""Shared fixture renderers for the test suite.

All synthetic images are rendered with simple closed-form geometry tests
(point-in-disk, convex half-plane) so expected detections come from render
parameters, not from the code under test.
"""

from __future__ import annotations

import math

import numpy as np
import pytest

from objdetect.imgcore import ImageKind, RasterImage


def solid_rgb(height: int, width: int, rgb=(0, 0, 0)) -> np.ndarray:
    img = np.zeros((height, width, 3), dtype=np.uint8)
    img[:] = rgb
    return img


def render_disk(height, width, cx, cy, r, fg=(200, 200, 200), bg=(30, 30, 30)):
    """Filled disk: pixel (x, y) is foreground iff its center lies in the disk."""
    img = solid_rgb(height, width, bg)
    yy, xx = np.mgrid[0:height, 0:width]
    inside = (xx - cx) ** 2 + (yy - cy) ** 2 <= r * r
    img[inside] = fg
    return RasterImage(ImageKind.RGB8, img)


def render_convex_polygon(height, width, vertices, fg=(200, 200, 200), bg=(30, 30, 30)):
    """Fill a convex polygon given CCW vertices via half-plane tests."""
    img = solid_rgb(height, width, bg)
    yy, xx = np.mgrid[0:height, 0:width]
    inside = np.ones((height, width), dtype=bool)
    n = len(vertices)
    for i in range(n):
        x0, y0 = vertices[i]
        x1, y1 = vertices[(i + 1) % n]
        # In image coordinates (y down) a CCW polygon keeps its interior on
        # the side where the cross product is negative or zero.
        cross = (x1 - x0) * (yy - y0) - (y1 - y0) * (xx - x0)
        inside &= cross <= 0
    img[inside] = fg
    return RasterImage(ImageKind.RGB8, img)


def regular_polygon_vertices(cx, cy, radius, sides, rotation=0.0):
    """CCW vertices (image coords, y down) of a regular polygon."""
    pts = []
    for k in range(sides):
        a = rotation - 2.0 * math.pi * k / sides
        pts.append((cx + radius * math.cos(a), cy + radius * math.sin(a)))
    return pts


def rectangle_vertices(cx, cy, half_w, half_h, rotation=0.0):
    """CCW corners of a rotated rectangle centered at (cx, cy)."""
    c, s = math.cos(rotation), math.sin(rotation)
    corners = [(-half_w, -half_h), (-half_w, half_h), (half_w, half_h), (half_w, -half_h)]
    return [(cx + c * dx - s * dy, cy + s * dx + c * dy) for dx, dy in corners]


def checkerboard(size=64, cell=8, lo=20, hi=220) -> np.ndarray:
    yy, xx = np.mgrid[0:size, 0:size]
    board = ((yy // cell + xx // cell) % 2).astype(np.uint8)
    return np.where(board == 1, np.uint8(hi), np.uint8(lo))


def textured_patch(height, width, seed, block=4):
    """Blocky random-intensity texture: rich in corners at every scale."""
    rng = np.random.default_rng(seed)
    blocks = rng.integers(0, 256, size=(height // block + 1, width // block + 1), dtype=np.uint8)
    return np.kron(blocks, np.ones((block, block), dtype=np.uint8))[:height, :width]


def gray_image(pixels) -> RasterImage:
    return RasterImage(ImageKind.GRAY8, np.asarray(pixels, dtype=np.uint8))


def rgb_from_gray(pixels) -> RasterImage:
    g = np.asarray(pixels, dtype=np.uint8)
    return RasterImage(ImageKind.RGB8, np.repeat(g[:, :, None], 3, axis=2))


@pytest.fixture
def green_swatch_ppm(tmp_path):
    """100x100 black background with a 40x40 mid-green square, saved as PPM."""
    from objdetect.colordetect import default_color_table, lookup_color
    from objdetect.imgcore import hsv_to_rgb, save_image

    entry = lookup_color(default_color_table(), "Green")
    hsv = np.zeros((1, 1, 3), dtype=np.uint8)
    hsv[0, 0] = entry.midpoint
    fg = hsv_to_rgb(RasterImage(ImageKind.HSV8, hsv)).pixels[0, 0]
    img = solid_rgb(100, 100, (0, 0, 0))
    img[30:70, 30:70] = fg
    path = tmp_path / "green.ppm"
    save_image(RasterImage(ImageKind.RGB8, img), path)
    return path
