"""Color-space conversions on 8-bit images."""

from __future__ import annotations

import numpy as np

from .raster import ImageKind, RasterImage


def rgb_to_hsv(image: RasterImage) -> RasterImage:
    """Hexcone RGB -> HSV with all channels on [0, 255].

    Hue covers the full byte range (360 degrees -> 256 steps, truncated),
    saturation is 255 * (max - min) / max (0 for achromatic pixels), and
    value is the channel maximum.
    """
    image.require_kind(ImageKind.RGB8)
    rgb = image.pixels.astype(np.float64)
    r, g, b = rgb[..., 0], rgb[..., 1], rgb[..., 2]
    cmax = rgb.max(axis=2)
    cmin = rgb.min(axis=2)
    delta = cmax - cmin
    chroma = delta > 0

    hue_deg = np.zeros_like(cmax)
    with np.errstate(invalid="ignore", divide="ignore"):
        rmax = chroma & (cmax == r)
        gmax = chroma & ~rmax & (cmax == g)
        bmax = chroma & ~rmax & ~gmax
        hue_deg[rmax] = (60.0 * (g - b)[rmax] / delta[rmax]) % 360.0
        hue_deg[gmax] = 60.0 * (b - r)[gmax] / delta[gmax] + 120.0
        hue_deg[bmax] = 60.0 * (r - g)[bmax] / delta[bmax] + 240.0

    h = np.floor(hue_deg * 256.0 / 360.0)
    s = np.zeros_like(cmax)
    nonzero = cmax > 0
    s[nonzero] = np.floor(255.0 * delta[nonzero] / cmax[nonzero] + 0.5)
    hsv = np.stack([h, s, cmax], axis=2)
    return RasterImage(ImageKind.HSV8, np.clip(hsv, 0, 255).astype(np.uint8))


def hsv_to_rgb(image: RasterImage) -> RasterImage:
    """Inverse hexcone conversion, for rendering HSV-specified fixtures."""
    image.require_kind(ImageKind.HSV8)
    hsv = image.pixels.astype(np.float64)
    h_deg = hsv[..., 0] * 360.0 / 256.0
    s = hsv[..., 1] / 255.0
    v = hsv[..., 2]

    c = v * s
    hp = h_deg / 60.0
    x = c * (1.0 - np.abs(hp % 2.0 - 1.0))
    m = v - c
    z = np.zeros_like(c)
    sector = np.floor(hp).astype(int) % 6
    r = np.choose(sector, [c, x, z, z, x, c])
    g = np.choose(sector, [x, c, c, x, z, z])
    b = np.choose(sector, [z, z, x, c, c, x])
    rgb = np.stack([r, g, b], axis=2) + m[..., None]
    return RasterImage(ImageKind.RGB8, np.clip(np.floor(rgb + 0.5), 0, 255).astype(np.uint8))


def rgb_to_gray(image: RasterImage) -> RasterImage:
    """Luma conversion 0.299 R + 0.587 G + 0.114 B, rounded half-up."""
    image.require_kind(ImageKind.RGB8)
    rgb = image.pixels.astype(np.float64)
    gray = 0.299 * rgb[..., 0] + 0.587 * rgb[..., 1] + 0.114 * rgb[..., 2]
    return RasterImage(ImageKind.GRAY8, np.clip(np.floor(gray + 0.5), 0, 255).astype(np.uint8))


def gray_to_rgb(image: RasterImage) -> RasterImage:
    image.require_kind(ImageKind.GRAY8)
    return RasterImage(ImageKind.RGB8, np.repeat(image.pixels[..., None], 3, axis=2))


def mask_to_gray(mask: RasterImage) -> RasterImage:
    mask.require_kind(ImageKind.MASK1)
    return RasterImage(ImageKind.GRAY8, (mask.pixels * np.uint8(255)))
