"""Binary erosion and dilation with a square structuring element."""

from __future__ import annotations

from scipy import ndimage

from ..errors import ParameterError
from .raster import ImageKind, RasterImage


def _check_kernel(size: int) -> None:
    if size < 3 or size % 2 == 0:
        raise ParameterError(f"structuring element side must be odd and >= 3, got {size}")


def erode(mask: RasterImage, size: int = 3) -> RasterImage:
    """1 iff every pixel under the SE is 1; out-of-bounds counts as 0."""
    mask.require_kind(ImageKind.MASK1)
    _check_kernel(size)
    out = ndimage.minimum_filter(mask.pixels, size=size, mode="constant", cval=0)
    return RasterImage(ImageKind.MASK1, out)


def dilate(mask: RasterImage, size: int = 3) -> RasterImage:
    """1 iff any pixel under the SE is 1."""
    mask.require_kind(ImageKind.MASK1)
    _check_kernel(size)
    out = ndimage.maximum_filter(mask.pixels, size=size, mode="constant", cval=0)
    return RasterImage(ImageKind.MASK1, out)


def morph(mask: RasterImage, op: str, size: int = 3) -> RasterImage:
    if op == "erode":
        return erode(mask, size)
    if op == "dilate":
        return dilate(mask, size)
    raise ParameterError(f"op must be 'erode' or 'dilate', got {op!r}")


def opening(mask: RasterImage, size: int = 3) -> RasterImage:
    """Erosion then dilation; removes speckle while keeping larger regions."""
    return dilate(erode(mask, size), size)
