"""Pixel-level primitives shared by all detection pipelines."""

from .codecs import (
    decode_image,
    decode_netpbm,
    decode_png,
    encode_netpbm,
    encode_png,
    load_image,
    save_image,
)
from .contours import connected_component_count, fill_components, find_contours
from .convert import gray_to_rgb, hsv_to_rgb, mask_to_gray, rgb_to_gray, rgb_to_hsv
from .draw import annotate, bresenham_line, midpoint_circle
from .filters import canny, edge_magnitude, gaussian_blur, gaussian_kernel, sobel_gradients
from .morphology import dilate, erode, morph, opening
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

__all__ = [
    "CircleStroke",
    "Contour",
    "ContourStroke",
    "ImageKind",
    "LineSegment",
    "Overlay",
    "PolygonStroke",
    "RasterImage",
    "annotate",
    "bresenham_line",
    "canny",
    "connected_component_count",
    "decode_image",
    "decode_netpbm",
    "decode_png",
    "dilate",
    "edge_magnitude",
    "encode_netpbm",
    "encode_png",
    "erode",
    "fill_components",
    "find_contours",
    "gaussian_blur",
    "gaussian_kernel",
    "gray_to_rgb",
    "hsv_to_rgb",
    "load_image",
    "mask_to_gray",
    "midpoint_circle",
    "morph",
    "opening",
    "rgb_to_gray",
    "rgb_to_hsv",
    "save_image",
    "sobel_gradients",
]
