"""Object detection by color, shape, or local features, built from scratch."""

from . import colordetect, features, imgcore, shapes
from .kernels import BACKEND as KERNEL_BACKEND

__version__ = "0.1.0"

__all__ = ["KERNEL_BACKEND", "colordetect", "features", "imgcore", "shapes"]
