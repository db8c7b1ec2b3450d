"""Hot-kernel backend selection.

The compiled Cython extension is preferred when importable; the NumPy
fallback produces bit-identical results. Set OBJDETECT_PURE_PYTHON=1 to
force the fallback.
"""

import os

from .pykernels import FAST_RING

if os.environ.get("OBJDETECT_PURE_PYTHON"):
    from . import pykernels as _impl

    BACKEND = "python"
else:
    try:
        from . import _cykernels as _impl

        BACKEND = "cython"
    except ImportError:
        from . import pykernels as _impl

        BACKEND = "python"

fast_score_map = _impl.fast_score_map
hough_vote = _impl.hough_vote
hamming_nn = _impl.hamming_nn

__all__ = ["BACKEND", "FAST_RING", "fast_score_map", "hamming_nn", "hough_vote"]
