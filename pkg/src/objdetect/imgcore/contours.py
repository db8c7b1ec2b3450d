"""Outer-contour extraction by Moore boundary tracing."""

from __future__ import annotations

import numpy as np
from scipy import ndimage

from ..errors import ParameterError
from .raster import Contour, ImageKind, RasterImage

# 8 neighbors in clockwise order starting west, as (dx, dy) with y down
_CLOCKWISE = ((-1, 0), (-1, -1), (0, -1), (1, -1), (1, 0), (1, 1), (0, 1), (-1, 1))
_DIR_INDEX = {d: i for i, d in enumerate(_CLOCKWISE)}


def _trace_boundary(is_fg, start: tuple[int, int], max_steps: int) -> list[tuple[int, int]]:
    """Moore-neighbor tracing from the topmost-leftmost pixel of a component.

    `is_fg(x, y)` must be False outside image bounds. Stops when the start
    pixel is re-entered toward the same first move (Jacob's criterion).
    """
    sx, sy = start
    cur = start
    prev = (sx - 1, sy)  # west neighbor is background by scan order
    points = [start]
    first_move = None
    for _ in range(max_steps):
        d0 = _DIR_INDEX[(prev[0] - cur[0], prev[1] - cur[1])]
        nxt = None
        for k in range(1, 9):
            i = (d0 + k) % 8
            cand = (cur[0] + _CLOCKWISE[i][0], cur[1] + _CLOCKWISE[i][1])
            if is_fg(*cand):
                nxt = cand
                before = (cur[0] + _CLOCKWISE[(i - 1) % 8][0], cur[1] + _CLOCKWISE[(i - 1) % 8][1])
                break
        if nxt is None:
            return points  # isolated pixel
        if first_move is None:
            first_move = nxt
        elif cur == (sx, sy) and nxt == first_move:
            return points
        points.append(nxt)
        prev, cur = before, nxt
    raise RuntimeError("contour tracing did not terminate")  # pragma: no cover


def find_contours(mask: RasterImage, min_area: float = 0.0) -> list[Contour]:
    """One closed outer contour per 8-connected foreground component.

    Contours whose shoelace area is below `min_area` are dropped. Results
    are ordered by topmost-then-leftmost starting pixel.
    """
    mask.require_kind(ImageKind.MASK1)
    if min_area < 0:
        raise ParameterError(f"min_area must be >= 0, got {min_area}")
    px = mask.pixels
    labels, n = ndimage.label(px, structure=np.ones((3, 3), dtype=int))
    if n == 0:
        return []
    h, w = px.shape
    flat = labels.ravel()
    uniq, first_idx = np.unique(flat, return_index=True)
    starts = []
    for lab, idx in zip(uniq, first_idx):
        if lab == 0:
            continue
        starts.append((lab, (int(idx % w), int(idx // w))))
    starts.sort(key=lambda t: (t[1][1], t[1][0]))  # row-major start order

    contours = []
    for lab, start in starts:
        def is_fg(x, y, lab=lab):
            return 0 <= x < w and 0 <= y < h and labels[y, x] == lab

        size = int((labels == lab).sum())
        points = _trace_boundary(is_fg, start, max_steps=8 * size + 16)
        contour = Contour(tuple(points), closed=True)
        if contour.area() >= min_area:
            contours.append(contour)
    return contours


def connected_component_count(mask: RasterImage) -> int:
    mask.require_kind(ImageKind.MASK1)
    return int(ndimage.label(mask.pixels, structure=np.ones((3, 3), dtype=int))[1])


def fill_components(mask: RasterImage) -> RasterImage:
    """Fill interior holes of every foreground component."""
    mask.require_kind(ImageKind.MASK1)
    filled = ndimage.binary_fill_holes(mask.pixels.astype(bool))
    return RasterImage(ImageKind.MASK1, filled.astype(np.uint8))
