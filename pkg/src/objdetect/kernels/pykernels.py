"""NumPy implementations of the hot kernels.

The compiled extension in ``_cykernels.pyx`` implements the same three
functions; results are bit-identical between backends.
"""

from __future__ import annotations

import numpy as np

# FAST 9-16 sampling circle, radius 3, clockwise from (0, -3)
FAST_RING = (
    (0, -3), (1, -3), (2, -2), (3, -1), (3, 0), (3, 1), (2, 2), (1, 3),
    (0, 3), (-1, 3), (-2, 2), (-3, 1), (-3, 0), (-3, -1), (-2, -2), (-1, -3),
)

_POPCOUNT = np.array([bin(i).count("1") for i in range(256)], dtype=np.uint8)


def fast_score_map(gray: np.ndarray) -> np.ndarray:
    """FAST 9-16 corner score at every pixel.

    Score = max over the 16 contiguous 9-pixel arcs of the minimum
    brightness offset from the center (in either polarity), clamped at 0.
    A pixel is a corner at threshold t iff score > t. Pixels within 3 px
    of the border score 0.
    """
    g = gray.astype(np.int32)
    h, w = g.shape
    score = np.zeros((h, w), dtype=np.int32)
    if h < 7 or w < 7:
        return score
    center = g[3 : h - 3, 3 : w - 3]
    ring = np.stack(
        [g[3 + dy : h - 3 + dy, 3 + dx : w - 3 + dx] for dx, dy in FAST_RING], axis=0
    )
    bright = ring - center[None]
    dark = -bright

    best = np.full(center.shape, np.iinfo(np.int32).min, dtype=np.int32)
    for diffs in (bright, dark):
        ext = np.concatenate([diffs, diffs[:8]], axis=0)  # wrap for circular arcs
        for start in range(16):
            arc_min = ext[start]
            for k in range(1, 9):
                arc_min = np.minimum(arc_min, ext[start + k])
            np.maximum(best, arc_min, out=best)
    score[3 : h - 3, 3 : w - 3] = np.maximum(best, 0)
    return score


def hough_vote(
    edge_xs: np.ndarray,
    edge_ys: np.ndarray,
    gx: np.ndarray,
    gy: np.ndarray,
    r_min: int,
    r_max: int,
    height: int,
    width: int,
) -> np.ndarray:
    """Circle Hough center accumulator.

    Every edge pixel votes along its gradient direction, in both senses,
    once per integer radius in [r_min, r_max].
    """
    acc = np.zeros((height, width), dtype=np.int32)
    if len(edge_xs) == 0:
        return acc
    norm = np.hypot(gx, gy)
    ok = norm > 0
    xs, ys = edge_xs[ok].astype(np.float64), edge_ys[ok].astype(np.float64)
    dx, dy = gx[ok] / norm[ok], gy[ok] / norm[ok]
    for r in range(r_min, r_max + 1):
        for sense in (1.0, -1.0):
            cx = np.floor(xs + sense * r * dx + 0.5).astype(np.int64)
            cy = np.floor(ys + sense * r * dy + 0.5).astype(np.int64)
            inb = (cx >= 0) & (cx < width) & (cy >= 0) & (cy < height)
            np.add.at(acc, (cy[inb], cx[inb]), 1)
    return acc


def hamming_nn(obj: np.ndarray, scene: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
    """Nearest scene descriptor per object descriptor by Hamming distance.

    Inputs are (n, 64) and (m, 64) uint8 arrays of packed bits. Ties go to
    the lowest scene index. Returns (indices, distances).
    """
    n, m = obj.shape[0], scene.shape[0]
    indices = np.zeros(n, dtype=np.int64)
    distances = np.zeros(n, dtype=np.int32)
    if n == 0 or m == 0:
        return indices, distances
    chunk = max(1, (1 << 22) // max(1, m * scene.shape[1]))
    for lo in range(0, n, chunk):
        hi = min(n, lo + chunk)
        xor = obj[lo:hi, None, :] ^ scene[None, :, :]
        dist = _POPCOUNT[xor].sum(axis=2, dtype=np.int32)
        indices[lo:hi] = dist.argmin(axis=1)
        distances[lo:hi] = dist[np.arange(hi - lo), indices[lo:hi]]
    return indices, distances
