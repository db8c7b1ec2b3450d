"""Scale-space corner detection and 512-bit binary description.

The detector runs FAST 9-16 over an octave/intra-octave pyramid with
spatial and cross-layer non-maximum suppression. The descriptor samples a
60-point concentric-ring pattern, smoothed by integral-image box filters
whose size grows with ring radius, oriented by the intensity gradient
over long-distance sample pairs, and emits one bit per short-distance
pair comparison.

Pattern constants (unit scale):
    ring radii   0.0, 2.9, 4.9, 7.4, 10.8
    ring counts  1, 10, 14, 15, 20          (60 samples)
    smoothing    sigma = max(0.5, 0.3 * radius), box half = round(sigma * t)
    short pairs  the 512 closest pairs, ordered by (i, j)
    long pairs   pairs with distance >= 10.8
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np
from scipy import ndimage

from ..errors import ParameterError
from ..imgcore import ImageKind, RasterImage
from ..kernels import fast_score_map

RING_RADII = (0.0, 2.9, 4.9, 7.4, 10.8)
RING_COUNTS = (1, 10, 14, 15, 20)
DESCRIPTOR_BITS = 512
LONG_PAIR_MIN_DIST = 10.8


@dataclass(frozen=True)
class Keypoint:
    x: float
    y: float
    scale: float
    orientation: float
    score: float


@dataclass(frozen=True)
class BinaryDescriptor:
    bits: bytes  # 64 bytes, bit i = i-th short-pair comparison

    def __post_init__(self):
        if len(self.bits) != DESCRIPTOR_BITS // 8:
            raise ParameterError(f"descriptor must be {DESCRIPTOR_BITS} bits")

    def as_array(self) -> np.ndarray:
        return np.frombuffer(self.bits, dtype=np.uint8)


def _pattern_points() -> np.ndarray:
    pts = []
    for radius, count in zip(RING_RADII, RING_COUNTS):
        for k in range(count):
            ang = 2.0 * np.pi * k / count
            pts.append((radius * np.cos(ang), radius * np.sin(ang)))
    return np.array(pts, dtype=np.float64)


def _pattern_sigmas() -> np.ndarray:
    sig = []
    for radius, count in zip(RING_RADII, RING_COUNTS):
        sig.extend([max(0.5, 0.3 * radius)] * count)
    return np.array(sig, dtype=np.float64)


def _pair_tables() -> tuple[np.ndarray, np.ndarray]:
    pts = _pattern_points()
    n = len(pts)
    pairs = [(i, j) for i in range(n) for j in range(i + 1, n)]
    dists = np.array([np.hypot(*(pts[j] - pts[i])) for i, j in pairs])
    order = np.lexsort((np.array(pairs)[:, 1], np.array(pairs)[:, 0], dists))
    short = sorted(tuple(pairs[k]) for k in order[:DESCRIPTOR_BITS])
    long_ = [p for p, d in zip(pairs, dists) if d >= LONG_PAIR_MIN_DIST]
    return np.array(short, dtype=np.int64), np.array(long_, dtype=np.int64)


PATTERN = _pattern_points()
PATTERN_SIGMAS = _pattern_sigmas()
SHORT_PAIRS, LONG_PAIRS = _pair_tables()


# ---------------------------------------------------------------------------
# scale pyramid

def _halfsample(img: np.ndarray) -> np.ndarray:
    h, w = img.shape
    img = img[: h - h % 2, : w - w % 2]
    return (
        img[0::2, 0::2].astype(np.float64)
        + img[0::2, 1::2]
        + img[1::2, 0::2]
        + img[1::2, 1::2]
    ) / 4.0


def _resize_bilinear(img: np.ndarray, factor: float) -> np.ndarray:
    h, w = img.shape
    nh, nw = int(h / factor), int(w / factor)
    ys = (np.arange(nh) + 0.5) * factor - 0.5
    xs = (np.arange(nw) + 0.5) * factor - 0.5
    yy, xx = np.meshgrid(np.clip(ys, 0, h - 1), np.clip(xs, 0, w - 1), indexing="ij")
    return ndimage.map_coordinates(img.astype(np.float64), [yy, xx], order=1, mode="nearest")


@dataclass(frozen=True)
class _Layer:
    scale: float
    pixels: np.ndarray  # float64
    scores: np.ndarray  # int32 FAST scores


def build_pyramid(gray: np.ndarray, octaves: int) -> list[_Layer]:
    """Octaves at scales 2^i interleaved with intra-octaves at 1.5 * 2^i."""
    base = gray.astype(np.float64)
    layers: list[tuple[float, np.ndarray]] = []
    c = base
    d = _resize_bilinear(base, 1.5)
    for i in range(octaves):
        layers.append((2.0**i, c))
        layers.append((1.5 * 2.0**i, d))
        c = _halfsample(c)
        d = _halfsample(d)
    out = []
    for scale, px in sorted(layers, key=lambda t: t[0]):
        if min(px.shape) < 7:
            continue
        rounded = np.floor(px + 0.5).astype(np.uint8)
        out.append(_Layer(scale, px, fast_score_map(rounded)))
    return out


def _bilinear(arr: np.ndarray, x: float, y: float) -> float:
    h, w = arr.shape
    x = min(max(x, 0.0), w - 1.0)
    y = min(max(y, 0.0), h - 1.0)
    x0, y0 = int(x), int(y)
    x1, y1 = min(x0 + 1, w - 1), min(y0 + 1, h - 1)
    fx, fy = x - x0, y - y0
    top = arr[y0, x0] * (1 - fx) + arr[y0, x1] * fx
    bot = arr[y1, x0] * (1 - fx) + arr[y1, x1] * fx
    return float(top * (1 - fy) + bot * fy)


def _to_original(x: float, y: float, scale: float) -> tuple[float, float]:
    return (x + 0.5) * scale - 0.5, (y + 0.5) * scale - 0.5


def _from_original(x: float, y: float, scale: float) -> tuple[float, float]:
    return (x + 0.5) / scale - 0.5, (y + 0.5) / scale - 0.5


def _refine_2d(scores: np.ndarray, cx: int, cy: int) -> tuple[float, float]:
    s = scores[cy - 1 : cy + 2, cx - 1 : cx + 2].astype(np.float64)
    dx = (s[1, 2] - s[1, 0]) / 2.0
    dy = (s[2, 1] - s[0, 1]) / 2.0
    dxx = s[1, 2] - 2 * s[1, 1] + s[1, 0]
    dyy = s[2, 1] - 2 * s[1, 1] + s[0, 1]
    dxy = (s[2, 2] - s[2, 0] - s[0, 2] + s[0, 0]) / 4.0
    det = dxx * dyy - dxy * dxy
    if abs(det) < 1e-12:
        return 0.0, 0.0
    ox = -(dyy * dx - dxy * dy) / det
    oy = -(dxx * dy - dxy * dx) / det
    if abs(ox) > 1.0 or abs(oy) > 1.0:
        return 0.0, 0.0
    return ox, oy


def brisk_detect(gray: RasterImage, threshold: int = 30, octaves: int = 3) -> list[Keypoint]:
    """Scale-space FAST keypoints, strongest first.

    Images smaller than 32x32 yield an empty list. Ties in score are
    broken by (layer, y, x) so repeated runs are identical.
    """
    gray.require_kind(ImageKind.GRAY8)
    if not (1 <= threshold <= 255):
        raise ParameterError(f"threshold must be in 1..255, got {threshold}")
    if octaves < 1:
        raise ParameterError(f"octaves must be >= 1, got {octaves}")
    if gray.width < 32 or gray.height < 32:
        return []

    layers = build_pyramid(gray.pixels, octaves)
    found: list[tuple[float, int, float, float, Keypoint]] = []
    for li, layer in enumerate(layers):
        scores = layer.scores
        local_max = scores == ndimage.maximum_filter(scores, size=3, mode="constant")
        cand_ys, cand_xs = np.nonzero(local_max & (scores > threshold))
        for cy, cx in zip(cand_ys.tolist(), cand_xs.tolist()):
            own = float(scores[cy, cx])
            xo, yo = _to_original(float(cx), float(cy), layer.scale)
            suppressed = False
            neighbor_scores = []
            for ni in (li - 1, li + 1):
                if 0 <= ni < len(layers):
                    nb = layers[ni]
                    nx, ny = _from_original(xo, yo, nb.scale)
                    val = _bilinear(nb.scores.astype(np.float64), nx, ny)
                    neighbor_scores.append((ni, val))
                    if own < val:
                        suppressed = True
                        break
                else:
                    neighbor_scores.append((ni, None))
            if suppressed:
                continue
            ox, oy = _refine_2d(scores, cx, cy)
            xo, yo = _to_original(cx + ox, cy + oy, layer.scale)
            scale = layer.scale
            vals = dict((ni, v) for ni, v in neighbor_scores)
            below = vals.get(li - 1)
            above = vals.get(li + 1)
            if below is not None and above is not None:
                denom = below - 2.0 * own + above
                if denom < 0:
                    delta = 0.5 * (below - above) / denom
                    if abs(delta) <= 1.0:
                        lo = np.log(layers[li - 1].scale)
                        hi = np.log(layers[li + 1].scale)
                        scale = float(np.exp(np.log(layer.scale) + delta * (hi - lo) / 2.0))
            if not (0 <= xo < gray.width and 0 <= yo < gray.height):
                continue
            found.append((-own, li, yo, xo, Keypoint(xo, yo, scale, 0.0, own)))
    found.sort(key=lambda t: t[:4])
    return [kp for *_key, kp in found]


# ---------------------------------------------------------------------------
# descriptor

def _integral(gray: np.ndarray) -> np.ndarray:
    ii = np.zeros((gray.shape[0] + 1, gray.shape[1] + 1), dtype=np.float64)
    ii[1:, 1:] = gray.astype(np.float64).cumsum(axis=0).cumsum(axis=1)
    return ii


def _box_means(ii: np.ndarray, xs: np.ndarray, ys: np.ndarray, halfs: np.ndarray):
    """Bilinearly-blended box means centered at float positions.

    Returns (values, valid) where valid is False when any of the four
    integer-centered boxes would leave the image.
    """
    h, w = ii.shape[0] - 1, ii.shape[1] - 1
    x0 = np.floor(xs).astype(np.int64)
    y0 = np.floor(ys).astype(np.int64)
    fx, fy = xs - x0, ys - y0
    valid = (x0 - halfs >= 0) & (y0 - halfs >= 0) & (x0 + 1 + halfs <= w - 1) & (y0 + 1 + halfs <= h - 1)
    x0c = np.clip(x0, halfs, np.maximum(halfs, w - 2 - halfs))
    y0c = np.clip(y0, halfs, np.maximum(halfs, h - 2 - halfs))
    area = (2 * halfs + 1).astype(np.float64) ** 2

    def box(xc, yc):
        ax, ay = xc - halfs, yc - halfs
        bx, by = xc + halfs + 1, yc + halfs + 1
        return (ii[by, bx] - ii[ay, bx] - ii[by, ax] + ii[ay, ax]) / area

    v00 = box(x0c, y0c)
    v10 = box(x0c + 1, y0c)
    v01 = box(x0c, y0c + 1)
    v11 = box(x0c + 1, y0c + 1)
    vals = (v00 * (1 - fx) + v10 * fx) * (1 - fy) + (v01 * (1 - fx) + v11 * fx) * fy
    return vals, valid


def _sample_pattern(ii, kps_xy, scales, angles):
    """Sample all 60 smoothed pattern values for every keypoint.

    Returns (values[n, 60], valid[n]).
    """
    n = len(scales)
    cos, sin = np.cos(angles), np.sin(angles)
    px, py = PATTERN[:, 0], PATTERN[:, 1]
    rx = scales[:, None] * (cos[:, None] * px[None, :] - sin[:, None] * py[None, :])
    ry = scales[:, None] * (sin[:, None] * px[None, :] + cos[:, None] * py[None, :])
    xs = kps_xy[:, 0:1] + rx
    ys = kps_xy[:, 1:2] + ry
    halfs = np.floor(PATTERN_SIGMAS[None, :] * scales[:, None] + 0.5).astype(np.int64)
    np.maximum(halfs, 0, out=halfs)
    vals, valid = _box_means(ii, xs.ravel(), ys.ravel(), halfs.ravel())
    return vals.reshape(n, -1), valid.reshape(n, -1).all(axis=1)


def brisk_describe(
    gray: RasterImage, keypoints: list[Keypoint]
) -> list[tuple[Keypoint, BinaryDescriptor]]:
    """Describe keypoints; those whose pattern exits the image are dropped.

    Each returned keypoint carries the orientation estimated from the
    long-pair intensity gradient.
    """
    gray.require_kind(ImageKind.GRAY8)
    if not keypoints:
        return []
    ii = _integral(gray.pixels)
    xy = np.array([(kp.x, kp.y) for kp in keypoints], dtype=np.float64)
    scales = np.array([kp.scale for kp in keypoints], dtype=np.float64)

    upright, valid0 = _sample_pattern(ii, xy, scales, np.zeros(len(keypoints)))
    li, lj = LONG_PAIRS[:, 0], LONG_PAIRS[:, 1]
    dvec = PATTERN[lj] - PATTERN[li]
    norm2 = (dvec**2).sum(axis=1)
    diff = upright[:, lj] - upright[:, li]
    gx = (diff * (dvec[:, 0] / norm2)[None, :]).sum(axis=1)
    gy = (diff * (dvec[:, 1] / norm2)[None, :]).sum(axis=1)
    angles = np.arctan2(gy, gx)

    rotated, valid1 = _sample_pattern(ii, xy, scales, angles)
    si, sj = SHORT_PAIRS[:, 0], SHORT_PAIRS[:, 1]
    bits = (rotated[:, sj] > rotated[:, si]).astype(np.uint8)
    packed = np.packbits(bits, axis=1)

    out = []
    for k, kp in enumerate(keypoints):
        if not (valid0[k] and valid1[k]):
            continue
        oriented = Keypoint(kp.x, kp.y, kp.scale, float(angles[k]), kp.score)
        out.append((oriented, BinaryDescriptor(packed[k].tobytes())))
    return out
