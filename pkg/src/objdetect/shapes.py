"""Shape detection: Circle Hough Transform and polygon classification."""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from .errors import ClassificationError, ParameterError
from .imgcore import (
    CircleStroke,
    Contour,
    ImageKind,
    Overlay,
    PolygonStroke,
    RasterImage,
    annotate,
    canny,
    dilate,
    fill_components,
    find_contours,
    gaussian_blur,
    rgb_to_gray,
    sobel_gradients,
)
from .kernels import hough_vote

SHAPE_LABELS = ("Circle", "Triangle", "Square", "Rectangle", "Other")


@dataclass(frozen=True)
class CircleDetection:
    cx: float
    cy: float
    r: float
    votes: int


@dataclass(frozen=True)
class PolyShape:
    label: str
    vertices: tuple[tuple[int, int], ...]
    source: Contour


@dataclass(frozen=True)
class ShapeParams:
    # sigma 1.5 and thresholds 50/150 flatten moderate-contrast edges to
    # nothing after smoothing; the pipeline uses gentler settings than the
    # standalone canny() defaults
    sigma: float = 1.0
    canny_low: float = 30.0
    canny_high: float = 90.0
    r_min: int = 10
    r_max: int | None = None  # default: min(width, height) // 2
    accumulator_threshold: float | None = None  # default: 0.6 * 2 pi r_min
    min_center_distance: float | None = None  # default: 2 * r_min
    min_area: float = 100.0
    dp_epsilon_factor: float = 0.02
    right_angle_cos_tol: float = 0.3
    square_ratio_tol: float = 0.1


@dataclass(frozen=True)
class ShapeDetectionResult:
    circles: list[CircleDetection]
    polygons: list[PolyShape]
    annotated: RasterImage
    params: ShapeParams = field(default_factory=ShapeParams)


def hough_circles(
    gray: RasterImage,
    canny_low: float = 50.0,
    canny_high: float = 150.0,
    r_min: int = 10,
    r_max: int | None = None,
    accumulator_threshold: float | None = None,
    min_center_distance: float | None = None,
) -> list[CircleDetection]:
    """Gradient-directed circle Hough transform.

    Edge pixels vote along their gradient (both senses) for every radius
    in [r_min, r_max]; accumulator local maxima above the threshold become
    detections, greedily separated by min_center_distance, strongest first.
    The radius per center is the mode of a 1-px radius histogram over
    supporting edge pixels.
    """
    gray.require_kind(ImageKind.GRAY8)
    if r_max is None:
        r_max = max(r_min, min(gray.width, gray.height) // 2)
    if not (1 <= r_min <= r_max):
        raise ParameterError(f"need 1 <= r_min <= r_max, got {r_min}..{r_max}")
    if accumulator_threshold is None:
        accumulator_threshold = 0.6 * 2.0 * math.pi * r_min
    if min_center_distance is None:
        min_center_distance = 2.0 * r_min

    edges = canny(gray, canny_low, canny_high)
    ys, xs = np.nonzero(edges.pixels)
    if len(xs) == 0:
        return []
    gx_full, gy_full = sobel_gradients(gray)
    gx, gy = gx_full[ys, xs], gy_full[ys, xs]

    acc = hough_vote(xs, ys, gx, gy, r_min, r_max, gray.height, gray.width)

    # pool votes over 3x3 cells (rasterization spreads them), then take
    # local maxima and greedily enforce the center separation
    from scipy import ndimage

    acc = ndimage.correlate(acc, np.ones((3, 3), dtype=np.int32), mode="constant")
    local_max = acc == ndimage.maximum_filter(acc, size=3, mode="constant")
    cand_ys, cand_xs = np.nonzero(local_max & (acc >= accumulator_threshold))
    votes = acc[cand_ys, cand_xs]
    order = np.lexsort((cand_xs, cand_ys, -votes))

    detections: list[CircleDetection] = []
    kept: list[tuple[float, float]] = []
    for i in order:
        px, py = int(cand_xs[i]), int(cand_ys[i])
        # refine the center to the vote-weighted centroid of the 5x5 peak area
        y0, y1 = max(0, py - 2), min(gray.height, py + 3)
        x0, x1 = max(0, px - 2), min(gray.width, px + 3)
        win = acc[y0:y1, x0:x1].astype(np.float64)
        wy, wx = np.mgrid[y0:y1, x0:x1]
        cx = float((win * wx).sum() / win.sum())
        cy = float((win * wy).sum() / win.sum())
        if any(math.hypot(cx - kx, cy - ky) < min_center_distance for kx, ky in kept):
            continue
        dist = np.hypot(xs - cx, ys - cy)
        support = (dist >= r_min - 0.5) & (dist < r_max + 0.5)
        if not support.any():
            continue
        bins = np.floor(dist[support] + 0.5).astype(int)
        radius = int(np.bincount(bins).argmax())
        radius = min(max(radius, r_min), r_max)
        # verify: straight edges also pile up votes, but their supporting
        # pixels are neither radially aligned nor spread in angle. On a true
        # circle every edge gradient points at the center; on a polygon it
        # only does so near edge midpoints.
        ring = np.abs(dist - radius) <= 1.5
        rx, ry = (xs - cx) / np.maximum(dist, 1e-9), (ys - cy) / np.maximum(dist, 1e-9)
        gnorm = np.hypot(gx, gy)
        alignment = np.abs(rx * gx + ry * gy) / np.maximum(gnorm, 1e-9)
        ring &= alignment >= 0.97
        ring_count = int(ring.sum())
        if ring_count < 0.6 * 2.0 * math.pi * radius:
            continue
        angles = np.arctan2(ys[ring] - cy, xs[ring] - cx)
        occupied = len(np.unique(np.floor((angles + math.pi) / (2.0 * math.pi / 36.0)).astype(int)))
        if occupied < 0.7 * 36:
            continue
        kept.append((cx, cy))
        detections.append(CircleDetection(float(cx), float(cy), float(radius), int(votes[i])))
    return detections


def _point_segment_distance(p: np.ndarray, a: np.ndarray, b: np.ndarray) -> float:
    """Perpendicular distance from p to the infinite chord through a, b
    (falls back to point distance when a == b)."""
    ab = b - a
    n = np.hypot(*ab)
    if n == 0:
        return float(np.hypot(*(p - a)))
    return float(abs(ab[0] * (a[1] - p[1]) - ab[1] * (a[0] - p[0])) / n)


def _dp_open(points: np.ndarray, epsilon: float) -> list[int]:
    """Indices kept by the recursive farthest-point simplification."""
    keep = [0, len(points) - 1]

    def recurse(lo: int, hi: int) -> None:
        if hi - lo < 2:
            return
        dmax, imax = -1.0, -1
        for i in range(lo + 1, hi):
            d = _point_segment_distance(points[i], points[lo], points[hi])
            if d > dmax:
                dmax, imax = d, i
        if dmax > epsilon:
            keep.append(imax)
            recurse(lo, imax)
            recurse(imax, hi)

    recurse(0, len(points) - 1)
    return sorted(set(keep))


def douglas_peucker(polyline, epsilon: float, closed: bool = False):
    """Farthest-point polyline simplification.

    Closed rings are split at the point farthest from the start point,
    each half simplified, then rejoined; because the split point is forced
    into the result even when it sits on a smooth stretch, a final cyclic
    pass removes ring vertices within epsilon of their neighbor chord.
    Output is always an order-preserving subsequence of the input.
    """
    pts = [tuple(p) for p in polyline]
    if len(pts) < 2:
        raise ParameterError(f"need at least 2 points, got {len(pts)}")
    if epsilon < 0:
        raise ParameterError(f"epsilon must be >= 0, got {epsilon}")
    arr = np.asarray(pts, dtype=np.float64)
    if not closed or len(pts) < 4:
        keep = _dp_open(arr, epsilon)
        return [pts[i] for i in keep]
    # split at the point farthest from points[0]; lowest index wins ties
    d0 = np.hypot(*(arr - arr[0]).T)
    split = int(np.argmax(d0))
    if split == 0:
        return [pts[0]]
    first = _dp_open(arr[: split + 1], epsilon)
    ring = np.concatenate([arr[split:], arr[:1]], axis=0)
    second = [split + i for i in _dp_open(ring, epsilon)]
    keep = sorted(set(first) | {i for i in second if i < len(pts)})
    verts = [arr[i] for i in keep]
    while len(verts) > 3:
        best = None
        for i in range(len(verts)):
            d = _point_segment_distance(verts[i], verts[i - 1], verts[(i + 1) % len(verts)])
            if d <= epsilon and (best is None or d < best[0]):
                best = (d, i)
        if best is None:
            break
        del keep[best[1]], verts[best[1]]
    return [pts[i] for i in keep]


def _line_intersection(a0, a1, b0, b1):
    """Intersection of infinite lines a0-a1 and b0-b1, or None if parallel."""
    d1 = a1 - a0
    d2 = b1 - b0
    denom = d1[0] * d2[1] - d1[1] * d2[0]
    if abs(denom) < 1e-9:
        return None
    t = ((b0[0] - a0[0]) * d2[1] - (b0[1] - a0[1]) * d2[0]) / denom
    return a0 + t * d1


def collapse_short_edges(vertices, max_fraction: float = 0.08):
    """Replace chamfer edges with the corner their neighbor edges imply.

    Boundary tracing plus dilation rounds sharp corners into short slanted
    edges. Any edge shorter than ``max_fraction`` of the perimeter whose two
    neighboring edges intersect near it is collapsed to that intersection.
    Genuinely short sides (e.g. of a thin rectangle) have near-parallel
    neighbors and are kept.
    """
    verts = [np.asarray(p, dtype=np.float64) for p in vertices]
    changed = True
    while changed and len(verts) > 3:
        changed = False
        perimeter = sum(
            np.hypot(*(verts[(i + 1) % len(verts)] - verts[i])) for i in range(len(verts))
        )
        limit = max_fraction * perimeter
        for i in range(len(verts)):
            n = len(verts)
            a, b = verts[i], verts[(i + 1) % n]
            length = float(np.hypot(*(b - a)))
            if length >= limit:
                continue
            prev_pt = verts[(i - 1) % n]
            next_pt = verts[(i + 2) % n]
            corner = _line_intersection(prev_pt, a, next_pt, b)
            if corner is None:
                continue
            mid = (a + b) / 2.0
            if np.hypot(*(corner - mid)) > 2.0 * length + 3.0:
                continue  # neighbors nearly parallel: a real short side
            verts[i] = corner
            del verts[(i + 1) % n]
            changed = True
            break
    return [(float(x), float(y)) for x, y in verts]


def classify_polygon(
    vertices,
    right_angle_cos_tol: float = 0.3,
    square_ratio_tol: float = 0.1,
) -> str:
    """Label a simple polygon: Triangle, Square, Rectangle, or Other.

    Quadrilaterals are rectangular when every interior-angle cosine is
    within the tolerance of zero; rectangular quads are Square when the
    mean short-side / mean long-side ratio is within square_ratio_tol of 1.
    """
    pts = np.asarray([tuple(p) for p in vertices], dtype=np.float64)
    n = len(pts)
    if n < 3:
        raise ParameterError(f"need at least 3 vertices, got {n}")
    sides = np.hypot(*(np.roll(pts, -1, axis=0) - pts).T)
    x, y = pts[:, 0], pts[:, 1]
    area = abs(np.dot(x, np.roll(y, -1)) - np.dot(y, np.roll(x, -1))) / 2.0
    if sides.min() == 0 or area == 0:
        raise ClassificationError("degenerate polygon: zero-length edge or zero area")
    if n == 3:
        return "Triangle"
    if n > 4:
        return "Other"
    for i in range(4):
        e1 = pts[(i - 1) % 4] - pts[i]
        e2 = pts[(i + 1) % 4] - pts[i]
        cos = np.dot(e1, e2) / (np.hypot(*e1) * np.hypot(*e2))
        if abs(cos) > right_angle_cos_tol:
            return "Other"
    pair_a = (sides[0] + sides[2]) / 2.0
    pair_b = (sides[1] + sides[3]) / 2.0
    ratio = min(pair_a, pair_b) / max(pair_a, pair_b)
    return "Square" if ratio >= 1.0 - square_ratio_tol else "Rectangle"


def detect_shapes(
    image: RasterImage,
    wanted=SHAPE_LABELS,
    params: ShapeParams | None = None,
) -> ShapeDetectionResult:
    """Full shape pipeline: gray, blur, Canny, Hough circles, contour
    simplification and classification.

    Contours come from the Canny mask dilated once (closing 1-px gaps)
    with component interiors filled. Polygons labeled Other whose centroid
    falls inside a detected circle are suppressed as circle duplicates.
    """
    image.require_kind(ImageKind.RGB8)
    params = params or ShapeParams()
    wanted = set(wanted)
    unknown = wanted - set(SHAPE_LABELS)
    if unknown or not wanted:
        raise ParameterError(f"wanted must be a non-empty subset of {SHAPE_LABELS}, got {sorted(wanted)}")

    gray = gaussian_blur(rgb_to_gray(image), params.sigma)
    edges = canny(gray, params.canny_low, params.canny_high)

    circles: list[CircleDetection] = []
    if "Circle" in wanted:
        circles = hough_circles(
            gray,
            params.canny_low,
            params.canny_high,
            params.r_min,
            params.r_max,
            params.accumulator_threshold,
            params.min_center_distance,
        )

    closed = fill_components(dilate(edges, 3))
    polygons: list[PolyShape] = []
    for contour in find_contours(closed, params.min_area):
        if len(contour.points) < 4:
            continue
        eps = params.dp_epsilon_factor * contour.perimeter()
        verts = douglas_peucker(contour.points, eps, closed=True)
        if len(verts) < 3:
            continue
        verts = collapse_short_edges(verts)
        try:
            label = classify_polygon(verts, params.right_angle_cos_tol, params.square_ratio_tol)
        except ClassificationError:
            continue
        if label == "Other":
            cx, cy = contour.centroid()
            if any(math.hypot(cx - c.cx, cy - c.cy) <= c.r for c in circles):
                continue  # the circle's own contour
        polygons.append(PolyShape(label, tuple(verts), contour))

    kept_polygons = [p for p in polygons if p.label in wanted]
    strokes = []
    for c in circles:
        strokes.append(CircleStroke(c.cx, c.cy, c.r, (0, 255, 0), 1))
    for p in kept_polygons:
        strokes.append(PolygonStroke(tuple((float(x), float(y)) for x, y in p.vertices), (0, 255, 0), 1))
    annotated = annotate(image, Overlay(tuple(strokes)))
    return ShapeDetectionResult(circles, kept_polygons, annotated, params)
