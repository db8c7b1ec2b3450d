"""End-to-end object localization by local-feature matching."""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from ..errors import EstimationError, PointAtInfinityError
from ..imgcore import (
    ImageKind,
    LineSegment,
    Overlay,
    PolygonStroke,
    RasterImage,
    annotate,
    rgb_to_gray,
)
from .brisk import BinaryDescriptor, Keypoint, brisk_describe, brisk_detect
from .homography import Homography, find_homography, perspective_transform
from .matching import FeatureMatch, GoodMatchPolicy, filter_good_matches, match_descriptors

GREEN = (0, 255, 0)

REASONS = (
    "too_few_keypoints",
    "too_few_good_matches",
    "homography_failed",
    "too_few_inliers",
    "degenerate_polygon",
)


def _is_sane_quad(polygon, min_area: float) -> bool:
    """True for a convex, consistently-wound quad of non-trivial area.

    Chance agreements among random matches produce twisted or collapsed
    quads; a real planar object projects to a convex one.
    """
    pts = np.asarray(polygon, dtype=np.float64)
    crosses = []
    for i in range(4):
        a = pts[(i + 1) % 4] - pts[i]
        b = pts[(i + 2) % 4] - pts[(i + 1) % 4]
        crosses.append(a[0] * b[1] - a[1] * b[0])
    if not (all(c > 0 for c in crosses) or all(c < 0 for c in crosses)):
        return False
    x, y = pts[:, 0], pts[:, 1]
    area = abs(np.dot(x, np.roll(y, -1)) - np.dot(y, np.roll(x, -1))) / 2.0
    return area >= min_area


@dataclass(frozen=True)
class MatchParams:
    threshold: int = 30
    octaves: int = 3
    policy: GoodMatchPolicy = field(default_factory=GoodMatchPolicy)
    reproj_threshold: float = 3.0
    max_iterations: int = 2000
    confidence: float = 0.995
    min_inliers: int = 10
    seed: int | None = 0


@dataclass(frozen=True)
class ObjectMatchResult:
    found: bool
    reason: str | None
    matches: list[FeatureMatch]
    homography: Homography | None
    polygon: list[tuple[float, float]] | None
    annotated: RasterImage


def _side_by_side(left: RasterImage, right: RasterImage) -> RasterImage:
    h = max(left.height, right.height)
    w = left.width + right.width
    canvas = np.zeros((h, w, 3), dtype=np.uint8)
    canvas[: left.height, : left.width] = left.pixels
    canvas[: right.height, left.width :] = right.pixels
    return RasterImage(ImageKind.RGB8, canvas)


def detect_object(
    object_img: RasterImage,
    scene_img: RasterImage,
    params: MatchParams | None = None,
) -> ObjectMatchResult:
    """Locate `object_img` inside `scene_img` via BRISK matches.

    Never raises for an absent object: `found` is False with a reason code
    from REASONS instead.
    """
    object_img.require_kind(ImageKind.RGB8)
    scene_img.require_kind(ImageKind.RGB8)
    params = params or MatchParams()

    obj_gray = rgb_to_gray(object_img)
    scene_gray = rgb_to_gray(scene_img)
    obj_pairs = brisk_describe(obj_gray, brisk_detect(obj_gray, params.threshold, params.octaves))
    scene_pairs = brisk_describe(
        scene_gray, brisk_detect(scene_gray, params.threshold, params.octaves)
    )

    base = _side_by_side(object_img, scene_img)

    def not_found(reason: str, matches: list[FeatureMatch], strokes=()) -> ObjectMatchResult:
        return ObjectMatchResult(False, reason, matches, None, None, annotate(base, Overlay(tuple(strokes))))

    if len(obj_pairs) < 4 or len(scene_pairs) < 4:
        return not_found("too_few_keypoints", [])

    obj_kps = [kp for kp, _ in obj_pairs]
    scene_kps = [kp for kp, _ in scene_pairs]
    matches = match_descriptors([d for _, d in obj_pairs], [d for _, d in scene_pairs])
    good = filter_good_matches(matches, params.policy)

    def match_lines(ms):
        lines = []
        for m in ms:
            a = obj_kps[m.object_index]
            b = scene_kps[m.scene_index]
            lines.append(
                LineSegment((a.x, a.y), (b.x + object_img.width, b.y), GREEN, 1)
            )
        return lines

    if len(good) < 4:
        return not_found("too_few_good_matches", good, match_lines(good))

    pairs = [
        ((obj_kps[m.object_index].x, obj_kps[m.object_index].y),
         (scene_kps[m.scene_index].x, scene_kps[m.scene_index].y))
        for m in good
    ]
    try:
        hom, inliers = find_homography(
            pairs, params.reproj_threshold, params.max_iterations, params.confidence, params.seed
        )
    except EstimationError:
        return not_found("homography_failed", good, match_lines(good))
    if int(inliers.sum()) < params.min_inliers:
        return not_found("too_few_inliers", good, match_lines(good))

    w, h = object_img.width, object_img.height
    corners = [(0.0, 0.0), (w - 1.0, 0.0), (w - 1.0, h - 1.0), (0.0, h - 1.0)]
    try:
        polygon = perspective_transform(corners, hom)
    except PointAtInfinityError:
        return not_found("degenerate_polygon", good, match_lines(good))
    if not _is_sane_quad(polygon, min_area=0.02 * (w - 1.0) * (h - 1.0)):
        return not_found("degenerate_polygon", good, match_lines(good))

    strokes = match_lines(good)
    strokes.append(
        PolygonStroke(tuple((x + object_img.width, y) for x, y in polygon), GREEN, 2)
    )
    annotated = annotate(base, Overlay(tuple(strokes)))
    return ObjectMatchResult(True, None, good, hom, polygon, annotated)


def dump_descriptors(pairs: list[tuple[Keypoint, BinaryDescriptor]]) -> str:
    """One line per keypoint: x y scale orientation score hex(64 bytes)."""
    lines = []
    for kp, desc in pairs:
        lines.append(
            f"{kp.x:.6f} {kp.y:.6f} {kp.scale:.6f} {kp.orientation:.6f} "
            f"{kp.score:.6f} {desc.bits.hex()}"
        )
    return "\n".join(lines) + ("\n" if lines else "")
