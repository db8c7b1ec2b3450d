"""Schema-versioned, byte-stable JSON serialization of pipeline results."""

from __future__ import annotations

import json
import os
from dataclasses import asdict

from .colordetect import ColorDetectionResult
from .errors import ObjdetectError
from .features.pipeline import ObjectMatchResult
from .shapes import ShapeDetectionResult

SCHEMA_VERSION = 1


def _stable(value):
    """Round floats to 6 decimals (normalizing -0.0) for stable output."""
    if isinstance(value, bool):
        return value
    if isinstance(value, float):
        r = round(value, 6)
        return 0.0 if r == 0 else r
    if isinstance(value, dict):
        return {str(k): _stable(v) for k, v in value.items()}
    if isinstance(value, (list, tuple)):
        return [_stable(v) for v in value]
    return value


def color_result_document(result: ColorDetectionResult) -> dict:
    colors = []
    for name, contours in result.regions.items():
        colors.append(
            {
                "name": name,
                "pixel_count": result.pixel_counts[name],
                "regions": [
                    {
                        "bbox": list(c.bounding_box()),
                        "area": c.area(),
                        "centroid": list(c.centroid()),
                        "num_points": len(c.points),
                    }
                    for c in contours
                ],
            }
        )
    return {
        "schema_version": SCHEMA_VERSION,
        "pipeline": "color",
        "params": {
            "sigma": result.params.sigma,
            "se_size": result.params.se_size,
            "min_area": result.params.min_area,
        },
        "colors": colors,
    }


def shape_result_document(result: ShapeDetectionResult) -> dict:
    detections = []
    for c in result.circles:
        detections.append({"type": "circle", "cx": c.cx, "cy": c.cy, "r": c.r, "votes": c.votes})
    for p in result.polygons:
        detections.append(
            {
                "type": "polygon",
                "label": p.label,
                "vertices": [[float(x), float(y)] for x, y in p.vertices],
            }
        )
    prm = result.params
    return {
        "schema_version": SCHEMA_VERSION,
        "pipeline": "shape",
        "params": {
            "sigma": prm.sigma,
            "canny_low": prm.canny_low,
            "canny_high": prm.canny_high,
            "r_min": prm.r_min,
            "r_max": prm.r_max,
            "min_area": prm.min_area,
            "dp_epsilon_factor": prm.dp_epsilon_factor,
            "right_angle_cos_tol": prm.right_angle_cos_tol,
            "square_ratio_tol": prm.square_ratio_tol,
        },
        "detections": detections,
    }


def match_result_document(result: ObjectMatchResult) -> dict:
    doc = {
        "schema_version": SCHEMA_VERSION,
        "pipeline": "match",
        "found": result.found,
        "reason": result.reason,
        "num_matches": len(result.matches),
        "matches": [asdict(m) for m in result.matches],
        "homography": None,
        "polygon": None,
    }
    if result.homography is not None:
        doc["homography"] = [[float(v) for v in row] for row in result.homography.matrix]
    if result.polygon is not None:
        doc["polygon"] = [[float(x), float(y)] for x, y in result.polygon]
    return doc


def result_document(result) -> dict:
    if isinstance(result, ColorDetectionResult):
        return color_result_document(result)
    if isinstance(result, ShapeDetectionResult):
        return shape_result_document(result)
    if isinstance(result, ObjectMatchResult):
        return match_result_document(result)
    raise TypeError(f"no JSON mapping for {type(result).__name__}")


def dumps_result(result) -> str:
    return json.dumps(_stable(result_document(result)), sort_keys=True, indent=2) + "\n"


def write_result_json(result, path: str | os.PathLike) -> None:
    """Write the result document; identical inputs yield identical bytes."""
    try:
        with open(path, "w", encoding="utf-8") as fh:
            fh.write(dumps_result(result))
    except OSError as exc:
        raise ObjdetectError(f"cannot write result JSON to {path}: {exc}") from exc
