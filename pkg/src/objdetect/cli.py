"""Command-line front end: one subcommand per detection pipeline."""

from __future__ import annotations

import argparse
import os
import sys

from .colordetect import ColorParams, detect_color_objects, load_color_table
from .errors import ObjdetectError
from .features import GoodMatchPolicy, MatchParams, detect_object
from .imgcore import ImageKind, load_image, save_image
from .resultjson import write_result_json
from .shapes import SHAPE_LABELS, ShapeParams, detect_shapes

EXIT_OK = 0
EXIT_USAGE = 2
EXIT_PROCESSING = 3
EXIT_NOT_FOUND = 4


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="objdetect",
        description="Detect objects in images by color, shape, or local features.",
    )
    sub = parser.add_subparsers(dest="subcommand", required=True)

    color = sub.add_parser("color", help="detect regions matching named color ranges")
    color.add_argument("--image", required=True, help="input image (PPM/PGM/PNG)")
    color.add_argument("--colors", required=True, help="comma-separated color names")
    color.add_argument("--table", help="JSON color-table file (default: built-in table)")
    color.add_argument("--out", help="annotated output image path")
    color.add_argument("--json", dest="json_path", help="result JSON path")
    color.add_argument("--min-area", type=float, help="minimum region area in pixels")
    color.add_argument("--sigma", type=float, help="Gaussian blur sigma")

    shape = sub.add_parser("shape", help="detect circles and polygonal shapes")
    shape.add_argument("--image", required=True, help="input image (PPM/PGM/PNG)")
    shape.add_argument("--shapes", required=True, help="comma-separated shape names")
    shape.add_argument("--out", help="annotated output image path")
    shape.add_argument("--json", dest="json_path", help="result JSON path")
    shape.add_argument("--dp-eps", type=float, help="polygon simplification epsilon factor")
    shape.add_argument("--r-min", type=int, help="minimum circle radius")
    shape.add_argument("--r-max", type=int, help="maximum circle radius")

    match = sub.add_parser("match", help="locate an object image inside a scene image")
    match.add_argument("--object", required=True, dest="object_path", help="object image")
    match.add_argument("--scene", required=True, dest="scene_path", help="scene image")
    match.add_argument("--out", help="annotated output image path")
    match.add_argument("--json", dest="json_path", help="result JSON path")
    match.add_argument("--threshold", type=int, help="keypoint detection threshold")
    match.add_argument("--max-good", type=int, help="cap on retained good matches")
    match.add_argument("--seed", type=int, help="random seed for model estimation")
    return parser


def _require_output(parser: argparse.ArgumentParser, args: argparse.Namespace) -> None:
    if args.out is None and args.json_path is None:
        parser.error(f"{args.subcommand}: at least one of --out or --json is required")


def _load_rgb(path: str):
    image = load_image(path)
    if image.kind is ImageKind.GRAY8:
        from .imgcore import gray_to_rgb

        image = gray_to_rgb(image)
    return image.require_kind(ImageKind.RGB8)


def _resolve_table(table_path: str | None):
    if table_path is None:
        table_path = os.environ.get("OBJDETECT_TABLE")
    if table_path is None:
        return None
    return load_color_table(table_path)


def _run_color(args: argparse.Namespace) -> int:
    image = _load_rgb(args.image)
    names = [n for n in (s.strip() for s in args.colors.split(",")) if n]
    if not names:
        raise ObjdetectError("--colors must name at least one color")
    kwargs = {}
    if args.min_area is not None:
        kwargs["min_area"] = args.min_area
    if args.sigma is not None:
        kwargs["sigma"] = args.sigma
    params = ColorParams(table=_resolve_table(args.table), **kwargs)
    result = detect_color_objects(image, names, params)
    if args.out:
        save_image(result.annotated, args.out)
    if args.json_path:
        write_result_json(result, args.json_path)
    return EXIT_OK


def _canonical_shapes(raw: str) -> list[str]:
    by_lower = {label.lower(): label for label in SHAPE_LABELS}
    names = []
    for token in (s.strip() for s in raw.split(",")):
        if not token:
            continue
        label = by_lower.get(token.lower())
        if label is None:
            valid = ", ".join(SHAPE_LABELS)
            raise ObjdetectError(f"unknown shape {token!r}; valid shapes: {valid}")
        names.append(label)
    if not names:
        raise ObjdetectError("--shapes must name at least one shape")
    return names


def _run_shape(args: argparse.Namespace) -> int:
    image = _load_rgb(args.image)
    names = _canonical_shapes(args.shapes)
    kwargs = {}
    if args.dp_eps is not None:
        kwargs["dp_epsilon_factor"] = args.dp_eps
    if args.r_min is not None:
        kwargs["r_min"] = args.r_min
    if args.r_max is not None:
        kwargs["r_max"] = args.r_max
    result = detect_shapes(image, names, ShapeParams(**kwargs))
    if args.out:
        save_image(result.annotated, args.out)
    if args.json_path:
        write_result_json(result, args.json_path)
    return EXIT_OK


def _run_match(args: argparse.Namespace) -> int:
    obj = _load_rgb(args.object_path)
    scene = _load_rgb(args.scene_path)
    kwargs = {}
    if args.threshold is not None:
        kwargs["threshold"] = args.threshold
    if args.max_good is not None:
        kwargs["policy"] = GoodMatchPolicy(max_good=args.max_good)
    if args.seed is not None:
        kwargs["seed"] = args.seed
    result = detect_object(obj, scene, MatchParams(**kwargs))
    if args.out:
        save_image(result.annotated, args.out)
    if args.json_path:
        write_result_json(result, args.json_path)
    return EXIT_OK if result.found else EXIT_NOT_FOUND


_RUNNERS = {"color": _run_color, "shape": _run_shape, "match": _run_match}


def run_cli(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    _require_output(parser, args)
    try:
        return _RUNNERS[args.subcommand](args)
    except ObjdetectError as exc:
        print(f"objdetect {args.subcommand}: error: {exc}", file=sys.stderr)
        return EXIT_PROCESSING
    except OSError as exc:
        print(f"objdetect {args.subcommand}: error: {exc}", file=sys.stderr)
        return EXIT_PROCESSING


def main() -> None:
    sys.exit(run_cli())


if __name__ == "__main__":
    main()
