"""HTTP facade over the three detection pipelines."""

from __future__ import annotations

import argparse
import os
import secrets
import threading
import time
from collections import OrderedDict
from concurrent.futures import ThreadPoolExecutor
from concurrent.futures import TimeoutError as FutureTimeoutError
from dataclasses import dataclass

from fastapi import FastAPI, Request, Response, UploadFile
from fastapi.exceptions import RequestValidationError
from fastapi.middleware.cors import CORSMiddleware
from fastapi.responses import JSONResponse
from fastapi.staticfiles import StaticFiles
from pydantic import BaseModel, Field

from .colordetect import ColorParams, default_color_table, detect_color_objects, load_color_table
from .errors import DecodeError, ObjdetectError, ParameterError, UnknownColorError
from .features import GoodMatchPolicy, MatchParams, detect_object
from .imgcore import ImageKind, RasterImage, decode_image, encode_png, gray_to_rgb
from .resultjson import _stable, result_document
from .shapes import SHAPE_LABELS, ShapeParams, detect_shapes

DEFAULT_UPLOAD_LIMIT = 20 * 1024 * 1024
DEFAULT_CAPACITY = 64
DEFAULT_DEADLINE = 30.0


@dataclass(frozen=True)
class StoredImage:
    id: str
    pixels: RasterImage
    uploaded_at: float
    byte_size: int


class ImageStore:
    """Thread-safe in-memory image store with LRU eviction.

    Images fetched through :meth:`get` are returned as immutable snapshots,
    so eviction can never invalidate data held by an in-flight request.
    """

    def __init__(self, capacity: int = DEFAULT_CAPACITY):
        if capacity < 1:
            raise ParameterError("store capacity must be >= 1")
        self.capacity = capacity
        self._items: OrderedDict[str, StoredImage] = OrderedDict()
        self._lock = threading.Lock()

    def put(self, pixels: RasterImage, byte_size: int = 0) -> StoredImage:
        item = StoredImage(
            id=secrets.token_urlsafe(12),
            pixels=pixels,
            uploaded_at=time.time(),
            byte_size=byte_size,
        )
        with self._lock:
            self._items[item.id] = item
            while len(self._items) > self.capacity:
                self._items.popitem(last=False)
        return item

    def get(self, image_id: str) -> StoredImage | None:
        with self._lock:
            item = self._items.get(image_id)
            if item is not None:
                self._items.move_to_end(image_id)
            return item

    def delete(self, image_id: str) -> bool:
        with self._lock:
            return self._items.pop(image_id, None) is not None

    def __len__(self) -> int:
        with self._lock:
            return len(self._items)


class ColorRequest(BaseModel):
    image_id: str
    colors: list[str] = Field(min_length=1)
    params: dict[str, float] = Field(default_factory=dict)


class ShapeRequest(BaseModel):
    image_id: str
    shapes: list[str] = Field(min_length=1)
    params: dict[str, float] = Field(default_factory=dict)


class MatchRequest(BaseModel):
    object_id: str
    scene_id: str
    params: dict[str, float] = Field(default_factory=dict)
    seed: int = 0


_COLOR_PARAM_KEYS = {"sigma", "se_size", "min_area"}
_SHAPE_PARAM_KEYS = {
    "sigma",
    "canny_low",
    "canny_high",
    "r_min",
    "r_max",
    "min_area",
    "dp_epsilon_factor",
}
_MATCH_PARAM_KEYS = {"threshold", "octaves", "max_good", "reproj_threshold", "min_inliers"}
_INT_PARAM_KEYS = {"se_size", "r_min", "r_max", "threshold", "octaves", "max_good", "min_inliers"}


def _checked_params(raw: dict[str, float], allowed: set[str]) -> dict:
    unknown = sorted(set(raw) - allowed)
    if unknown:
        raise ParameterError(
            f"unknown parameter(s): {', '.join(unknown)}; allowed: {', '.join(sorted(allowed))}"
        )
    return {k: (int(v) if k in _INT_PARAM_KEYS else float(v)) for k, v in raw.items()}


def create_app(
    *,
    table_path: str | None = None,
    upload_limit: int = DEFAULT_UPLOAD_LIMIT,
    capacity: int = DEFAULT_CAPACITY,
    deadline: float = DEFAULT_DEADLINE,
    frontend_dir: str | None = None,
) -> FastAPI:
    table = load_color_table(table_path) if table_path else default_color_table()
    store = ImageStore(capacity)
    executor = ThreadPoolExecutor(max_workers=4)

    app = FastAPI(title="objdetect", version="1")
    app.add_middleware(
        CORSMiddleware,
        allow_origins=["*"],
        allow_methods=["*"],
        allow_headers=["*"],
    )
    app.state.store = store
    app.state.upload_limit = upload_limit
    app.state.deadline = deadline

    @app.exception_handler(RequestValidationError)
    async def _validation_handler(request: Request, exc: RequestValidationError):
        errors = [
            {"field": ".".join(str(p) for p in err["loc"] if p != "body"), "message": err["msg"]}
            for err in exc.errors()
        ]
        return JSONResponse(status_code=400, content={"detail": errors})

    def _error(status: int, message: str) -> JSONResponse:
        return JSONResponse(status_code=status, content={"detail": message})

    def _fetch(image_id: str) -> RasterImage | None:
        item = store.get(image_id)
        return None if item is None else item.pixels

    def _run_with_deadline(fn, *args):
        future = executor.submit(fn, *args)
        try:
            return future.result(timeout=deadline)
        except FutureTimeoutError:
            future.cancel()
            raise

    @app.post("/api/images", status_code=201)
    async def upload_image(file: UploadFile):
        data = await file.read()
        if len(data) > upload_limit:
            return _error(413, f"upload exceeds limit of {upload_limit} bytes")
        try:
            image = decode_image(data)
        except DecodeError as exc:
            return _error(400, str(exc))
        if image.kind is ImageKind.GRAY8:
            image = gray_to_rgb(image)
        item = store.put(image, byte_size=len(data))
        return {"id": item.id, "width": image.width, "height": image.height}

    @app.get("/api/colors")
    def list_colors():
        return {
            "colors": [{"name": r.name, "highlight": list(r.highlight)} for r in table]
        }

    @app.post("/api/detect/color")
    def detect_color(req: ColorRequest):
        image = _fetch(req.image_id)
        if image is None:
            return _error(404, f"unknown image id {req.image_id!r}")
        try:
            kwargs = _checked_params(req.params, _COLOR_PARAM_KEYS)
            params = ColorParams(table=table, **kwargs)
            result = _run_with_deadline(detect_color_objects, image, req.colors, params)
        except (UnknownColorError, ParameterError) as exc:
            return _error(400, str(exc))
        except FutureTimeoutError:
            return _error(503, "detection exceeded the request deadline")
        except ObjdetectError as exc:
            return _error(500, str(exc))
        annotated = store.put(result.annotated)
        doc = _stable(result_document(result))
        doc["annotated_image_id"] = annotated.id
        return doc

    @app.post("/api/detect/shape")
    def detect_shape(req: ShapeRequest):
        image = _fetch(req.image_id)
        if image is None:
            return _error(404, f"unknown image id {req.image_id!r}")
        by_lower = {label.lower(): label for label in SHAPE_LABELS}
        names = []
        for token in req.shapes:
            label = by_lower.get(token.lower())
            if label is None:
                return _error(
                    400, f"unknown shape {token!r}; valid shapes: {', '.join(SHAPE_LABELS)}"
                )
            names.append(label)
        try:
            kwargs = _checked_params(req.params, _SHAPE_PARAM_KEYS)
            result = _run_with_deadline(detect_shapes, image, names, ShapeParams(**kwargs))
        except ParameterError as exc:
            return _error(400, str(exc))
        except FutureTimeoutError:
            return _error(503, "detection exceeded the request deadline")
        except ObjdetectError as exc:
            return _error(500, str(exc))
        annotated = store.put(result.annotated)
        doc = _stable(result_document(result))
        doc["annotated_image_id"] = annotated.id
        return doc

    @app.post("/api/match")
    def match(req: MatchRequest):
        obj = _fetch(req.object_id)
        if obj is None:
            return _error(404, f"unknown image id {req.object_id!r}")
        scene = _fetch(req.scene_id)
        if scene is None:
            return _error(404, f"unknown image id {req.scene_id!r}")
        try:
            kwargs = _checked_params(req.params, _MATCH_PARAM_KEYS)
            max_good = kwargs.pop("max_good", None)
            if max_good is not None:
                kwargs["policy"] = GoodMatchPolicy(max_good=max_good)
            params = MatchParams(seed=req.seed, **kwargs)
            result = _run_with_deadline(detect_object, obj, scene, params)
        except ParameterError as exc:
            return _error(400, str(exc))
        except FutureTimeoutError:
            return _error(503, "matching exceeded the request deadline")
        except ObjdetectError as exc:
            return _error(500, str(exc))
        annotated = store.put(result.annotated)
        doc = _stable(result_document(result))
        doc["annotated_image_id"] = annotated.id
        return doc

    @app.get("/api/images/{image_id}")
    def get_image(image_id: str):
        image = _fetch(image_id)
        if image is None:
            return _error(404, f"unknown image id {image_id!r}")
        if image.kind is not ImageKind.RGB8:
            image = gray_to_rgb(image)
        return Response(content=encode_png(image), media_type="image/png")

    @app.delete("/api/images/{image_id}", status_code=204)
    def delete_image(image_id: str):
        if not store.delete(image_id):
            return _error(404, f"unknown image id {image_id!r}")
        return Response(status_code=204)

    if frontend_dir and os.path.isdir(frontend_dir):
        app.mount("/", StaticFiles(directory=frontend_dir, html=True), name="frontend")

    return app


def _default_frontend_dir() -> str | None:
    candidate = os.path.join(os.path.dirname(os.path.dirname(os.path.dirname(__file__))),
                             "frontend", "dist")
    if os.path.isdir(candidate):
        return candidate
    candidate = os.path.join(os.getcwd(), "frontend", "dist")
    return candidate if os.path.isdir(candidate) else None


def main() -> None:
    parser = argparse.ArgumentParser(prog="objdetect-serve", description="Run the detection service.")
    parser.add_argument("--host", default=os.environ.get("OBJDETECT_HOST", "127.0.0.1"))
    parser.add_argument("--port", type=int, default=int(os.environ.get("OBJDETECT_PORT", "8000")))
    parser.add_argument(
        "--upload-limit", type=int,
        default=int(os.environ.get("OBJDETECT_UPLOAD_LIMIT", str(DEFAULT_UPLOAD_LIMIT))),
    )
    parser.add_argument(
        "--capacity", type=int,
        default=int(os.environ.get("OBJDETECT_CAPACITY", str(DEFAULT_CAPACITY))),
    )
    parser.add_argument("--table", default=os.environ.get("OBJDETECT_TABLE"))
    parser.add_argument("--deadline", type=float, default=DEFAULT_DEADLINE)
    parser.add_argument("--frontend", default=_default_frontend_dir())
    args = parser.parse_args()

    import uvicorn

    app = create_app(
        table_path=args.table,
        upload_limit=args.upload_limit,
        capacity=args.capacity,
        deadline=args.deadline,
        frontend_dir=args.frontend,
    )
    uvicorn.run(app, host=args.host, port=args.port)


if __name__ == "__main__":
    main()
