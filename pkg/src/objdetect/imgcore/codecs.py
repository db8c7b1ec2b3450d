"""Image decoding/encoding: PPM (P6), PGM (P5), and PNG.

PPM/PGM round-trips are bit-exact; PNG is a convenience codec backed by
Pillow.
"""

from __future__ import annotations

import io
import os

import numpy as np
from PIL import Image as PILImage

from ..errors import DecodeError, ImageKindError
from .raster import ImageKind, RasterImage

_MAGIC_KINDS = {b"P6": ImageKind.RGB8, b"P5": ImageKind.GRAY8}


def _read_netpbm_tokens(data: bytes, count: int) -> tuple[list[int], int]:
    """Read `count` whitespace/comment-separated integers after the magic."""
    tokens: list[int] = []
    pos = 2
    n = len(data)
    while len(tokens) < count:
        while pos < n and data[pos : pos + 1].isspace():
            pos += 1
        if pos < n and data[pos : pos + 1] == b"#":
            while pos < n and data[pos] not in (0x0A, 0x0D):
                pos += 1
            continue
        start = pos
        while pos < n and not data[pos : pos + 1].isspace():
            pos += 1
        if start == pos:
            raise DecodeError("truncated netpbm header", start)
        try:
            tokens.append(int(data[start:pos]))
        except ValueError:
            raise DecodeError(f"bad netpbm header token {data[start:pos]!r}", start) from None
    if pos >= n:
        raise DecodeError("missing pixel data", pos)
    return tokens, pos + 1  # single whitespace byte terminates the header


def decode_netpbm(data: bytes) -> RasterImage:
    magic = data[:2]
    if magic not in _MAGIC_KINDS:
        raise DecodeError(f"unsupported netpbm magic {magic!r}", 0)
    kind = _MAGIC_KINDS[magic]
    (width, height, maxval), pos = _read_netpbm_tokens(data, 3)
    if width < 1 or height < 1:
        raise DecodeError(f"invalid dimensions {width}x{height}", 2)
    if maxval != 255:
        raise DecodeError(f"only maxval 255 supported, got {maxval}", 2)
    nbytes = width * height * kind.channels
    payload = data[pos : pos + nbytes]
    if len(payload) < nbytes:
        raise DecodeError(
            f"pixel payload truncated: expected {nbytes} bytes, got {len(payload)}",
            pos + len(payload),
        )
    shape = (height, width, 3) if kind.channels == 3 else (height, width)
    return RasterImage(kind, np.frombuffer(payload, dtype=np.uint8).reshape(shape))


def encode_netpbm(image: RasterImage) -> bytes:
    image.require_kind(ImageKind.RGB8, ImageKind.GRAY8)
    magic = b"P6" if image.kind is ImageKind.RGB8 else b"P5"
    header = b"%s\n%d %d\n255\n" % (magic, image.width, image.height)
    return header + image.pixels.tobytes()


def decode_png(data: bytes) -> RasterImage:
    try:
        with PILImage.open(io.BytesIO(data)) as im:
            if im.mode in ("L",):
                return RasterImage(ImageKind.GRAY8, np.asarray(im, dtype=np.uint8))
            rgb = im.convert("RGB")
            return RasterImage(ImageKind.RGB8, np.asarray(rgb, dtype=np.uint8))
    except Exception as exc:
        raise DecodeError(f"PNG decode failed: {exc}", 0) from exc


def encode_png(image: RasterImage) -> bytes:
    image.require_kind(ImageKind.RGB8, ImageKind.GRAY8)
    mode = "RGB" if image.kind is ImageKind.RGB8 else "L"
    buf = io.BytesIO()
    PILImage.fromarray(image.pixels, mode=mode).save(buf, format="PNG")
    return buf.getvalue()


def decode_image(data: bytes) -> RasterImage:
    """Decode by sniffing the magic bytes (PPM, PGM, or PNG)."""
    if data[:2] in _MAGIC_KINDS:
        return decode_netpbm(data)
    if data[:8] == b"\x89PNG\r\n\x1a\n":
        return decode_png(data)
    raise DecodeError("unrecognized image format", 0)


def load_image(path: str | os.PathLike) -> RasterImage:
    with open(path, "rb") as fh:
        return decode_image(fh.read())


def save_image(image: RasterImage, path: str | os.PathLike) -> None:
    ext = os.path.splitext(os.fspath(path))[1].lower()
    if ext in (".ppm", ".pgm"):
        data = encode_netpbm(image)
    elif ext == ".png":
        data = encode_png(image)
    else:
        raise ImageKindError(f"unsupported output extension {ext!r}")
    with open(path, "wb") as fh:
        fh.write(data)
