"""Netpbm/PNG codec tests, including round-trip properties."""

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st
from hypothesis.extra.numpy import arrays

from objdetect.errors import DecodeError
from objdetect.imgcore import (
    ImageKind,
    RasterImage,
    decode_image,
    decode_netpbm,
    decode_png,
    encode_netpbm,
    encode_png,
    load_image,
    save_image,
)


def _rgb(arr):
    return RasterImage(ImageKind.RGB8, arr)


class TestNetpbm:
    def test_p6_roundtrip(self):
        arr = np.arange(2 * 3 * 3, dtype=np.uint8).reshape(2, 3, 3)
        out = decode_netpbm(encode_netpbm(_rgb(arr)))
        assert out.kind is ImageKind.RGB8
        np.testing.assert_array_equal(out.pixels, arr)

    def test_p5_roundtrip(self):
        arr = np.arange(12, dtype=np.uint8).reshape(3, 4)
        out = decode_netpbm(encode_netpbm(RasterImage(ImageKind.GRAY8, arr)))
        assert out.kind is ImageKind.GRAY8
        np.testing.assert_array_equal(out.pixels, arr)

    def test_comments_in_header(self):
        data = b"P5\n# a comment\n2 2\n# another\n255\n\x01\x02\x03\x04"
        out = decode_netpbm(data)
        np.testing.assert_array_equal(out.pixels, [[1, 2], [3, 4]])

    def test_truncated_payload_reports_offset(self):
        data = b"P5\n2 2\n255\n\x01\x02"
        with pytest.raises(DecodeError) as exc:
            decode_netpbm(data)
        # offset points at the end of what was actually available
        assert exc.value.offset == len(data)

    def test_bad_magic(self):
        with pytest.raises(DecodeError) as exc:
            decode_netpbm(b"P3\n1 1\n255\n...")
        assert exc.value.offset == 0

    def test_bad_maxval(self):
        with pytest.raises(DecodeError):
            decode_netpbm(b"P5\n1 1\n65535\n\x00\x00")

    def test_bad_token(self):
        with pytest.raises(DecodeError):
            decode_netpbm(b"P5\nxx 2\n255\n\x00\x00")

    @settings(max_examples=25, deadline=None)
    @given(
        arr=arrays(
            np.uint8,
            st.tuples(st.integers(1, 8), st.integers(1, 8), st.just(3)),
        )
    )
    def test_roundtrip_property(self, arr):
        out = decode_netpbm(encode_netpbm(_rgb(arr)))
        np.testing.assert_array_equal(out.pixels, arr)


class TestPng:
    def test_rgb_roundtrip(self):
        arr = np.random.default_rng(0).integers(0, 256, (5, 7, 3), dtype=np.uint8)
        out = decode_png(encode_png(_rgb(arr)))
        np.testing.assert_array_equal(out.pixels, arr)

    def test_gray_roundtrip(self):
        arr = np.random.default_rng(1).integers(0, 256, (4, 4), dtype=np.uint8)
        out = decode_png(encode_png(RasterImage(ImageKind.GRAY8, arr)))
        assert out.kind is ImageKind.GRAY8
        np.testing.assert_array_equal(out.pixels, arr)

    def test_garbage_raises(self):
        with pytest.raises(DecodeError):
            decode_png(b"\x89PNG\r\n\x1a\nnot a real png")


class TestSniffAndFiles:
    def test_decode_image_dispatch(self):
        arr = np.zeros((2, 2, 3), dtype=np.uint8)
        assert decode_image(encode_netpbm(_rgb(arr))).kind is ImageKind.RGB8
        assert decode_image(encode_png(_rgb(arr))).kind is ImageKind.RGB8
        with pytest.raises(DecodeError):
            decode_image(b"GIF89a...")

    def test_save_load(self, tmp_path):
        arr = np.arange(27, dtype=np.uint8).reshape(3, 3, 3)
        for name in ("a.ppm", "a.png"):
            path = tmp_path / name
            save_image(_rgb(arr), path)
            np.testing.assert_array_equal(load_image(path).pixels, arr)
