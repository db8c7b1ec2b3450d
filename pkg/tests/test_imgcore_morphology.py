"""Morphology tests against a brute-force sliding-window oracle."""

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st
from hypothesis.extra.numpy import arrays

from objdetect.errors import ParameterError
from objdetect.imgcore import ImageKind, RasterImage, dilate, erode, morph, opening


def brute_erode(px: np.ndarray, size: int) -> np.ndarray:
    """1 iff every pixel under the centered size x size window is 1 (OOB = 0)."""
    h, w = px.shape
    r = size // 2
    out = np.zeros_like(px)
    for y in range(h):
        for x in range(w):
            ok = True
            for dy in range(-r, r + 1):
                for dx in range(-r, r + 1):
                    yy, xx = y + dy, x + dx
                    if not (0 <= yy < h and 0 <= xx < w and px[yy, xx]):
                        ok = False
                        break
                if not ok:
                    break
            out[y, x] = 1 if ok else 0
    return out


def brute_dilate(px: np.ndarray, size: int) -> np.ndarray:
    h, w = px.shape
    r = size // 2
    out = np.zeros_like(px)
    for y in range(h):
        for x in range(w):
            hit = False
            for dy in range(-r, r + 1):
                for dx in range(-r, r + 1):
                    yy, xx = y + dy, x + dx
                    if 0 <= yy < h and 0 <= xx < w and px[yy, xx]:
                        hit = True
                        break
                if hit:
                    break
            out[y, x] = 1 if hit else 0
    return out


def _mask(arr):
    return RasterImage(ImageKind.MASK1, arr)


mask_arrays = arrays(
    np.uint8, st.tuples(st.integers(1, 12), st.integers(1, 12)), elements=st.integers(0, 1)
)


class TestAgainstOracle:
    @settings(max_examples=40, deadline=None)
    @given(arr=mask_arrays, size=st.sampled_from([3, 5]))
    def test_erode_matches_brute_force(self, arr, size):
        np.testing.assert_array_equal(erode(_mask(arr), size).pixels, brute_erode(arr, size))

    @settings(max_examples=40, deadline=None)
    @given(arr=mask_arrays, size=st.sampled_from([3, 5]))
    def test_dilate_matches_brute_force(self, arr, size):
        np.testing.assert_array_equal(dilate(_mask(arr), size).pixels, brute_dilate(arr, size))


class TestProperties:
    @settings(max_examples=40, deadline=None)
    @given(arr=mask_arrays)
    def test_duality(self, arr):
        """Dilation is erosion of the complement (away from the border effect)."""
        # pad so the OOB=0 convention matches on both sides of the identity
        padded = np.pad(arr, 2)
        lhs = dilate(_mask(padded), 3).pixels
        rhs = 1 - brute_erode(1 - padded, 3)
        np.testing.assert_array_equal(lhs[2:-2, 2:-2], rhs[2:-2, 2:-2])

    @settings(max_examples=40, deadline=None)
    @given(arr=mask_arrays)
    def test_opening_idempotent_and_antiextensive(self, arr):
        m = _mask(arr)
        once = opening(m, 3)
        twice = opening(once, 3)
        np.testing.assert_array_equal(once.pixels, twice.pixels)
        assert (once.pixels <= arr).all()

    def test_speckle_removed_region_kept(self):
        arr = np.zeros((16, 16), dtype=np.uint8)
        arr[2, 2] = 1  # single-pixel speckle
        arr[6:14, 6:14] = 1
        out = opening(_mask(arr), 3).pixels
        assert out[2, 2] == 0
        assert out[7:13, 7:13].all()


class TestValidation:
    def test_even_or_small_kernel_rejected(self):
        m = _mask(np.zeros((4, 4), dtype=np.uint8))
        for bad in (1, 2, 4):
            with pytest.raises(ParameterError):
                erode(m, bad)

    def test_morph_dispatch(self):
        arr = np.ones((5, 5), dtype=np.uint8)
        np.testing.assert_array_equal(
            morph(_mask(arr), "erode", 3).pixels, erode(_mask(arr), 3).pixels
        )
        with pytest.raises(ParameterError):
            morph(_mask(arr), "open", 3)
