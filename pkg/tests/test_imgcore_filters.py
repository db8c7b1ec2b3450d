"""Gaussian blur and Canny tests with independently computed expectations."""

import math

import numpy as np
import pytest

from objdetect.errors import ParameterError
from objdetect.imgcore import (
    ImageKind,
    RasterImage,
    canny,
    edge_magnitude,
    gaussian_blur,
    gaussian_kernel,
    sobel_gradients,
)
from tests.conftest import gray_image


class TestGaussianKernel:
    def test_matches_sampled_formula(self):
        sigma = 1.5
        radius = math.ceil(3 * sigma)
        raw = [math.exp(-(x * x) / (2 * sigma * sigma)) for x in range(-radius, radius + 1)]
        expected = np.array(raw) / sum(raw)
        np.testing.assert_allclose(gaussian_kernel(sigma), expected, rtol=1e-12)

    def test_unit_sum_and_symmetry(self):
        for sigma in (0.5, 1.0, 2.3, 5.0):
            k = gaussian_kernel(sigma)
            assert len(k) == 2 * math.ceil(3 * sigma) + 1
            assert k.sum() == pytest.approx(1.0)
            np.testing.assert_allclose(k, k[::-1])

    def test_invalid_sigma(self):
        with pytest.raises(ParameterError):
            gaussian_kernel(0.0)
        with pytest.raises(ParameterError):
            gaussian_kernel(-1.0)


class TestGaussianBlur:
    def test_constant_image_unchanged(self):
        img = gray_image(np.full((10, 10), 77))
        out = gaussian_blur(img, 2.0)
        assert (out.pixels == 77).all()

    def test_separable_equals_direct_2d(self):
        """Blur must equal a direct 2-D convolution with the outer-product kernel."""
        rng = np.random.default_rng(7)
        arr = rng.integers(0, 256, (12, 12), dtype=np.uint8)
        sigma = 1.0
        k = gaussian_kernel(sigma)
        radius = len(k) // 2
        padded = np.pad(arr.astype(np.float64), radius, mode="edge")
        k2 = np.outer(k, k)
        expected = np.empty((12, 12))
        for y in range(12):
            for x in range(12):
                expected[y, x] = (padded[y : y + len(k), x : x + len(k)] * k2).sum()
        expected = np.floor(expected + 0.5).astype(np.uint8)
        out = gaussian_blur(gray_image(arr), sigma)
        np.testing.assert_array_equal(out.pixels, expected)

    def test_preserves_kind(self):
        rgb = RasterImage(ImageKind.RGB8, np.zeros((4, 4, 3), dtype=np.uint8))
        assert gaussian_blur(rgb, 1.0).kind is ImageKind.RGB8


class TestSobel:
    def test_horizontal_ramp(self):
        # intensity x*10: gx should be 8*slope in the interior, gy zero
        arr = np.tile(np.arange(8) * 10, (8, 1)).astype(np.uint8)
        gx, gy = sobel_gradients(gray_image(arr))
        assert (gx[2:-2, 2:-2] == 80).all()
        assert (gy[2:-2, 2:-2] == 0).all()

    def test_magnitude_scale(self):
        arr = np.zeros((8, 8), dtype=np.uint8)
        arr[:, 4:] = 200
        mag = edge_magnitude(gray_image(arr))
        # a step of 200 yields |gx| = 800 at the two step columns -> 200 after /4
        assert mag[4, 3] == 200.0 and mag[4, 4] == 200.0


class TestCanny:
    def test_vertical_step_thinned_to_one_column(self):
        arr = np.zeros((16, 16), dtype=np.uint8)
        arr[:, 8:] = 200
        edges = canny(gray_image(arr), 50, 150).pixels
        cols = np.unique(np.nonzero(edges)[1])
        assert len(cols) == 1  # plateau tie broken to exactly one column
        assert cols[0] in (7, 8)
        assert edges[:, cols[0]].all()

    def test_weak_edge_rejected_without_strong_seed(self):
        arr = np.zeros((16, 16), dtype=np.uint8)
        arr[:, 8:] = 40  # |gx|/4 = 40 < high
        edges = canny(gray_image(arr), 30, 150).pixels
        assert edges.sum() == 0

    def test_weak_edge_kept_when_connected_to_strong(self):
        # top half: strong step (contrast 200); bottom half: weak step (60)
        arr = np.zeros((20, 16), dtype=np.uint8)
        arr[:10, 8:] = 200
        arr[10:, 8:] = 60
        edges = canny(gray_image(arr), 30, 150).pixels
        assert edges[2, 7:9].any() and edges[17, 7:9].any()

    def test_blank_image_no_edges(self):
        assert canny(gray_image(np.zeros((8, 8))), 50, 150).pixels.sum() == 0

    def test_threshold_validation(self):
        img = gray_image(np.zeros((8, 8)))
        with pytest.raises(ParameterError):
            canny(img, 150, 50)
