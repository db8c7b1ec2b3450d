"""Rasterization tests: Bresenham, midpoint circle, annotation."""

import math

import numpy as np
from hypothesis import given, settings
from hypothesis import strategies as st

from objdetect.imgcore import (
    CircleStroke,
    ImageKind,
    LineSegment,
    Overlay,
    PolygonStroke,
    RasterImage,
    annotate,
    bresenham_line,
    midpoint_circle,
)

coords = st.integers(-20, 20)


class TestBresenham:
    @settings(max_examples=100, deadline=None)
    @given(x0=coords, y0=coords, x1=coords, y1=coords)
    def test_endpoints_connectivity_and_length(self, x0, y0, x1, y1):
        pts = bresenham_line(x0, y0, x1, y1)
        assert pts[0] == (x0, y0) and pts[-1] == (x1, y1)
        assert len(pts) == max(abs(x1 - x0), abs(y1 - y0)) + 1
        for (ax, ay), (bx, by) in zip(pts, pts[1:]):
            assert max(abs(bx - ax), abs(by - ay)) == 1  # 8-connected steps

    @settings(max_examples=100, deadline=None)
    @given(x0=coords, y0=coords, x1=coords, y1=coords)
    def test_points_near_ideal_line(self, x0, y0, x1, y1):
        pts = bresenham_line(x0, y0, x1, y1)
        dx, dy = x1 - x0, y1 - y0
        norm = math.hypot(dx, dy)
        if norm == 0:
            return
        for x, y in pts:
            dist = abs(dy * (x - x0) - dx * (y - y0)) / norm
            assert dist <= 0.5 + 1e-9


class TestMidpointCircle:
    @settings(max_examples=30, deadline=None)
    @given(r=st.integers(1, 30))
    def test_radius_error_below_one(self, r):
        for x, y in midpoint_circle(0, 0, r):
            assert abs(math.hypot(x, y) - r) < 1.0

    @settings(max_examples=30, deadline=None)
    @given(r=st.integers(1, 30))
    def test_eightfold_symmetry(self, r):
        pts = set(midpoint_circle(0, 0, r))
        for x, y in pts:
            assert (y, x) in pts and (-x, y) in pts and (x, -y) in pts

    def test_degenerate_radius(self):
        assert midpoint_circle(5, 5, 0) == [(5, 5)]


class TestAnnotate:
    def _blank(self, h=20, w=20):
        return RasterImage(ImageKind.RGB8, np.zeros((h, w, 3), dtype=np.uint8))

    def test_input_not_mutated(self):
        img = self._blank()
        before = img.pixels.copy()
        annotate(img, Overlay((LineSegment((0, 0), (19, 19), (255, 0, 0)),)))
        np.testing.assert_array_equal(img.pixels, before)

    def test_line_drawn_with_color(self):
        out = annotate(
            self._blank(), Overlay((LineSegment((2, 3), (10, 3), (0, 255, 0)),))
        )
        assert (out.pixels[3, 2:11] == (0, 255, 0)).all()

    def test_out_of_bounds_clipped(self):
        out = annotate(
            self._blank(), Overlay((LineSegment((-5, -5), (25, 25), (255, 255, 255)),))
        )
        assert out.width == 20 and out.height == 20  # no crash, no resize

    def test_polygon_closed(self):
        out = annotate(
            self._blank(),
            Overlay((PolygonStroke(((2, 2), (12, 2), (12, 12), (2, 12)), (255, 0, 0)),)),
        )
        # all four sides present, including the closing edge
        assert (out.pixels[2, 2:13, 0] == 255).all()
        assert (out.pixels[12, 2:13, 0] == 255).all()
        assert (out.pixels[2:13, 2, 0] == 255).all()
        assert (out.pixels[2:13, 12, 0] == 255).all()

    def test_circle_stroke_and_thickness(self):
        out = annotate(self._blank(40, 40), Overlay((CircleStroke(20, 20, 10, (0, 0, 255), 3),)))
        drawn = np.argwhere((out.pixels == (0, 0, 255)).all(axis=2))
        assert len(drawn) > 0
        radii = np.hypot(drawn[:, 1] - 20, drawn[:, 0] - 20)
        assert radii.min() >= 8.0 and radii.max() <= 12.0
