"""Contour tracing tests against flood-fill and boundary-pixel oracles."""

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st
from hypothesis.extra.numpy import arrays

from objdetect.errors import ParameterError
from objdetect.imgcore import (
    Contour,
    ImageKind,
    RasterImage,
    connected_component_count,
    fill_components,
    find_contours,
)


def _mask(arr):
    return RasterImage(ImageKind.MASK1, np.asarray(arr, dtype=np.uint8))


def flood_fill_count(px: np.ndarray) -> int:
    """Iterative 8-connected flood fill, independent of scipy labeling."""
    h, w = px.shape
    seen = np.zeros_like(px, dtype=bool)
    count = 0
    for sy in range(h):
        for sx in range(w):
            if px[sy, sx] and not seen[sy, sx]:
                count += 1
                stack = [(sx, sy)]
                seen[sy, sx] = True
                while stack:
                    x, y = stack.pop()
                    for dy in (-1, 0, 1):
                        for dx in (-1, 0, 1):
                            yy, xx = y + dy, x + dx
                            if 0 <= yy < h and 0 <= xx < w and px[yy, xx] and not seen[yy, xx]:
                                seen[yy, xx] = True
                                stack.append((xx, yy))
    return count


def boundary_pixels(px: np.ndarray) -> set[tuple[int, int]]:
    """Foreground pixels with at least one background/OOB 4-neighbor."""
    h, w = px.shape
    out = set()
    for y in range(h):
        for x in range(w):
            if not px[y, x]:
                continue
            for dx, dy in ((1, 0), (-1, 0), (0, 1), (0, -1)):
                yy, xx = y + dy, x + dx
                if not (0 <= yy < h and 0 <= xx < w) or not px[yy, xx]:
                    out.add((x, y))
                    break
    return out


class TestFindContours:
    def test_single_rectangle(self):
        arr = np.zeros((10, 10), dtype=np.uint8)
        arr[2:7, 3:9] = 1
        (contour,) = find_contours(_mask(arr))
        assert contour.closed
        assert set(contour.points) == boundary_pixels(arr)
        assert contour.bounding_box() == (3, 2, 8, 6)
        # shoelace area of the boundary polygon of a 6x5 block is 5*4
        assert contour.area() == pytest.approx(20.0)

    def test_isolated_pixel(self):
        arr = np.zeros((5, 5), dtype=np.uint8)
        arr[2, 2] = 1
        (contour,) = find_contours(_mask(arr))
        assert contour.points == ((2, 2),)

    def test_two_components_ordered_by_start(self):
        arr = np.zeros((12, 12), dtype=np.uint8)
        arr[1:4, 7:10] = 1
        arr[6:9, 1:4] = 1
        contours = find_contours(_mask(arr))
        assert len(contours) == 2
        assert contours[0].points[0] == (7, 1)  # topmost component first
        assert contours[1].points[0] == (1, 6)

    def test_min_area_filter(self):
        arr = np.zeros((10, 10), dtype=np.uint8)
        arr[1, 1] = 1
        arr[4:9, 4:9] = 1
        contours = find_contours(_mask(arr), min_area=4.0)
        assert len(contours) == 1
        assert contours[0].points[0] == (4, 4)
        with pytest.raises(ParameterError):
            find_contours(_mask(arr), min_area=-1)

    def test_diagonal_8_connectivity_single_contour(self):
        arr = np.eye(6, dtype=np.uint8)
        assert len(find_contours(_mask(arr))) == 1

    @settings(max_examples=40, deadline=None)
    @given(
        arr=arrays(
            np.uint8,
            st.tuples(st.integers(1, 10), st.integers(1, 10)),
            elements=st.integers(0, 1),
        )
    )
    def test_component_count_matches_flood_fill(self, arr):
        assert connected_component_count(_mask(arr)) == flood_fill_count(arr)

    @settings(max_examples=40, deadline=None)
    @given(
        arr=arrays(
            np.uint8,
            st.tuples(st.integers(2, 10), st.integers(2, 10)),
            elements=st.integers(0, 1),
        )
    )
    def test_contour_points_lie_on_component_boundary(self, arr):
        boundary = boundary_pixels(arr)
        for contour in find_contours(_mask(arr)):
            for p in contour.points:
                assert p in boundary


class TestFillComponents:
    def test_fills_hole(self):
        arr = np.zeros((10, 10), dtype=np.uint8)
        arr[2:8, 2:8] = 1
        arr[4:6, 4:6] = 0
        out = fill_components(_mask(arr)).pixels
        assert out[4:6, 4:6].all()
        assert out.sum() == 36

    def test_open_region_untouched(self):
        arr = np.zeros((6, 6), dtype=np.uint8)
        arr[0, :] = 1
        out = fill_components(_mask(arr)).pixels
        np.testing.assert_array_equal(out, arr)


class TestContourGeometry:
    def test_perimeter_unit_square_ring(self):
        c = Contour(((0, 0), (1, 0), (1, 1), (0, 1)), closed=True)
        assert c.perimeter() == pytest.approx(4.0)
        assert c.area() == pytest.approx(1.0)
        assert c.centroid() == (0.5, 0.5)
