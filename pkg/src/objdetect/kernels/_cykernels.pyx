# cython: boundscheck=False, wraparound=False, cdivision=True
"""Compiled hot kernels; bit-identical to kernels.pykernels."""

import numpy as np

cimport numpy as cnp
from libc.math cimport floor, sqrt

cnp.import_array()

cdef int[16][2] _FAST_RING = [
    [0, -3], [1, -3], [2, -2], [3, -1], [3, 0], [3, 1], [2, 2], [1, 3],
    [0, 3], [-1, 3], [-2, 2], [-3, 1], [-3, 0], [-3, -1], [-2, -2], [-1, -3],
]


def fast_score_map(gray):
    cdef cnp.ndarray[cnp.int32_t, ndim=2] g = np.ascontiguousarray(gray, dtype=np.int32)
    cdef Py_ssize_t h = g.shape[0], w = g.shape[1]
    cdef cnp.ndarray[cnp.int32_t, ndim=2] score = np.zeros((h, w), dtype=np.int32)
    if h < 7 or w < 7:
        return score
    cdef int ring[16]
    cdef int d[24]
    cdef Py_ssize_t y, x
    cdef int i, k, center, best, arc_min, v, polarity
    for y in range(3, h - 3):
        for x in range(3, w - 3):
            center = g[y, x]
            for i in range(16):
                ring[i] = g[y + _FAST_RING[i][1], x + _FAST_RING[i][0]]
            best = -2147483647
            for polarity in range(2):
                for i in range(16):
                    if polarity == 0:
                        d[i] = ring[i] - center
                    else:
                        d[i] = center - ring[i]
                for i in range(8):
                    d[16 + i] = d[i]
                for i in range(16):
                    arc_min = d[i]
                    for k in range(1, 9):
                        v = d[i + k]
                        if v < arc_min:
                            arc_min = v
                    if arc_min > best:
                        best = arc_min
            if best > 0:
                score[y, x] = best
    return score


def hough_vote(edge_xs, edge_ys, gx, gy, int r_min, int r_max, int height, int width):
    cdef cnp.ndarray[cnp.int32_t, ndim=2] acc = np.zeros((height, width), dtype=np.int32)
    cdef cnp.ndarray[cnp.float64_t, ndim=1] xs = np.ascontiguousarray(edge_xs, dtype=np.float64)
    cdef cnp.ndarray[cnp.float64_t, ndim=1] ys = np.ascontiguousarray(edge_ys, dtype=np.float64)
    cdef cnp.ndarray[cnp.float64_t, ndim=1] gxa = np.ascontiguousarray(gx, dtype=np.float64)
    cdef cnp.ndarray[cnp.float64_t, ndim=1] gya = np.ascontiguousarray(gy, dtype=np.float64)
    cdef Py_ssize_t n = xs.shape[0]
    cdef Py_ssize_t i
    cdef int r
    cdef double norm, dx, dy, sense
    cdef long cx, cy
    for i in range(n):
        norm = sqrt(gxa[i] * gxa[i] + gya[i] * gya[i])
        if norm <= 0:
            continue
        dx = gxa[i] / norm
        dy = gya[i] / norm
        for r in range(r_min, r_max + 1):
            for sense in (1.0, -1.0):
                cx = <long>floor(xs[i] + sense * r * dx + 0.5)
                cy = <long>floor(ys[i] + sense * r * dy + 0.5)
                if 0 <= cx < width and 0 <= cy < height:
                    acc[cy, cx] += 1
    return acc


cdef inline int _popcount64(unsigned long long v) nogil:
    v = v - ((v >> 1) & 0x5555555555555555ULL)
    v = (v & 0x3333333333333333ULL) + ((v >> 2) & 0x3333333333333333ULL)
    v = (v + (v >> 4)) & 0x0F0F0F0F0F0F0F0FULL
    return <int>((v * 0x0101010101010101ULL) >> 56)


def hamming_nn(obj, scene):
    cdef cnp.ndarray[cnp.uint8_t, ndim=2] o = np.ascontiguousarray(obj, dtype=np.uint8)
    cdef cnp.ndarray[cnp.uint8_t, ndim=2] s = np.ascontiguousarray(scene, dtype=np.uint8)
    cdef Py_ssize_t n = o.shape[0], m = s.shape[0], nb = o.shape[1]
    cdef cnp.ndarray[cnp.int64_t, ndim=1] indices = np.zeros(n, dtype=np.int64)
    cdef cnp.ndarray[cnp.int32_t, ndim=1] distances = np.zeros(n, dtype=np.int32)
    if n == 0 or m == 0:
        return indices, distances
    cdef Py_ssize_t nwords = nb // 8
    cdef cnp.ndarray[cnp.uint64_t, ndim=2] ow = np.ascontiguousarray(o).view(np.uint64)
    cdef cnp.ndarray[cnp.uint64_t, ndim=2] sw = np.ascontiguousarray(s).view(np.uint64)
    cdef Py_ssize_t i, j, k
    cdef int dist, best_dist
    cdef Py_ssize_t best_j
    for i in range(n):
        best_dist = 2147483647
        best_j = 0
        for j in range(m):
            dist = 0
            for k in range(nwords):
                dist += _popcount64(ow[i, k] ^ sw[j, k])
                if dist >= best_dist:
                    break
            if dist < best_dist:
                best_dist = dist
                best_j = j
        indices[i] = best_j
        distances[i] = best_dist
    return indices, distances
