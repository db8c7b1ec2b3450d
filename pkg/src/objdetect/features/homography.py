"""RANSAC homography estimation and perspective point mapping."""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from ..errors import EstimationError, ParameterError, PointAtInfinityError


@dataclass(frozen=True)
class Homography:
    """An invertible 3x3 projective map, bottom-right entry normalized to 1."""

    matrix: np.ndarray

    def __post_init__(self):
        m = np.asarray(self.matrix, dtype=np.float64)
        if m.shape != (3, 3):
            raise ParameterError(f"homography must be 3x3, got {m.shape}")
        if abs(m[2, 2]) > 0:
            m = m / m[2, 2]
        if abs(np.linalg.det(m)) < 1e-9:
            raise EstimationError("homography is singular")
        m.setflags(write=False)
        object.__setattr__(self, "matrix", m)

    @classmethod
    def identity(cls) -> "Homography":
        return cls(np.eye(3))

    def inverse(self) -> "Homography":
        return Homography(np.linalg.inv(self.matrix))

    def compose(self, other: "Homography") -> "Homography":
        """The map equivalent to applying `other` first, then self."""
        return Homography(self.matrix @ other.matrix)


def perspective_transform(points, h: Homography) -> list[tuple[float, float]]:
    """(x, y) -> ((h11 x + h12 y + h13)/w, (h21 x + h22 y + h23)/w)."""
    m = h.matrix
    out = []
    for p in points:
        x, y = float(p[0]), float(p[1])
        w = m[2, 0] * x + m[2, 1] * y + m[2, 2]
        if abs(w) <= 1e-12:
            raise PointAtInfinityError((x, y))
        out.append(((m[0, 0] * x + m[0, 1] * y + m[0, 2]) / w, (m[1, 0] * x + m[1, 1] * y + m[1, 2]) / w))
    return out


def _normalization(pts: np.ndarray) -> np.ndarray:
    """Hartley normalization: centroid to origin, RMS distance sqrt(2)."""
    centroid = pts.mean(axis=0)
    rms = np.sqrt(((pts - centroid) ** 2).sum(axis=1).mean())
    scale = math.sqrt(2.0) / rms if rms > 0 else 1.0
    return np.array(
        [[scale, 0, -scale * centroid[0]], [0, scale, -scale * centroid[1]], [0, 0, 1]]
    )


def _apply(m: np.ndarray, pts: np.ndarray) -> np.ndarray:
    homog = np.hstack([pts, np.ones((len(pts), 1))]) @ m.T
    return homog[:, :2] / homog[:, 2:3]


def _dlt(src: np.ndarray, dst: np.ndarray) -> np.ndarray:
    t_src, t_dst = _normalization(src), _normalization(dst)
    s, d = _apply(t_src, src), _apply(t_dst, dst)
    rows = []
    for (x, y), (u, v) in zip(s, d):
        rows.append([-x, -y, -1, 0, 0, 0, u * x, u * y, u])
        rows.append([0, 0, 0, -x, -y, -1, v * x, v * y, v])
    _, _, vt = np.linalg.svd(np.array(rows))
    hn = vt[-1].reshape(3, 3)
    return np.linalg.inv(t_dst) @ hn @ t_src


def _has_collinear_triple(pts: np.ndarray, tol: float = 1e-6) -> bool:
    n = len(pts)
    for i in range(n):
        for j in range(i + 1, n):
            for k in range(j + 1, n):
                a, b, c = pts[i], pts[j], pts[k]
                cross = (b[0] - a[0]) * (c[1] - a[1]) - (b[1] - a[1]) * (c[0] - a[0])
                if abs(cross) <= tol * max(1.0, np.abs(pts).max()):
                    return True
    return False


def _symmetric_errors(h: np.ndarray, src: np.ndarray, dst: np.ndarray) -> np.ndarray:
    """max(forward, backward) reprojection distance per correspondence."""
    with np.errstate(divide="ignore", invalid="ignore"):
        fwd = np.linalg.norm(_apply(h, src) - dst, axis=1)
        bwd = np.linalg.norm(_apply(np.linalg.inv(h), dst) - src, axis=1)
    errs = np.maximum(fwd, bwd)
    return np.where(np.isfinite(errs), errs, np.inf)


def find_homography(
    pairs,
    reproj_threshold: float = 3.0,
    max_iterations: int = 2000,
    confidence: float = 0.995,
    seed: int | None = None,
) -> tuple[Homography, np.ndarray]:
    """RANSAC over normalized-DLT minimal samples, refit on best inliers.

    Returns the homography and a boolean inlier array. Raises
    EstimationError for fewer than 4 pairs or when every sample is
    degenerate.
    """
    pairs = list(pairs)
    if len(pairs) < 4:
        raise EstimationError(f"need at least 4 correspondences, got {len(pairs)}")
    src = np.array([[p[0][0], p[0][1]] for p in pairs], dtype=np.float64)
    dst = np.array([[p[1][0], p[1][1]] for p in pairs], dtype=np.float64)
    n = len(pairs)

    if n == 4:
        if _has_collinear_triple(src) or _has_collinear_triple(dst):
            raise EstimationError("all minimal samples are degenerate (collinear points)")
        h = _dlt(src, dst)
        hom = Homography(h)
        return hom, _symmetric_errors(hom.matrix, src, dst) <= reproj_threshold

    rng = np.random.default_rng(seed)
    best_inliers: np.ndarray | None = None
    best_count = 0
    needed = max_iterations
    it = 0
    while it < min(needed, max_iterations):
        it += 1
        idx = rng.choice(n, size=4, replace=False)
        if _has_collinear_triple(src[idx]) or _has_collinear_triple(dst[idx]):
            continue
        try:
            h = _dlt(src[idx], dst[idx])
            if abs(np.linalg.det(h)) < 1e-12:
                continue
        except np.linalg.LinAlgError:
            continue
        inliers = _symmetric_errors(h, src, dst) <= reproj_threshold
        count = int(inliers.sum())
        if count > best_count:
            best_count, best_inliers = count, inliers
            w = count / n
            if w > 0:
                denom = math.log(max(1e-12, 1.0 - w**4))
                if denom < 0:
                    needed = min(max_iterations, math.ceil(math.log(1.0 - confidence) / denom))

    if best_inliers is None or best_count < 4:
        raise EstimationError("RANSAC found no valid non-degenerate sample")
    h = _dlt(src[best_inliers], dst[best_inliers])
    hom = Homography(h)
    return hom, _symmetric_errors(hom.matrix, src, dst) <= reproj_threshold
