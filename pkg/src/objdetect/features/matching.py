"""Hamming-distance descriptor matching and good-match selection."""

from __future__ import annotations

import logging
from dataclasses import dataclass

import numpy as np

from ..errors import ParameterError
from ..kernels import hamming_nn
from .brisk import BinaryDescriptor

log = logging.getLogger(__name__)

_POPCOUNT = np.array([bin(i).count("1") for i in range(256)], dtype=np.uint16)


@dataclass(frozen=True)
class FeatureMatch:
    object_index: int
    scene_index: int
    distance: int


@dataclass(frozen=True)
class GoodMatchPolicy:
    """Retention rule for matches used in homography estimation.

    The cutoff is max(ratio * min distance, distance_floor); survivors are
    sorted by distance and capped at max_good.
    """

    max_good: int = 50
    ratio: float = 3.0
    distance_floor: int = 20

    def __post_init__(self):
        if self.max_good < 4:
            raise ParameterError(f"max_good must be >= 4, got {self.max_good}")
        if self.ratio < 1.0:
            raise ParameterError(f"ratio must be >= 1, got {self.ratio}")
        if self.distance_floor < 0:
            raise ParameterError(f"distance_floor must be >= 0, got {self.distance_floor}")


def hamming_distance(a: BinaryDescriptor, b: BinaryDescriptor) -> int:
    """Number of differing bits (0..512)."""
    return int(_POPCOUNT[a.as_array() ^ b.as_array()].sum())


def match_descriptors(
    object_descs: list[BinaryDescriptor], scene_descs: list[BinaryDescriptor]
) -> list[FeatureMatch]:
    """Nearest scene descriptor for every object descriptor.

    Ties go to the lowest scene index. An empty scene with a non-empty
    object logs a warning and yields no matches.
    """
    if not object_descs:
        return []
    if not scene_descs:
        log.warning("matching %d object descriptors against an empty scene", len(object_descs))
        return []
    obj = np.stack([d.as_array() for d in object_descs])
    scene = np.stack([d.as_array() for d in scene_descs])
    idx, dist = hamming_nn(obj, scene)
    return [FeatureMatch(i, int(idx[i]), int(dist[i])) for i in range(len(object_descs))]


def filter_good_matches(
    matches: list[FeatureMatch], policy: GoodMatchPolicy | None = None
) -> list[FeatureMatch]:
    """Keep matches below the policy cutoff, best first, capped in count."""
    policy = policy or GoodMatchPolicy()
    if not matches:
        return []
    cutoff = max(policy.ratio * min(m.distance for m in matches), policy.distance_floor)
    good = [m for m in matches if m.distance <= cutoff]
    good.sort(key=lambda m: (m.distance, m.object_index, m.scene_index))
    return good[: policy.max_good]
