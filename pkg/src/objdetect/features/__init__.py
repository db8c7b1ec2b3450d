"""BRISK keypoints, binary matching, and homography-based localization."""

from .brisk import (
    DESCRIPTOR_BITS,
    LONG_PAIRS,
    PATTERN,
    SHORT_PAIRS,
    BinaryDescriptor,
    Keypoint,
    brisk_describe,
    brisk_detect,
)
from .homography import Homography, find_homography, perspective_transform
from .matching import (
    FeatureMatch,
    GoodMatchPolicy,
    filter_good_matches,
    hamming_distance,
    match_descriptors,
)
from .pipeline import MatchParams, ObjectMatchResult, detect_object, dump_descriptors

__all__ = [
    "DESCRIPTOR_BITS",
    "LONG_PAIRS",
    "PATTERN",
    "SHORT_PAIRS",
    "BinaryDescriptor",
    "FeatureMatch",
    "GoodMatchPolicy",
    "Homography",
    "Keypoint",
    "MatchParams",
    "ObjectMatchResult",
    "brisk_describe",
    "brisk_detect",
    "detect_object",
    "dump_descriptors",
    "filter_good_matches",
    "find_homography",
    "hamming_distance",
    "match_descriptors",
    "perspective_transform",
]
