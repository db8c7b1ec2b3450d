"""Exception types shared across the toolkit."""


class ObjdetectError(Exception):
    """Base class for all toolkit errors."""


class ParameterError(ObjdetectError, ValueError):
    """An operation parameter is out of its valid range."""


class ImageKindError(ObjdetectError, TypeError):
    """An image of the wrong kind was passed to an operation."""


class DecodeError(ObjdetectError, ValueError):
    """Malformed or truncated image bytes.

    ``offset`` is the byte position at which decoding failed.
    """

    def __init__(self, message: str, offset: int):
        super().__init__(f"{message} (byte offset {offset})")
        self.offset = offset


class UnknownColorError(ObjdetectError, KeyError):
    """A color name missing from the active color table."""

    def __init__(self, name: str, valid: list[str]):
        super().__init__(f"unknown color {name!r}; valid names: {', '.join(valid)}")
        self.name = name
        self.valid = valid

    def __str__(self) -> str:
        # KeyError.__str__ would repr() the message; show it verbatim instead.
        return self.args[0]


class ClassificationError(ObjdetectError, ValueError):
    """Polygon too degenerate to classify (zero-length edge or zero area)."""


class EstimationError(ObjdetectError, ValueError):
    """Homography estimation failed (too few or degenerate correspondences)."""


class PointAtInfinityError(ObjdetectError, ValueError):
    """Perspective division by a near-zero homogeneous coordinate."""

    def __init__(self, point):
        super().__init__(f"point {point} maps to infinity under this homography")
        self.point = point
