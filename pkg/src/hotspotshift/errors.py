"""Exception hierarchy for hotspot-shift."""

from pathlib import Path


class HotspotShiftError(Exception):
    """Base class for every error raised by this package."""


class DataFileError(HotspotShiftError):
    """An input file is missing or unreadable."""

    def __init__(self, path: str | Path, reason: str):
        self.path = Path(path)
        super().__init__(f"Cannot read {self.path}: {reason}")


class SchemaError(HotspotShiftError):
    """Input columns or config keys do not match what is required."""


class ArgumentError(HotspotShiftError, ValueError):
    """An argument is outside its documented domain."""


class MobilityGapError(HotspotShiftError):
    """A mobility series has a missing day and gaps are not being filled."""


class NoChangePointError(HotspotShiftError):
    """A segmentation has no breakpoints."""


class ProjectionDomainError(HotspotShiftError):
    """Coordinates are too far from the origin for the local projection."""


class DegenerateDataError(HotspotShiftError):
    """Data has no spread where a data-driven estimate needs one."""


class GeometryError(HotspotShiftError):
    """Grid geometries differ or a polygon is invalid."""


class CalibrationError(HotspotShiftError):
    """Too few permutations to calibrate a test."""


class EmptyWindowError(HotspotShiftError):
    """A study window holds no accident records."""

    def __init__(self, window: str):
        self.window = window
        super().__init__(f"The {window} window contains no accident records")


class OsmParseError(HotspotShiftError):
    """An OSM XML file is not well formed."""

    def __init__(self, path: str | Path, byte_offset: int, reason: str):
        self.path = Path(path)
        self.byte_offset = byte_offset
        super().__init__(f"Malformed OSM XML in {self.path} at byte offset {byte_offset}: {reason}")
