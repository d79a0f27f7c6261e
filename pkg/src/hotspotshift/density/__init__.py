"""Planar projection and kernel density surfaces."""

from .bandwidth import BandwidthRule, parse_bandwidth_rule, select_bandwidth
from .esri import GridMetadata, read_esri_ascii, write_esri_ascii
from .kde import kde, kernel_value, stamp_matrix, weighted_density
from .models import DensityGrid, GridSpec, PlanarPoint, points_array
from .projection import EARTH_RADIUS_M, project, project_many, unproject, unproject_many

__all__ = [
    "EARTH_RADIUS_M",
    "BandwidthRule",
    "DensityGrid",
    "GridMetadata",
    "GridSpec",
    "PlanarPoint",
    "kde",
    "kernel_value",
    "parse_bandwidth_rule",
    "points_array",
    "project",
    "project_many",
    "read_esri_ascii",
    "select_bandwidth",
    "stamp_matrix",
    "unproject",
    "unproject_many",
    "weighted_density",
    "write_esri_ascii",
]
