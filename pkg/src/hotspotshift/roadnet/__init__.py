"""OpenStreetMap road networks and their highway-type composition."""

from .export import (
    DEFAULT_ROAD_COLORS,
    load_road_colors,
    road_color,
    segments_feature_collection,
    stats_frame,
)
from .geometry import as_region, clip_to_region, haversine_m, load_region, segment_length
from .models import OsmParse, RejectedWay, RoadSegment, RoadTypeRow, RoadTypeStats
from .osm import parse_osm
from .stats import type_stats

__all__ = [
    "DEFAULT_ROAD_COLORS",
    "OsmParse",
    "RejectedWay",
    "RoadSegment",
    "RoadTypeRow",
    "RoadTypeStats",
    "as_region",
    "clip_to_region",
    "haversine_m",
    "load_region",
    "load_road_colors",
    "parse_osm",
    "road_color",
    "segment_length",
    "segments_feature_collection",
    "stats_frame",
    "type_stats",
]
