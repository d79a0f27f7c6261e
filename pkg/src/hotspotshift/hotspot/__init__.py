"""Hotspot regions and how they move between periods."""

from .export import (
    hotspots_feature_collection,
    region_outline,
    shift_report_frame,
    shift_report_lines,
    to_lonlat,
)
from .extract import extract_hotspots, hotspot_mask
from .models import Hotspot, HotspotSet, RegionMatch, ShiftReport
from .shift import jaccard, match_regions, shift_metrics

__all__ = [
    "Hotspot",
    "HotspotSet",
    "RegionMatch",
    "ShiftReport",
    "extract_hotspots",
    "hotspot_mask",
    "hotspots_feature_collection",
    "jaccard",
    "match_regions",
    "region_outline",
    "shift_metrics",
    "shift_report_frame",
    "shift_report_lines",
    "to_lonlat",
]
