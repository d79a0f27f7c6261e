"""CSV and colour-coded GeoJSON output for road networks."""

from collections.abc import Iterable, Mapping
from pathlib import Path
from typing import Annotated, Optional

import geojson
import pandas as pd
from pydantic import StringConstraints, TypeAdapter, ValidationError

from ..config import read_key_values
from ..errors import SchemaError
from .geometry import segment_length
from .models import RoadSegment, RoadTypeStats

STATS_COLUMNS = [
    "highway_type",
    "segment_count",
    "count_percent",
    "normalized_percent",
    "total_length_m",
]

CLIPPING_NOTE = "vertex runs inside the region; boundary crossings are not interpolated"

FALLBACK_COLOR = "#9e9e9e"

DEFAULT_ROAD_COLORS = {
    "motorway": "#e31a1c",
    "trunk": "#ff7f00",
    "primary": "#fdbf6f",
    "secondary": "#33a02c",
    "tertiary": "#b2df8a",
    "unclassified": "#6a3d9a",
    "residential": "#1f78b4",
    "living_street": "#a6cee3",
    "service": "#cab2d6",
    "footway": "#b15928",
    "cycleway": "#ffff99",
}

HexColor = Annotated[str, StringConstraints(strip_whitespace=True, pattern=r"^#[0-9a-fA-F]{6}$")]
_color_table = TypeAdapter(dict[str, HexColor])


def load_road_colors(path: Optional[str | Path] = None) -> dict[str, str]:
    """Default colour table, updated from a `highway_type=#rrggbb` file."""
    colors = dict(DEFAULT_ROAD_COLORS)
    if path is None:
        return colors
    try:
        colors.update(_color_table.validate_python(read_key_values(path)))
    except ValidationError as e:
        bad = ", ".join(str(err["loc"][0]) for err in e.errors())
        raise SchemaError(f"Road colours in {path} must be #rrggbb values (check: {bad})") from e
    return colors


def road_color(highway_type: str, colors: Mapping[str, str]) -> str:
    """Colour of a type; `*_link` types fall back to their parent road's colour."""
    if highway_type in colors:
        return colors[highway_type]
    parent = highway_type.removesuffix("_link")
    return colors.get(parent, FALLBACK_COLOR)


def stats_frame(stats: RoadTypeStats) -> pd.DataFrame:
    return pd.DataFrame([row.model_dump() for row in stats.rows], columns=STATS_COLUMNS)


def segments_feature_collection(
    segments: Iterable[RoadSegment],
    colors: Optional[Mapping[str, str]] = None,
    parameters: Optional[Mapping[str, str]] = None,
) -> geojson.FeatureCollection:
    """LineString features with a `stroke` colour per highway type."""
    colors = DEFAULT_ROAD_COLORS if colors is None else colors
    features = [
        geojson.Feature(
            geometry=geojson.LineString([(lon, lat) for lat, lon in seg.geometry]),
            properties={
                "way_id": seg.way_id,
                "highway": seg.highway_type,
                "length_m": segment_length(seg),
                "stroke": road_color(seg.highway_type, colors),
            },
        )
        for seg in segments
    ]
    return geojson.FeatureCollection(
        features,
        clipping=CLIPPING_NOTE,
        parameters=dict(parameters or {}),
    )
