"""Geodesic lengths, region polygons and vertex clipping."""

import logging
from collections.abc import Iterable, Mapping
from pathlib import Path
from typing import Any

import geojson
import numpy as np
import shapely
from shapely.errors import GEOSException
from shapely.geometry import shape
from shapely.validation import explain_validity

from ..density.projection import EARTH_RADIUS_M
from ..errors import DataFileError, GeometryError
from .models import RoadSegment

logger = logging.getLogger(__name__)


def haversine_m(
    lat1: np.ndarray, lon1: np.ndarray, lat2: np.ndarray, lon2: np.ndarray
) -> np.ndarray:
    """Great-circle distance in meters between paired coordinates in degrees."""
    lat1, lon1, lat2, lon2 = (np.radians(np.asarray(v, dtype=float)) for v in (lat1, lon1, lat2, lon2))
    a = np.sin((lat2 - lat1) / 2) ** 2 + np.cos(lat1) * np.cos(lat2) * np.sin((lon2 - lon1) / 2) ** 2
    return 2 * EARTH_RADIUS_M * np.arcsin(np.sqrt(np.clip(a, 0.0, 1.0)))


def segment_length(seg: RoadSegment) -> float:
    """Sum of haversine distances over consecutive vertices, in meters."""
    coords = np.asarray(seg.geometry, dtype=float)
    legs = haversine_m(coords[:-1, 0], coords[:-1, 1], coords[1:, 0], coords[1:, 1])
    return float(legs.sum())


def as_region(region: shapely.Geometry | Mapping[str, Any]) -> shapely.Geometry:
    """Validate a region polygon given as shapely geometry or a GeoJSON mapping."""
    if not isinstance(region, shapely.Geometry):
        try:
            region = shape(region)
        except (KeyError, TypeError, ValueError, AttributeError, GEOSException) as e:
            raise GeometryError(f"Region is not a GeoJSON geometry: {e}") from e
    if region.geom_type not in ("Polygon", "MultiPolygon"):
        raise GeometryError(f"Region must be a Polygon or MultiPolygon, got {region.geom_type}")
    if region.is_empty:
        raise GeometryError("Region polygon is empty")
    if not region.is_valid:
        raise GeometryError(f"Region polygon is invalid: {explain_validity(region)}")
    return region


def load_region(path: str | Path) -> shapely.Geometry:
    """Read a region from a GeoJSON geometry, Feature or FeatureCollection.

    Collections are merged into one geometry, so a hotspot export can be used
    as a region directly. Coordinates are (lon, lat).
    """
    path = Path(path)
    if not path.is_file():
        raise DataFileError(path, "file does not exist")
    try:
        with path.open() as fh:
            obj = geojson.load(fh)
    except ValueError as e:
        raise GeometryError(f"{path} is not valid GeoJSON: {e}") from e

    kind = obj.get("type") if isinstance(obj, Mapping) else None
    if kind == "FeatureCollection":
        parts = [as_region(f["geometry"]) for f in obj.get("features", []) if f.get("geometry")]
        if not parts:
            raise GeometryError(f"{path} holds no polygon features")
        return as_region(shapely.union_all(parts))
    if kind == "Feature":
        if not obj.get("geometry"):
            raise GeometryError(f"{path} holds a feature without geometry")
        return as_region(obj["geometry"])
    return as_region(obj)


def clip_to_region(
    segments: Iterable[RoadSegment], region: shapely.Geometry | Mapping[str, Any]
) -> list[RoadSegment]:
    """Keep the maximal runs of vertices lying inside the region.

    A vertex on the boundary counts as inside. Boundary crossings are not
    interpolated, so a clipped run can fall short of the boundary by up to
    one vertex spacing. Runs of fewer than two vertices are dropped and a
    fully inside segment is returned as is.
    """
    region = as_region(region)
    shapely.prepare(region)

    clipped = []
    for seg in segments:
        coords = np.asarray(seg.geometry, dtype=float)
        inside = shapely.intersects_xy(region, coords[:, 1], coords[:, 0])
        if inside.all():
            clipped.append(seg)
            continue
        start = None
        for i, flag in enumerate(np.append(inside, False)):
            if flag and start is None:
                start = i
            elif not flag and start is not None:
                if i - start >= 2:
                    clipped.append(seg.model_copy(update={"geometry": seg.geometry[start:i]}))
                start = None
    logger.debug("Clipping kept %d run(s)", len(clipped))
    return clipped
