"""Local equirectangular projection between WGS84 and planar meters."""

import math

import numpy as np

from ..errors import ProjectionDomainError
from .models import PlanarPoint

EARTH_RADIUS_M = 6_371_000.0
MAX_SPAN_DEG = 2.0


def _check_span(lats: np.ndarray, lons: np.ndarray, origin_lat: float, origin_lon: float) -> None:
    if not (-90 <= origin_lat <= 90 and -180 <= origin_lon <= 180):
        raise ProjectionDomainError(f"Origin ({origin_lat}, {origin_lon}) is not a WGS84 coordinate")
    if len(lats) == 0:
        return
    span = max(
        float(np.max(np.abs(lats - origin_lat))),
        float(np.max(np.abs(lons - origin_lon))),
    )
    if not span < MAX_SPAN_DEG:
        raise ProjectionDomainError(
            f"Points lie {span:.3f} degrees from the origin; the local projection "
            f"is limited to {MAX_SPAN_DEG} degrees"
        )


def project_many(
    lats: np.ndarray, lons: np.ndarray, origin_lat: float, origin_lon: float
) -> np.ndarray:
    """Project arrays of coordinates to an (n, 2) array of (x, y) meters."""
    lats = np.asarray(lats, dtype=float)
    lons = np.asarray(lons, dtype=float)
    _check_span(lats, lons, origin_lat, origin_lon)
    scale = EARTH_RADIUS_M * math.cos(math.radians(origin_lat))
    x = scale * np.radians(lons - origin_lon)
    y = EARTH_RADIUS_M * np.radians(lats - origin_lat)
    return np.column_stack((x, y))


def project(lat: float, lon: float, origin_lat: float, origin_lon: float) -> PlanarPoint:
    """Meters east and north of the origin.

    x = R * cos(origin_lat) * dlon, y = R * dlat, angles in radians.
    """
    x, y = project_many(np.array([lat]), np.array([lon]), origin_lat, origin_lon)[0]
    return PlanarPoint(x=float(x), y=float(y))


def unproject_many(
    x: np.ndarray, y: np.ndarray, origin_lat: float, origin_lon: float
) -> tuple[np.ndarray, np.ndarray]:
    """Inverse of project_many; returns (lats, lons)."""
    scale = EARTH_RADIUS_M * math.cos(math.radians(origin_lat))
    lats = origin_lat + np.degrees(np.asarray(y, dtype=float) / EARTH_RADIUS_M)
    lons = origin_lon + np.degrees(np.asarray(x, dtype=float) / scale)
    return lats, lons


def unproject(point: PlanarPoint, origin_lat: float, origin_lon: float) -> tuple[float, float]:
    """(lat, lon) of a planar point."""
    lats, lons = unproject_many(np.array([point.x]), np.array([point.y]), origin_lat, origin_lon)
    return float(lats[0]), float(lons[0])
