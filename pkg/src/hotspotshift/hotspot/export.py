"""GeoJSON, CSV and text renderings of hotspots and shift reports."""

from collections.abc import Mapping
from typing import Optional

import geojson
import numpy as np
import pandas as pd
import shapely
from shapely.geometry import MultiPolygon, mapping

from ..density.models import GridSpec, PlanarPoint
from ..density.projection import unproject, unproject_many
from .models import Hotspot, HotspotSet, ShiftReport

SHIFT_COLUMNS = ["kind", "before_region", "after_region", "displacement_m", "jaccard"]


def region_outline(region: Hotspot, spec: GridSpec) -> MultiPolygon:
    """Dissolved cell squares of a region, in planar meters."""
    size = spec.cell_size_m
    squares = [
        shapely.box(col * size, row * size, (col + 1) * size, (row + 1) * size)
        for row, col in sorted(region.cells)
    ]
    outline = shapely.union_all(squares)
    if outline.geom_type == "Polygon":
        outline = MultiPolygon([outline])
    return outline


def to_lonlat(geometry: shapely.Geometry, spec: GridSpec) -> shapely.Geometry:
    """Back-project planar coordinates to WGS84 (lon, lat) order."""

    def transform(xy: np.ndarray) -> np.ndarray:
        lats, lons = unproject_many(xy[:, 0], xy[:, 1], spec.origin_lat, spec.origin_lon)
        return np.column_stack((lons, lats))

    return shapely.transform(geometry, transform)


def _lonlat(point: PlanarPoint, spec: GridSpec) -> list[float]:
    lat, lon = unproject(point, spec.origin_lat, spec.origin_lon)
    return [lon, lat]


def hotspots_feature_collection(
    hotspots: HotspotSet, parameters: Optional[Mapping[str, str]] = None
) -> geojson.FeatureCollection:
    """One MultiPolygon feature per region, in rank order.

    The threshold and the run parameters are stored as foreign members of
    the collection.
    """
    spec = hotspots.spec
    features = []
    for rank, region in enumerate(hotspots.regions):
        outline = to_lonlat(region_outline(region, spec), spec)
        features.append(
            geojson.Feature(
                geometry=mapping(outline),
                properties={
                    "rank": rank,
                    "mass": region.mass,
                    "area_m2": region.area_m2,
                    "peak_density": region.peak_density,
                    "n_cells": len(region.cells),
                    "centroid": _lonlat(region.centroid, spec),
                },
            )
        )
    return geojson.FeatureCollection(
        features,
        threshold_density=hotspots.threshold_density,
        quantile_q=hotspots.quantile_q,
        parameters=dict(parameters or {}),
    )


def shift_report_frame(report: ShiftReport) -> pd.DataFrame:
    """A `global` row followed by matched and unmatched regions."""
    rows = [
        {
            "kind": "global",
            "before_region": None,
            "after_region": None,
            "displacement_m": report.displacement_m,
            "jaccard": report.jaccard,
        }
    ]
    for match in report.matches:
        rows.append(
            {
                "kind": "match",
                "before_region": match.before_index,
                "after_region": match.after_index,
                "displacement_m": match.displacement_m,
                "jaccard": None,
            }
        )
    rows += [{"kind": "unmatched_before", "before_region": i} for i in report.unmatched_before]
    rows += [{"kind": "unmatched_after", "after_region": j} for j in report.unmatched_after]
    frame = pd.DataFrame(rows, columns=SHIFT_COLUMNS)
    # Region indices stay integers with gaps
    frame["before_region"] = frame["before_region"].astype("Int64")
    frame["after_region"] = frame["after_region"].astype("Int64")
    return frame


def shift_report_lines(report: ShiftReport) -> list[str]:
    if report.displacement_m is None:
        displacement = "undefined (a period has no hotspots)"
    else:
        displacement = f"{report.displacement_m:.1f} m"
    lines = [
        "Hotspot shift report",
        f"  regions before: {report.n_before_regions}",
        f"  regions after: {report.n_after_regions}",
        f"  jaccard overlap: {report.jaccard:.4f}",
        f"  centroid displacement: {displacement}",
    ]
    if report.matches:
        lines.append("  matched regions (greedy, nearest centroid first):")
        for match in report.matches:
            lines.append(
                f"    before #{match.before_index} -> after #{match.after_index}: "
                f"{match.displacement_m:.1f} m"
            )
    if report.unmatched_before:
        lines.append(f"  vanished: {', '.join(f'#{i}' for i in report.unmatched_before)}")
    if report.unmatched_after:
        lines.append(f"  appeared: {', '.join(f'#{j}' for j in report.unmatched_after)}")
    return lines
