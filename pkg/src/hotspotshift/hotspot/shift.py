"""Comparing hotspot sets from two periods."""

import math

import numpy as np

from ..density.models import GridSpec, PlanarPoint
from ..errors import GeometryError
from .models import HotspotSet, RegionMatch, ShiftReport


def jaccard(first: np.ndarray, second: np.ndarray) -> float:
    """|A and B| / |A or B| of two boolean masks; 0 when both are empty."""
    union = int(np.count_nonzero(first | second))
    if union == 0:
        return 0.0
    return int(np.count_nonzero(first & second)) / union


def _distance(a: PlanarPoint, b: PlanarPoint) -> float:
    return math.hypot(a.x - b.x, a.y - b.y)


def match_regions(before: HotspotSet, after: HotspotSet) -> list[RegionMatch]:
    """Greedy nearest-centroid pairing.

    Repeatedly pairs the closest unmatched (before, after) regions; this is
    not an optimal assignment.
    """
    pairs = sorted(
        (_distance(b.centroid, a.centroid), i, j)
        for i, b in enumerate(before.regions)
        for j, a in enumerate(after.regions)
    )
    used_before: set[int] = set()
    used_after: set[int] = set()
    matches = []
    for distance, i, j in pairs:
        if i in used_before or j in used_after:
            continue
        used_before.add(i)
        used_after.add(j)
        matches.append(RegionMatch(before_index=i, after_index=j, displacement_m=distance))
    return matches


def shift_metrics(before: HotspotSet, after: HotspotSet, grid_spec: GridSpec) -> ShiftReport:
    """Overlap and displacement of hotspots between two periods."""
    for name, hotspots in (("before", before), ("after", after)):
        if not hotspots.spec.same_geometry(grid_spec):
            raise GeometryError(f"The {name} hotspots were extracted on a different grid")

    before_centroid = before.global_centroid()
    after_centroid = after.global_centroid()
    displacement = None
    if before_centroid is not None and after_centroid is not None:
        displacement = _distance(before_centroid, after_centroid)

    matches = match_regions(before, after)
    matched_before = {m.before_index for m in matches}
    matched_after = {m.after_index for m in matches}
    return ShiftReport(
        jaccard=jaccard(before.mask(), after.mask()),
        displacement_m=displacement,
        before_centroid=before_centroid,
        after_centroid=after_centroid,
        n_before_regions=len(before.regions),
        n_after_regions=len(after.regions),
        matches=matches,
        unmatched_before=[i for i in range(len(before.regions)) if i not in matched_before],
        unmatched_after=[j for j in range(len(after.regions)) if j not in matched_after],
    )
