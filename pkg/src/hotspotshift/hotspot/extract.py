"""Hotspot extraction from a density surface."""

import logging

import numpy as np
from scipy import ndimage

from ..density.models import DensityGrid, PlanarPoint
from ..errors import ArgumentError
from .models import Hotspot, HotspotSet

logger = logging.getLogger(__name__)

FOUR_CONNECTED = ndimage.generate_binary_structure(2, 1)


def hotspot_mask(grid: DensityGrid, quantile_q: float) -> tuple[np.ndarray, float]:
    """Cells at or above the empirical q-quantile of the positive values, and that threshold.

    The threshold is a value of the grid itself (inverse of the empirical
    CDF), so the mask holds at most (1 - q) of the positive cells plus any
    ties at the threshold.
    """
    if not 0 < quantile_q < 1:
        raise ArgumentError(f"quantile_q must lie in (0, 1), got {quantile_q}")
    values = grid.values
    positive = values[values > 0]
    if positive.size == 0:
        return np.zeros(values.shape, dtype=bool), 0.0
    threshold = float(np.quantile(positive, quantile_q, method="inverted_cdf"))
    return (values >= threshold) & (values > 0), threshold


def extract_hotspots(grid: DensityGrid, quantile_q: float = 0.95) -> HotspotSet:
    """Label the 4-connected components of the quantile mask.

    Regions are sorted by mass, largest first; equal masses are ordered by
    the (row, col) of their peak cell. An all-zero grid has no hotspots.
    """
    mask, threshold = hotspot_mask(grid, quantile_q)
    labels, count = ndimage.label(mask, structure=FOUR_CONNECTED)
    if count == 0:
        return HotspotSet(spec=grid.spec, threshold_density=threshold, quantile_q=quantile_q)

    values = grid.values
    spec = grid.spec
    index = np.arange(1, count + 1)
    sums = ndimage.sum_labels(values, labels, index)
    peaks = ndimage.maximum(values, labels, index)
    peak_cells = ndimage.maximum_position(values, labels, index)
    centres = ndimage.center_of_mass(values, labels, index)
    boxes = ndimage.find_objects(labels)

    regions = []
    for label, box in enumerate(boxes, start=1):
        rows, cols = np.nonzero(labels[box] == label)
        rows = rows + box[0].start
        cols = cols + box[1].start
        row_c, col_c = centres[label - 1]
        regions.append(
            Hotspot(
                cells=frozenset(zip(rows.tolist(), cols.tolist())),
                centroid=PlanarPoint(
                    x=(col_c + 0.5) * spec.cell_size_m,
                    y=(row_c + 0.5) * spec.cell_size_m,
                ),
                area_m2=len(rows) * spec.cell_area,
                peak_density=float(peaks[label - 1]),
                peak_cell=tuple(int(v) for v in peak_cells[label - 1]),
                mass=float(sums[label - 1]) * spec.cell_area,
            )
        )

    regions.sort(key=lambda r: (-r.mass, r.peak_cell))
    logger.debug("Found %d hotspot(s) above %.4e per m^2", len(regions), threshold)
    return HotspotSet(
        spec=spec,
        threshold_density=threshold,
        quantile_q=quantile_q,
        regions=tuple(regions),
    )
