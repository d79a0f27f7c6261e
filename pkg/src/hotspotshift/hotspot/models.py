"""Hotspot regions and shift reports."""

from typing import Optional

import numpy as np
from pydantic import BaseModel, ConfigDict, Field

from ..density.models import GridSpec, PlanarPoint

Cell = tuple[int, int]


class Hotspot(BaseModel):
    """A 4-connected set of high-density cells."""

    model_config = ConfigDict(frozen=True)

    cells: frozenset[Cell]
    centroid: PlanarPoint  # density weighted
    area_m2: float
    peak_density: float
    peak_cell: Cell
    mass: float  # sum of value * cell_area


class HotspotSet(BaseModel):
    """Hotspots above the quantile_q density threshold, largest mass first."""

    model_config = ConfigDict(frozen=True)

    spec: GridSpec
    threshold_density: float
    quantile_q: float = Field(gt=0, lt=1)
    regions: tuple[Hotspot, ...] = ()

    def mask(self) -> np.ndarray:
        """Boolean (ny, nx) array of every hotspot cell."""
        mask = np.zeros(self.spec.shape, dtype=bool)
        for region in self.regions:
            rows, cols = zip(*region.cells)
            mask[list(rows), list(cols)] = True
        return mask

    @property
    def total_mass(self) -> float:
        return sum(region.mass for region in self.regions)

    def global_centroid(self) -> Optional[PlanarPoint]:
        """Mass-weighted centroid of all regions; None when there are none."""
        total = self.total_mass
        if not self.regions or total <= 0:
            return None
        x = sum(r.mass * r.centroid.x for r in self.regions) / total
        y = sum(r.mass * r.centroid.y for r in self.regions) / total
        return PlanarPoint(x=x, y=y)


class RegionMatch(BaseModel):
    """A before-period region paired with an after-period region."""

    before_index: int
    after_index: int
    displacement_m: float


class ShiftReport(BaseModel):
    """How hotspots moved between two periods on one grid."""

    jaccard: float = Field(ge=0, le=1)
    displacement_m: Optional[float] = None  # None when either period has no hotspots
    before_centroid: Optional[PlanarPoint] = None
    after_centroid: Optional[PlanarPoint] = None
    n_before_regions: int
    n_after_regions: int
    matches: list[RegionMatch] = Field(default_factory=list)
    unmatched_before: list[int] = Field(default_factory=list)
    unmatched_after: list[int] = Field(default_factory=list)
