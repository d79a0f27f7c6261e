"""Planar points, grid geometry and density surfaces."""

import math
from collections.abc import Sequence
from typing import Literal

import numpy as np
from pydantic import BaseModel, ConfigDict, Field, computed_field, field_validator, model_validator

Kernel = Literal["gaussian", "epanechnikov"]

DEFAULT_MAX_CELLS = 4_000_000


class PlanarPoint(BaseModel):
    """Meters east (x) and north (y) of a region origin."""

    model_config = ConfigDict(frozen=True, allow_inf_nan=False)

    x: float
    y: float


def points_array(points: Sequence[PlanarPoint] | np.ndarray) -> np.ndarray:
    """Points as an (n, 2) float array."""
    if isinstance(points, np.ndarray):
        return points.reshape(-1, 2).astype(float, copy=False)
    return np.array([(p.x, p.y) for p in points], dtype=float).reshape(-1, 2)


class GridSpec(BaseModel):
    """A regular planar grid whose south-west corner is the projection origin."""

    model_config = ConfigDict(frozen=True)

    origin_lat: float = Field(ge=-90, le=90)
    origin_lon: float = Field(ge=-180, le=180)
    width_m: float = Field(gt=0)
    height_m: float = Field(gt=0)
    cell_size_m: float = Field(gt=0)
    max_cells: int = Field(default=DEFAULT_MAX_CELLS, gt=0)

    @computed_field
    @property
    def nx(self) -> int:
        # Tolerance keeps 1000 / 0.1 from rounding up to an extra column
        return max(1, math.ceil(self.width_m / self.cell_size_m - 1e-9))

    @computed_field
    @property
    def ny(self) -> int:
        return max(1, math.ceil(self.height_m / self.cell_size_m - 1e-9))

    @property
    def cell_area(self) -> float:
        return self.cell_size_m * self.cell_size_m

    @property
    def shape(self) -> tuple[int, int]:
        return self.ny, self.nx

    @model_validator(mode="after")
    def check_cell_budget(self) -> "GridSpec":
        if self.nx * self.ny > self.max_cells:
            raise ValueError(
                f"Grid of {self.nx}x{self.ny} cells exceeds the maximum of {self.max_cells}; "
                "increase cell_size_m"
            )
        return self

    def same_geometry(self, other: "GridSpec") -> bool:
        return (
            self.origin_lat == other.origin_lat
            and self.origin_lon == other.origin_lon
            and self.nx == other.nx
            and self.ny == other.ny
            and self.cell_size_m == other.cell_size_m
        )

    def cell_centers(self) -> tuple[np.ndarray, np.ndarray]:
        """x of every column centre and y of every row centre (row 0 is south)."""
        xs = (np.arange(self.nx) + 0.5) * self.cell_size_m
        ys = (np.arange(self.ny) + 0.5) * self.cell_size_m
        return xs, ys

    def cell_center(self, row: int, col: int) -> PlanarPoint:
        return PlanarPoint(x=(col + 0.5) * self.cell_size_m, y=(row + 0.5) * self.cell_size_m)

    @classmethod
    def covering(
        cls,
        lats: Sequence[float] | np.ndarray,
        lons: Sequence[float] | np.ndarray,
        cell_size_m: float,
        margin_m: float = 0.0,
        max_cells: int = DEFAULT_MAX_CELLS,
    ) -> "GridSpec":
        """Smallest grid holding every coordinate with `margin_m` to spare on each side."""
        from .projection import EARTH_RADIUS_M, project_many

        lats = np.asarray(lats, dtype=float)
        lons = np.asarray(lons, dtype=float)
        if len(lats) == 0:
            raise ValueError("Cannot build a grid around zero points")
        origin_lat = float(lats.min()) - math.degrees(margin_m / EARTH_RADIUS_M)
        scale = EARTH_RADIUS_M * math.cos(math.radians(origin_lat))
        origin_lon = float(lons.min()) - math.degrees(margin_m / scale)
        far = project_many(
            np.array([lats.max()]), np.array([lons.max()]), origin_lat, origin_lon
        )[0]
        return cls(
            origin_lat=origin_lat,
            origin_lon=origin_lon,
            width_m=float(far[0]) + margin_m,
            height_m=float(far[1]) + margin_m,
            cell_size_m=cell_size_m,
            max_cells=max_cells,
        )


class DensityGrid(BaseModel):
    """Kernel density values (per square meter) at the cell centres of a grid."""

    model_config = ConfigDict(frozen=True, arbitrary_types_allowed=True)

    spec: GridSpec
    values: np.ndarray
    bandwidth_m: float = Field(gt=0)
    n_points: int = Field(ge=0)
    kernel: Kernel = "gaussian"

    @field_validator("values")
    @classmethod
    def check_values(cls, values: np.ndarray) -> np.ndarray:
        values = np.array(values, dtype=float)
        if values.ndim != 2:
            raise ValueError(f"values must be 2-D, got shape {values.shape}")
        if np.any(values < 0) or not np.all(np.isfinite(values)):
            raise ValueError("density values must be finite and non-negative")
        values.flags.writeable = False
        return values

    @model_validator(mode="after")
    def check_shape(self) -> "DensityGrid":
        if self.values.shape != self.spec.shape:
            raise ValueError(f"values shape {self.values.shape} does not match grid {self.spec.shape}")
        return self

    @property
    def mass(self) -> float:
        """Midpoint quadrature of the surface over the grid."""
        return float(self.values.sum() * self.spec.cell_area)

    @property
    def leaked_mass(self) -> float:
        """Probability mass lost to kernel truncation and the grid edges."""
        return max(0.0, 1.0 - self.mass) if self.n_points else 0.0
