"""ESRI ASCII grid output with a JSON metadata sidecar."""

from pathlib import Path
from typing import Optional

import numpy as np
from pydantic import BaseModel, Field, ValidationError

from ..errors import DataFileError, SchemaError
from .models import DensityGrid, GridSpec, Kernel

NODATA_VALUE = -9999
HEADER_KEYS = ("ncols", "nrows", "xllcorner", "yllcorner", "cellsize", "NODATA_value")


class GridMetadata(BaseModel):
    """Georeferencing and provenance stored next to an ASCII grid."""

    spec: GridSpec
    bandwidth_m: float
    n_points: int
    kernel: Kernel
    leaked_mass: float
    parameters: dict[str, str] = Field(default_factory=dict)


def sidecar_path(path: str | Path) -> Path:
    path = Path(path)
    return path.with_name(path.name + ".json")


def write_esri_ascii(
    grid: DensityGrid, path: str | Path, parameters: Optional[dict[str, str]] = None
) -> Path:
    """Write a grid as ESRI ASCII (north row first) plus its metadata sidecar.

    Coordinates are meters in the grid's local frame, so the lower-left
    corner is (0, 0); the sidecar carries the WGS84 origin.
    """
    path = Path(path)
    spec = grid.spec
    header = "\n".join(
        [
            f"ncols {spec.nx}",
            f"nrows {spec.ny}",
            "xllcorner 0.0",
            "yllcorner 0.0",
            f"cellsize {spec.cell_size_m!r}",
            f"NODATA_value {NODATA_VALUE}",
        ]
    )
    np.savetxt(path, grid.values[::-1], fmt="%.17g", header=header, comments="")

    metadata = GridMetadata(
        spec=spec,
        bandwidth_m=grid.bandwidth_m,
        n_points=grid.n_points,
        kernel=grid.kernel,
        leaked_mass=grid.leaked_mass,
        parameters=parameters or {},
    )
    sidecar_path(path).write_text(metadata.model_dump_json(indent=2) + "\n")
    return path


def read_esri_ascii(path: str | Path) -> tuple[DensityGrid, GridMetadata]:
    """Read a grid written by write_esri_ascii."""
    path = Path(path)
    meta_path = sidecar_path(path)
    for required in (path, meta_path):
        if not required.is_file():
            raise DataFileError(required, "file does not exist")

    try:
        metadata = GridMetadata.model_validate_json(meta_path.read_text())
    except ValidationError as e:
        raise SchemaError(f"Invalid grid metadata in {meta_path}: {e}") from e

    with path.open() as fh:
        header = {}
        for expected in HEADER_KEYS:
            key, _, value = fh.readline().partition(" ")
            if key != expected:
                raise SchemaError(f"{path} is not an ESRI ASCII grid: expected '{expected}', got '{key}'")
            header[key] = value.strip()
        values = np.loadtxt(fh, ndmin=2)

    if values.shape != metadata.spec.shape:
        raise SchemaError(f"{path} holds {values.shape} values but its metadata describes {metadata.spec.shape}")
    values = np.where(values == NODATA_VALUE, 0.0, values)[::-1]

    grid = DensityGrid(
        spec=metadata.spec,
        values=values,
        bandwidth_m=metadata.bandwidth_m,
        n_points=metadata.n_points,
        kernel=metadata.kernel,
    )
    return grid, metadata
