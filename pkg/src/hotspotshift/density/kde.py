"""Kernel density estimation on a regular grid.

Each point's truncated kernel is stored as one row of a sparse "stamp"
matrix. A density is a weighted sum of rows; the transposed matrix is
column-major, so every cell accumulates contributions in input point order
whatever the weights. The permutation test reuses the same matrix.
"""

import logging
import math
from collections.abc import Sequence

import numpy as np
from scipy import sparse

from ..errors import ArgumentError
from .models import DensityGrid, GridSpec, Kernel, PlanarPoint, points_array

logger = logging.getLogger(__name__)

# Support radius in bandwidths
TRUNCATION = {"gaussian": 4.0, "epanechnikov": 1.0}

_CHUNK = 1024


def kernel_value(d2: np.ndarray, bandwidth_m: float, kernel: Kernel = "gaussian") -> np.ndarray:
    """Isotropic 2-D kernel at squared distance d2, untruncated, per m^2."""
    h2 = bandwidth_m * bandwidth_m
    if kernel == "gaussian":
        return np.exp(-d2 / (2.0 * h2)) / (2.0 * math.pi * h2)
    return np.maximum(2.0 / (math.pi * h2) * (1.0 - d2 / h2), 0.0)


def stamp_matrix(
    points: Sequence[PlanarPoint] | np.ndarray,
    spec: GridSpec,
    bandwidth_m: float,
    kernel: Kernel = "gaussian",
) -> sparse.csr_matrix:
    """Sparse (n_points, n_cells) matrix of truncated kernel values.

    Cell index is row * nx + col with row 0 at the south edge.
    """
    if not bandwidth_m > 0:
        raise ArgumentError(f"bandwidth_m must be positive, got {bandwidth_m}")
    if kernel not in TRUNCATION:
        raise ArgumentError(f"Unknown kernel '{kernel}'")

    xy = points_array(points)
    n = len(xy)
    cell = spec.cell_size_m
    radius = TRUNCATION[kernel] * bandwidth_m
    reach = int(math.ceil(radius / cell))
    offsets = np.arange(-reach, reach + 1)

    point_ids, cell_ids, data = [], [], []
    for start in range(0, n, _CHUNK):
        chunk = xy[start:start + _CHUNK]
        col0 = np.floor(chunk[:, 0] / cell).astype(np.int64)
        row0 = np.floor(chunk[:, 1] / cell).astype(np.int64)
        cols = col0[:, None, None] + offsets[None, None, :]
        rows = row0[:, None, None] + offsets[None, :, None]
        dx = (cols + 0.5) * cell - chunk[:, 0, None, None]
        dy = (rows + 0.5) * cell - chunk[:, 1, None, None]
        d2 = dx * dx + dy * dy

        keep = (d2 <= radius * radius) & (rows >= 0) & (rows < spec.ny) & (cols >= 0) & (cols < spec.nx)
        if kernel == "epanechnikov":
            keep &= d2 < bandwidth_m * bandwidth_m
        ids = np.broadcast_to(np.arange(start, start + len(chunk))[:, None, None], keep.shape)
        flat = np.broadcast_to(rows * spec.nx + cols, keep.shape)

        point_ids.append(ids[keep])
        cell_ids.append(flat[keep])
        data.append(kernel_value(d2[keep], bandwidth_m, kernel))

    if point_ids:
        rows_idx = np.concatenate(point_ids)
        cols_idx = np.concatenate(cell_ids)
        values = np.concatenate(data)
    else:
        rows_idx = cols_idx = np.empty(0, dtype=np.int64)
        values = np.empty(0)
    return sparse.csr_matrix((values, (rows_idx, cols_idx)), shape=(n, spec.nx * spec.ny))


def weighted_density(stamps: sparse.csr_matrix, weights: np.ndarray, spec: GridSpec) -> np.ndarray:
    """Sum of stamp rows scaled by weights.

    weights of shape (n,) give one (ny, nx) surface; shape (n, m) give m
    flattened surfaces as an (n_cells, m) array.
    """
    summed = stamps.T @ weights
    if np.ndim(weights) == 1:
        return np.asarray(summed).reshape(spec.ny, spec.nx)
    return np.asarray(summed)


def kde(
    points: Sequence[PlanarPoint] | np.ndarray,
    spec: GridSpec,
    bandwidth_m: float,
    kernel: Kernel = "gaussian",
) -> DensityGrid:
    """Kernel density surface (1/n) * sum K_h(g - p_i) at every cell centre g.

    Kernels are cut at 4h (gaussian) or h (epanechnikov). Mass cut off by
    truncation or falling outside the grid is not redistributed; see
    DensityGrid.leaked_mass.
    """
    xy = points_array(points)
    if len(xy) == 0:
        raise ArgumentError("Cannot estimate a density from zero points")
    stamps = stamp_matrix(xy, spec, bandwidth_m, kernel)
    values = weighted_density(stamps, np.full(len(xy), 1.0 / len(xy)), spec)
    grid = DensityGrid(
        spec=spec,
        values=values,
        bandwidth_m=bandwidth_m,
        n_points=len(xy),
        kernel=kernel,
    )
    logger.debug(
        "KDE of %d points on %dx%d grid, h=%.1f m, leaked mass %.2e",
        len(xy),
        spec.nx,
        spec.ny,
        bandwidth_m,
        grid.leaked_mass,
    )
    return grid
