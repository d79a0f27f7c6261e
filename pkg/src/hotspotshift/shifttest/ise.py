"""Integrated squared error between density surfaces and its permutation test."""

import logging
from collections.abc import Sequence

import numpy as np

from ..density.bandwidth import BandwidthRule, select_bandwidth
from ..density.kde import stamp_matrix, weighted_density
from ..density.models import DensityGrid, GridSpec, Kernel, PlanarPoint, points_array
from ..errors import ArgumentError, CalibrationError, GeometryError
from .models import IseResult

logger = logging.getLogger(__name__)

MIN_PERMUTATIONS = 99

# Replicates evaluated per sparse product
_BATCH = 32

PointsLike = Sequence[PlanarPoint] | np.ndarray


def _ise_values(first: np.ndarray, second: np.ndarray, cell_area: float) -> float:
    diff = np.ascontiguousarray(first - second).ravel()
    return float(np.sum(diff * diff) * cell_area)


def ise(f1: DensityGrid, f2: DensityGrid) -> float:
    """Midpoint quadrature of the integral of (f1 - f2)^2, in 1/m^2."""
    if not f1.spec.same_geometry(f2.spec):
        raise GeometryError("ISE needs two surfaces on the same grid geometry")
    return _ise_values(f1.values, f2.values, f1.spec.cell_area)


def pooled_bandwidth(before: PointsLike, after: PointsLike, rule: BandwidthRule | str) -> float:
    """One bandwidth for both samples, chosen from their union."""
    return select_bandwidth(np.vstack([points_array(before), points_array(after)]), rule)


def replicate_rng(seed: int, replicate: int) -> np.random.Generator:
    """PCG64 stream for one permutation replicate."""
    return np.random.default_rng([seed, replicate])


def permutation_test(
    before: PointsLike,
    after: PointsLike,
    spec: GridSpec,
    bandwidth_m: float,
    n_permutations: int = 999,
    seed: int = 0,
    kernel: Kernel = "gaussian",
    keep_null: bool = False,
) -> IseResult:
    """Permutation test of H0: both samples share one spatial density.

    The statistic is the ISE between the two KDEs at a shared bandwidth.
    Each replicate relabels the pooled points, keeping both sample sizes,
    with its own generator seeded by (seed, replicate index), so the null
    distribution does not depend on evaluation order.

    Args:
        before: Planar points of the first period
        after: Planar points of the second period
        spec: Grid both surfaces are evaluated on
        bandwidth_m: Shared kernel bandwidth
        n_permutations: Number of relabelings, at least 99
        seed: Non-negative seed for all replicates
        kernel: Kernel shape
        keep_null: Store the null distribution on the result

    Returns:
        IseResult with p = (1 + #{null >= observed}) / (1 + n_permutations)
    """
    xb = points_array(before)
    xa = points_array(after)
    if len(xb) == 0 or len(xa) == 0:
        raise ArgumentError("Both samples must hold at least one point")
    if n_permutations < MIN_PERMUTATIONS:
        raise CalibrationError(
            f"n_permutations must be at least {MIN_PERMUTATIONS} to calibrate the test, got {n_permutations}"
        )
    if seed < 0:
        raise ArgumentError(f"seed must be non-negative, got {seed}")

    pooled = np.vstack([xb, xa])
    n, n_before, n_after = len(pooled), len(xb), len(xa)
    stamps = stamp_matrix(pooled, spec, bandwidth_m, kernel)

    observed_labels = np.zeros(n, dtype=bool)
    observed_labels[:n_before] = True
    f_before = weighted_density(stamps, np.where(observed_labels, 1.0 / n_before, 0.0), spec)
    f_after = weighted_density(stamps, np.where(observed_labels, 0.0, 1.0 / n_after), spec)
    observed = _ise_values(f_before, f_after, spec.cell_area)

    null = np.empty(n_permutations)
    for first in range(0, n_permutations, _BATCH):
        replicates = range(first, min(first + _BATCH, n_permutations))
        weights_before = np.zeros((n, len(replicates)))
        weights_after = np.zeros((n, len(replicates)))
        for column, replicate in enumerate(replicates):
            order = replicate_rng(seed, replicate).permutation(n)
            labels = np.zeros(n, dtype=bool)
            labels[order[:n_before]] = True
            weights_before[labels, column] = 1.0 / n_before
            weights_after[~labels, column] = 1.0 / n_after
        surfaces_before = weighted_density(stamps, weights_before, spec)
        surfaces_after = weighted_density(stamps, weights_after, spec)
        for column, replicate in enumerate(replicates):
            null[replicate] = _ise_values(
                surfaces_before[:, column], surfaces_after[:, column], spec.cell_area
            )

    exceed = int(np.count_nonzero(null >= observed))
    p_value = (1 + exceed) / (1 + n_permutations)
    logger.info(
        "ISE %.4e from %d vs %d points, p=%.4f over %d permutations",
        observed,
        n_before,
        n_after,
        p_value,
        n_permutations,
    )
    return IseResult(
        ise=observed,
        p_value=p_value,
        n_permutations=n_permutations,
        seed=seed,
        n_before=n_before,
        n_after=n_after,
        bandwidth_m=bandwidth_m,
        null_distribution=tuple(float(v) for v in null) if keep_null else None,
    )
