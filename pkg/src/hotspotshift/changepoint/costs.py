"""Segment cost functions evaluated from prefix sums."""

from collections.abc import Sequence

import numpy as np

from ..errors import ArgumentError
from ..ingest.schemas import MobilitySeries
from .models import SegmentCost


def as_values(series: MobilitySeries | Sequence[float] | np.ndarray) -> np.ndarray:
    """Series values as a 1-D float array."""
    if isinstance(series, MobilitySeries):
        return series.as_array()
    values = np.asarray(series, dtype=float)
    if values.ndim != 1:
        raise ArgumentError(f"Expected a 1-D series, got shape {values.shape}")
    return values


class BoundCost:
    """A segment cost bound to one series.

    Scalar and vectorised evaluation use the same prefix sums and the same
    operation order, so they agree bit for bit.
    """

    def __init__(self, values: np.ndarray, cost: SegmentCost):
        self.cost = cost
        self.n_samples = len(values)
        if cost.kind == "l2-mean":
            # l2-mean is shift invariant; centring keeps the prefix sums small
            centred = values - values.mean() if len(values) else values
            self._sum = np.concatenate(([0.0], np.cumsum(centred)))
            self._sum_sq = np.concatenate(([0.0], np.cumsum(centred * centred)))
        else:
            deviation = values - cost.reference
            self._sum_sq = np.concatenate(([0.0], np.cumsum(deviation * deviation)))

    def __call__(self, start: int, end: int) -> float:
        return float(self.many(np.array([start]), end)[0])

    def many(self, starts: np.ndarray, end: int) -> np.ndarray:
        """Costs of the segments [s, end) for every s in `starts`."""
        sum_sq = self._sum_sq[end] - self._sum_sq[starts]
        if self.cost.kind == "l2-constant-reference":
            return np.maximum(sum_sq, 0.0)
        length = end - starts
        total = self._sum[end] - self._sum[starts]
        cost = np.maximum(sum_sq - total * total / length, 0.0)
        return np.where(length == 1, 0.0, cost)


def segment_cost(
    series: MobilitySeries | Sequence[float] | np.ndarray,
    start: int,
    end: int,
    cost: SegmentCost = SegmentCost(),
) -> float:
    """Cost of the half-open segment [start, end) of a series."""
    values = as_values(series)
    if not 0 <= start < end <= len(values):
        raise ArgumentError(
            f"Segment [{start}, {end}) is empty or outside a series of length {len(values)}"
        )
    return BoundCost(values, cost)(start, end)
