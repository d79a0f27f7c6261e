"""Penalised change point detection by dynamic programming over prefixes.

Both detectors minimise V(tau) + beta * K, where V sums segment costs.
Ties are broken toward fewer breakpoints, then toward the lexicographically
smallest breakpoint sequence, so the two detectors return the same
segmentation for the same input.
"""

import logging
import math
from collections.abc import Sequence
from datetime import date
from typing import Optional

import numpy as np

from ..errors import ArgumentError, NoChangePointError
from ..ingest.schemas import MobilitySeries
from .costs import BoundCost, as_values
from .models import SegmentCost, Segmentation

logger = logging.getLogger(__name__)

SeriesLike = MobilitySeries | Sequence[float] | np.ndarray


def default_beta(series: SeriesLike) -> float:
    """BIC-style penalty 2 * log(T) * sigma^2.

    sigma is estimated from first differences with the median absolute
    deviation, which a few level shifts do not inflate. A noiseless series
    falls back to the sample variance.
    """
    values = as_values(series)
    if len(values) < 2:
        raise ArgumentError("default_beta needs at least two samples")
    diffs = np.diff(values)
    mad = float(np.median(np.abs(diffs - np.median(diffs))))
    variance = (1.4826 * mad / math.sqrt(2.0)) ** 2
    if variance == 0.0:
        variance = float(np.var(values, ddof=1))
    return 2.0 * math.log(len(values)) * variance


def segmentation_cost(
    series: SeriesLike,
    breakpoints: Sequence[int],
    beta: float,
    cost: SegmentCost = SegmentCost(),
) -> float:
    """V(tau) + beta * K for the given breakpoints, summed segment by segment."""
    values = as_values(series)
    bound = BoundCost(values, cost)
    bounds = (0, *breakpoints, len(values))
    total = 0.0
    for start, end in zip(bounds[:-1], bounds[1:]):
        total += bound(start, end)
    if breakpoints:
        total += beta * len(breakpoints)
    return total


def _path(parent: np.ndarray, end: int) -> tuple[int, ...]:
    """Breakpoints of the stored optimal segmentation of [0, end)."""
    points = []
    while end > 0:
        end = int(parent[end])
        if end > 0:
            points.append(end)
    return tuple(reversed(points))


def _pick(
    candidates: np.ndarray, totals: np.ndarray, parent: np.ndarray, counts: np.ndarray
) -> int:
    """Position in `candidates` of the best last-segment start."""
    best = totals.min()
    tied = np.flatnonzero(totals == best)
    if len(tied) == 1:
        return int(tied[0])

    def key(position: int) -> tuple[int, tuple[int, ...]]:
        start = int(candidates[position])
        if start == 0:
            return 0, ()
        return int(counts[start]) + 1, _path(parent, start) + (start,)

    return int(min(tied, key=key))


def _validate(values: np.ndarray, beta: float, min_seg_len: int) -> None:
    if len(values) < 2:
        raise ArgumentError(f"Change point detection needs T >= 2, got {len(values)}")
    if not np.all(np.isfinite(values)):
        raise ArgumentError("Series contains non-finite values")
    if math.isnan(beta) or beta < 0:
        raise ArgumentError(f"beta must be >= 0, got {beta}")
    if min_seg_len < 1:
        raise ArgumentError(f"min_seg_len must be >= 1, got {min_seg_len}")


def _solve(
    series: SeriesLike,
    beta: Optional[float],
    cost: SegmentCost,
    min_seg_len: int,
    prune: bool,
) -> Segmentation:
    values = as_values(series)
    if beta is None:
        beta = default_beta(values)
        logger.info("Using default penalty beta=%.6g", beta)
    _validate(values, beta, min_seg_len)

    n = len(values)
    if math.isinf(beta) or n < 2 * min_seg_len:
        breakpoints: tuple[int, ...] = ()
    else:
        bound = BoundCost(values, cost)
        best = np.full(n + 1, np.inf)
        best[0] = -beta
        parent = np.zeros(n + 1, dtype=int)
        counts = np.zeros(n + 1, dtype=int)
        candidates = np.empty(0, dtype=int)
        # A candidate dominated at time t stays usable until t + min_seg_len,
        # because t itself is not a legal breakpoint before then.
        pending: dict[int, np.ndarray] = {}

        for t in range(min_seg_len, n + 1):
            admitted = t - min_seg_len
            if admitted == 0 or admitted >= min_seg_len:
                candidates = np.append(candidates, admitted)
            dropped = pending.pop(t, None)
            if dropped is not None:
                candidates = candidates[~np.isin(candidates, dropped)]

            segment_costs = bound.many(candidates, t)
            totals = best[candidates] + segment_costs + beta
            chosen = _pick(candidates, totals, parent, counts)
            start = int(candidates[chosen])
            best[t] = totals[chosen]
            parent[t] = start
            counts[t] = counts[start] + (1 if start > 0 else 0)

            if prune:
                dominated = candidates[best[candidates] + segment_costs > best[t]]
                if len(dominated):
                    pending[t + min_seg_len] = dominated

        breakpoints = _path(parent, n)

    segmentation = Segmentation(
        breakpoints=breakpoints,
        n_samples=n,
        objective=segmentation_cost(values, breakpoints, beta, cost),
        beta=beta,
        cost=cost,
        min_seg_len=min_seg_len,
    )
    logger.debug(
        "Segmented %d samples into %d segment(s), objective %.6g",
        n,
        segmentation.k + 1,
        segmentation.objective,
    )
    return segmentation


def detect_exact(
    series: SeriesLike,
    beta: Optional[float] = None,
    cost: SegmentCost = SegmentCost(),
    min_seg_len: int = 2,
) -> Segmentation:
    """Globally optimal segmentation by dynamic programming over all prefixes.

    Args:
        series: Mobility series or raw values
        beta: Penalty per breakpoint; None uses default_beta
        cost: Segment cost function
        min_seg_len: Shortest allowed segment

    Returns:
        Segmentation minimising V(tau) + beta * K
    """
    return _solve(series, beta, cost, min_seg_len, prune=False)


def detect_pruned(
    series: SeriesLike,
    beta: Optional[float] = None,
    cost: SegmentCost = SegmentCost(),
    min_seg_len: int = 2,
) -> Segmentation:
    """Same optimum as detect_exact, discarding start points that can no longer win."""
    return _solve(series, beta, cost, min_seg_len, prune=True)


def change_date(series: MobilitySeries, seg: Segmentation) -> date:
    """Calendar date of the first breakpoint."""
    if seg.k == 0:
        raise NoChangePointError("No change point was detected in the mobility series")
    return series.date_at(seg.breakpoints[0])
