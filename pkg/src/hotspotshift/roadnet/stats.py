"""Per-highway-type composition of a road network."""

from collections.abc import Iterable

import pandas as pd

from .geometry import segment_length
from .models import RoadSegment, RoadTypeRow, RoadTypeStats


def type_stats(segments: Iterable[RoadSegment]) -> RoadTypeStats:
    """Group segments by highway type.

    count_percent is the share of segments and normalized_percent the share
    of total length; both columns sum to 100 for a non-empty network of
    non-zero length. Rows are ordered by total length, longest first, then
    by type name.
    """
    frame = pd.DataFrame(
        [(seg.highway_type, segment_length(seg)) for seg in segments],
        columns=["highway_type", "length_m"],
    )
    if frame.empty:
        return RoadTypeStats()

    grouped = frame.groupby("highway_type", sort=True).agg(
        segment_count=("length_m", "size"),
        total_length_m=("length_m", "sum"),
    )
    total_count = int(grouped["segment_count"].sum())
    total_length = float(grouped["total_length_m"].sum())
    grouped["count_percent"] = 100.0 * grouped["segment_count"] / total_count
    grouped["normalized_percent"] = (
        100.0 * grouped["total_length_m"] / total_length if total_length > 0 else 0.0
    )
    grouped = grouped.reset_index().sort_values(
        ["total_length_m", "highway_type"], ascending=[False, True], kind="mergesort"
    )

    return RoadTypeStats(
        rows=tuple(
            RoadTypeRow(
                highway_type=row.highway_type,
                segment_count=int(row.segment_count),
                count_percent=float(row.count_percent),
                normalized_percent=float(row.normalized_percent),
                total_length_m=float(row.total_length_m),
            )
            for row in grouped.itertuples(index=False)
        )
    )
