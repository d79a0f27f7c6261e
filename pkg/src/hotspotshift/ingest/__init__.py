"""Accident, mobility and window ingestion."""

from .loaders import load_accidents, load_mobility, load_schema
from .schemas import (
    AccidentLoad,
    AccidentRecord,
    AccidentSchema,
    MobilitySeries,
    RejectedRow,
    StudyWindow,
    WindowCounts,
)
from .windows import baseline_window, window_counts, window_records

__all__ = [
    "AccidentLoad",
    "AccidentRecord",
    "AccidentSchema",
    "MobilitySeries",
    "RejectedRow",
    "StudyWindow",
    "WindowCounts",
    "baseline_window",
    "load_accidents",
    "load_mobility",
    "load_schema",
    "window_counts",
    "window_records",
]
