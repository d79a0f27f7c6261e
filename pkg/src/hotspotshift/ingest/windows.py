"""Splitting accident records into study windows."""

from collections.abc import Sequence
from datetime import date

from ..errors import ArgumentError
from .schemas import AccidentRecord, StudyWindow, WindowCounts


def window_records(
    records: Sequence[AccidentRecord], window: StudyWindow
) -> tuple[list[AccidentRecord], list[AccidentRecord]]:
    """Split records into the before and after windows of a change date.

    Windowing is by calendar date. Records outside both windows are dropped;
    each output keeps input order.
    """
    before: list[AccidentRecord] = []
    after: list[AccidentRecord] = []
    for record in records:
        day = record.day
        if window.in_before(day):
            before.append(record)
        elif window.in_after(day):
            after.append(record)
    return before, after


def baseline_window(window: StudyWindow, years_back: int = 1) -> StudyWindow:
    """Same calendar window `years_back` years earlier (Feb 29 maps to Feb 28)."""
    if years_back < 1:
        raise ArgumentError(f"years_back must be at least 1, got {years_back}")
    change = window.change_date
    year = change.year - years_back
    try:
        shifted = change.replace(year=year)
    except ValueError:
        shifted = date(year, 2, 28)
    return window.model_copy(update={"change_date": shifted})


def window_counts(
    before: Sequence[AccidentRecord], after: Sequence[AccidentRecord]
) -> WindowCounts:
    """Accident counts per window and the percent change from before to after."""
    n_before, n_after = len(before), len(after)
    change = 100.0 * (n_after - n_before) / n_before if n_before else None
    return WindowCounts(n_before=n_before, n_after=n_after, percent_change=change)
