"""Tests for accident, mobility and window ingestion."""

from datetime import date, datetime, timedelta, timezone

import numpy as np
import pandas as pd
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from hotspotshift.errors import (
    ArgumentError,
    DataFileError,
    MobilityGapError,
    SchemaError,
)
from hotspotshift.ingest import (
    AccidentRecord,
    AccidentSchema,
    StudyWindow,
    baseline_window,
    load_accidents,
    load_mobility,
    load_schema,
    window_counts,
    window_records,
)

IDENTITY = AccidentSchema()


def record_on(day: date) -> AccidentRecord:
    return AccidentRecord(
        timestamp=datetime(day.year, day.month, day.day, 12, tzinfo=timezone.utc),
        latitude=40.75,
        longitude=-73.98,
    )


# --- load_accidents ---


def test_load_accidents_copies_fields(write_text):
    path = write_text("acc.csv", "date,latitude,longitude\n2020-03-15,40.7580,-73.9855\n")
    load = load_accidents(path, IDENTITY)

    assert load.rejected == []
    [record] = load.records
    assert record.latitude == 40.7580
    assert record.longitude == -73.9855
    assert record.day == date(2020, 3, 15)
    assert record.timestamp.tzinfo is not None


def test_load_accidents_rejects_latitude_out_of_range(write_text):
    path = write_text("acc.csv", "date,latitude,longitude\n2020-03-15,95.0,-73.9855\n")
    load = load_accidents(path, IDENTITY)

    assert load.records == []
    assert load.rejected[0].line == 2
    assert load.rejected[0].reason == "latitude out of range"


def test_load_accidents_five_row_fixture(write_text):
    path = write_text(
        "acc.csv",
        """
        date,latitude,longitude
        2020-03-01,40.71,-74.00
        2020-03-02,40.72,-74.01
        2020-13-45,40.73,-74.02
        2020-03-04,40.74,-74.03
        2020-03-05T08:30:00,40.75,-74.04
        """,
    )
    load = load_accidents(path, IDENTITY)

    assert len(load.records) == 4
    assert [row.line for row in load.rejected] == [4]
    assert "timestamp" in load.rejected[0].reason
    # file order is preserved
    assert [r.latitude for r in load.records] == [40.71, 40.72, 40.74, 40.75]


def test_load_accidents_keeps_attributes(write_text):
    path = write_text(
        "acc.csv",
        """
        CRASH DATE,LAT,LON,SEVERITY
        2020-03-15,40.7580,-73.9855,minor
        """,
    )
    schema = AccidentSchema(
        timestamp="CRASH DATE", latitude="LAT", longitude="LON", attributes={"severity": "SEVERITY"}
    )
    [record] = load_accidents(path, schema).records
    assert record.attributes == {"severity": "minor"}


def test_load_accidents_local_timezone(write_text):
    path = write_text("acc.csv", "date,latitude,longitude\n2020-03-15T23:30:00,40.7,-74.0\n")
    schema = AccidentSchema(timezone="America/New_York")
    [record] = load_accidents(path, schema).records

    assert record.day == date(2020, 3, 15)
    assert record.timestamp.utcoffset() == timedelta(hours=-4)


def test_load_accidents_missing_column(write_text):
    path = write_text("acc.csv", "date,latitude\n2020-03-15,40.7580\n")
    with pytest.raises(SchemaError, match="longitude"):
        load_accidents(path, IDENTITY)


def test_load_accidents_missing_file(tmp_path):
    with pytest.raises(DataFileError, match="does not exist"):
        load_accidents(tmp_path / "nope.csv", IDENTITY)


def test_load_accidents_unknown_timezone(write_text):
    path = write_text("acc.csv", "date,latitude,longitude\n2020-03-15,40.7,-74.0\n")
    with pytest.raises(SchemaError, match="timezone"):
        load_accidents(path, AccidentSchema(timezone="Mars/Olympus"))


# --- load_schema ---


def test_load_schema(write_text):
    path = write_text(
        "schema.txt",
        """
        timestamp=CRASH DATE
        latitude=LATITUDE
        longitude=LONGITUDE
        timezone=America/New_York
        attr.severity=NUMBER OF PERSONS INJURED
        """,
    )
    schema = load_schema(path)

    assert schema.timestamp == "CRASH DATE"
    assert schema.timezone == "America/New_York"
    assert schema.attributes == {"severity": "NUMBER OF PERSONS INJURED"}


def test_load_schema_unknown_key(write_text):
    path = write_text("schema.txt", "timestamp=a\nlatitude=b\nlongitude=c\ncolour=red\n")
    with pytest.raises(SchemaError, match="colour"):
        load_schema(path)


def test_load_schema_incomplete(write_text):
    path = write_text("schema.txt", "timestamp=a\n")
    with pytest.raises(SchemaError, match="latitude, longitude"):
        load_schema(path)


# --- load_mobility ---


def test_load_mobility_mean_of_categories(write_text):
    path = write_text(
        "mob.csv",
        """
        date,a,b
        2020-03-01,-10,-30
        2020-03-02,0,0
        """,
    )
    series = load_mobility(path, ["a", "b"])
    assert series.values == (-20.0, 0.0)
    assert series.start_date == date(2020, 3, 1)
    assert series.source_categories == ("a", "b")


def test_load_mobility_single_category_identity(write_text):
    path = write_text("mob.csv", "date,a\n2020-03-01,0\n2020-03-02,-5\n2020-03-03,-10\n")
    assert load_mobility(path, ["a"]).values == (0.0, -5.0, -10.0)


def test_load_mobility_sorts_by_date(write_text):
    path = write_text("mob.csv", "date,a\n2020-03-03,-10\n2020-03-01,0\n2020-03-02,-5\n")
    series = load_mobility(path, ["a"])
    assert series.values == (0.0, -5.0, -10.0)
    assert series.date_at(2) == date(2020, 3, 3)


def test_load_mobility_interpolates_missing_day(write_text):
    path = write_text("mob.csv", "date,a\n2020-03-01,0\n2020-03-03,-10\n")
    series = load_mobility(path, ["a"], fill_policy="linear-interpolate")
    assert series.values == (0.0, -5.0, -10.0)


def test_load_mobility_interpolates_blank_value(write_text):
    path = write_text("mob.csv", "date,a,b\n2020-03-01,0,0\n2020-03-02,,-4\n2020-03-03,-10,-10\n")
    series = load_mobility(path, ["a", "b"], fill_policy="linear-interpolate")
    assert series.values == (0.0, -5.0, -10.0)


def test_load_mobility_gap_names_missing_date(write_text):
    path = write_text("mob.csv", "date,a\n2020-03-01,0\n2020-03-03,-10\n")
    with pytest.raises(MobilityGapError, match="2020-03-02"):
        load_mobility(path, ["a"])


def test_load_mobility_empty_categories(write_text):
    path = write_text("mob.csv", "date,a\n2020-03-01,0\n2020-03-02,0\n")
    with pytest.raises(ArgumentError):
        load_mobility(path, [])


def test_load_mobility_missing_category(write_text):
    path = write_text("mob.csv", "date,a\n2020-03-01,0\n2020-03-02,0\n")
    with pytest.raises(SchemaError, match="b"):
        load_mobility(path, ["a", "b"])


def test_load_mobility_filters_rows(write_text):
    path = write_text(
        "mob.csv",
        """
        country,date,a
        US,2020-03-01,-1
        GB,2020-03-01,-50
        US,2020-03-02,-2
        GB,2020-03-02,-60
        """,
    )
    series = load_mobility(path, ["a"], filters={"country": "US"})
    assert series.values == (-1.0, -2.0)


def test_load_mobility_duplicate_dates_need_filter(write_text):
    path = write_text("mob.csv", "country,date,a\nUS,2020-03-01,-1\nGB,2020-03-01,-50\n")
    with pytest.raises(SchemaError, match="mobility filter"):
        load_mobility(path, ["a"])


@given(
    values=st.lists(
        st.floats(min_value=-100, max_value=300, allow_nan=False), min_size=2, max_size=20
    ),
    k=st.integers(min_value=1, max_value=5),
)
@settings(max_examples=40, deadline=None)
def test_identical_categories_combine_to_the_column(tmp_path_factory, values, k):
    start = date(2021, 1, 1)
    frame = pd.DataFrame({"date": [(start + timedelta(days=i)).isoformat() for i in range(len(values))]})
    for j in range(k):
        frame[f"c{j}"] = values
    path = tmp_path_factory.mktemp("mob") / "mob.csv"
    frame.to_csv(path, index=False)

    series = load_mobility(path, [f"c{j}" for j in range(k)])
    expected = load_mobility(path, ["c0"])
    np.testing.assert_array_equal(series.as_array(), expected.as_array())



def test_identical_categories_keep_exact_values(write_text):
    path = write_text(
        "mob.csv",
        "date,a,b,c\n2020-03-01,0.1,0.1,0.1\n2020-03-02,-12.3,-12.3,-12.3\n2020-03-03,1,2,\n2020-03-04,1,2,4\n",
    )
    series = load_mobility(path, ["a", "b"], fill_policy="linear-interpolate")
    assert series.values[:2] == (0.1, -12.3)

    three = load_mobility(path, ["a", "b", "c"], fill_policy="linear-interpolate")
    assert three.values[0] == 0.1
    assert three.values[3] == pytest.approx(7 / 3)


# --- windows ---


def test_window_records_boundaries():
    change = date(2020, 3, 15)
    records = [record_on(change + timedelta(days=d)) for d in (-31, -5, 2, 31)]
    before, after = window_records(records, StudyWindow(change_date=change))

    assert [r.day for r in before] == [change - timedelta(days=5)]
    assert [r.day for r in after] == [change + timedelta(days=2)]


def test_window_records_edges_are_half_open():
    change = date(2020, 3, 15)
    records = [record_on(change + timedelta(days=d)) for d in (-30, -1, 0, 29, 30)]
    before, after = window_records(records, StudyWindow(change_date=change))

    assert len(before) == 2
    assert [r.day for r in after] == [change, change + timedelta(days=29)]


def test_window_records_empty():
    assert window_records([], StudyWindow(change_date=date(2020, 3, 15))) == ([], [])


def test_window_records_matches_brute_force():
    rng = np.random.default_rng(3)
    first = date(2020, 1, 1)
    offsets = rng.integers(0, 120, size=100)
    records = [record_on(first + timedelta(days=int(d))) for d in offsets]
    window = StudyWindow(change_date=date(2020, 3, 1), days_before=30, days_after=20)

    before, after = window_records(records, window)

    expected_before = [r for r in records if date(2020, 1, 31) <= r.day < date(2020, 3, 1)]
    expected_after = [r for r in records if date(2020, 3, 1) <= r.day < date(2020, 3, 21)]
    assert before == expected_before
    assert after == expected_after


def test_window_records_leaves_out_overlap():
    window = StudyWindow(change_date=date(2020, 3, 15), days_before=3, days_after=3)
    assert window.before_start == date(2020, 3, 12)
    assert window.after_end == date(2020, 3, 18)
    assert not (window.in_before(date(2020, 3, 15)) and window.in_after(date(2020, 3, 15)))


def test_baseline_window_same_dates_one_year_back():
    window = StudyWindow(change_date=date(2020, 3, 15), days_before=10, days_after=20)
    baseline = baseline_window(window)

    assert baseline.change_date == date(2019, 3, 15)
    assert (baseline.days_before, baseline.days_after) == (10, 20)


def test_baseline_window_leap_day():
    window = StudyWindow(change_date=date(2020, 2, 29))
    assert baseline_window(window).change_date == date(2019, 2, 28)
    assert baseline_window(window, years_back=4).change_date == date(2016, 2, 29)


def test_baseline_window_rejects_zero_years():
    with pytest.raises(ArgumentError):
        baseline_window(StudyWindow(change_date=date(2020, 3, 15)), years_back=0)


def test_window_counts():
    day = date(2020, 3, 1)
    counts = window_counts([record_on(day)] * 4, [record_on(day)] * 3)
    assert (counts.n_before, counts.n_after) == (4, 3)
    assert counts.percent_change == pytest.approx(-25.0)


def test_window_counts_empty_before():
    counts = window_counts([], [record_on(date(2020, 3, 1))])
    assert counts.percent_change is None
