"""Loaders for accident CSVs, mobility reports and column schema files."""

import logging
import math
from datetime import datetime
from pathlib import Path
from typing import Optional
from zoneinfo import ZoneInfo, ZoneInfoNotFoundError

import pandas as pd

from ..config import read_key_values
from ..errors import ArgumentError, DataFileError, MobilityGapError, SchemaError
from .schemas import (
    AccidentLoad,
    AccidentRecord,
    AccidentSchema,
    FillPolicy,
    MobilitySeries,
    RejectedRow,
)

logger = logging.getLogger(__name__)

ATTRIBUTE_PREFIX = "attr."
SCHEMA_KEYS = {"timestamp", "latitude", "longitude", "timezone"}


def load_schema(path: str | Path) -> AccidentSchema:
    """Read an accident column mapping from a key=value file.

    Recognised keys are timestamp, latitude, longitude, timezone and
    attr.<name>=<column> for pass-through attributes.
    """
    values = read_key_values(path)
    attributes: dict[str, str] = {}
    fields: dict[str, str] = {}
    for key, value in values.items():
        if key.startswith(ATTRIBUTE_PREFIX):
            attributes[key[len(ATTRIBUTE_PREFIX):]] = value
        elif key in SCHEMA_KEYS:
            fields[key] = value
        else:
            raise SchemaError(f"Unknown key '{key}' in schema file {path}")

    missing = sorted({"timestamp", "latitude", "longitude"} - fields.keys())
    if missing:
        raise SchemaError(f"Schema file {path} does not map: {', '.join(missing)}")

    return AccidentSchema(**fields, attributes=attributes)


def _read_csv(path: Path, **kwargs) -> pd.DataFrame:
    """Read a CSV, translating pandas failures into package errors."""
    if not path.is_file():
        raise DataFileError(path, "file does not exist")
    try:
        return pd.read_csv(path, encoding="utf-8", **kwargs)
    except pd.errors.EmptyDataError as e:
        raise SchemaError(f"{path} has no header row") from e
    except (OSError, UnicodeDecodeError, pd.errors.ParserError) as e:
        raise DataFileError(path, str(e)) from e


def _text(value: object) -> str:
    if value is None or (isinstance(value, float) and math.isnan(value)):
        return ""
    return str(value).strip()


def _parse_coordinate(text: str, name: str, limit: float) -> tuple[Optional[float], Optional[str]]:
    try:
        value = float(text)
    except ValueError:
        return None, f"invalid {name} '{text}'"
    if not math.isfinite(value):
        return None, f"invalid {name} '{text}'"
    if not -limit <= value <= limit:
        return None, f"{name} out of range"
    return value, None


def load_accidents(path: str | Path, schema: AccidentSchema) -> AccidentLoad:
    """Load accident records from a CSV file.

    Rows that fail validation are listed in the returned report with their
    line number rather than dropped silently. Line numbers assume one physical
    line per record (header is line 1).

    Args:
        path: Accident CSV with a header row
        schema: Column mapping for the file

    Returns:
        AccidentLoad with the valid records in file order and the rejections
    """
    path = Path(path)
    try:
        zone = ZoneInfo(schema.timezone)
    except (ZoneInfoNotFoundError, ValueError) as e:
        raise SchemaError(f"Unknown timezone '{schema.timezone}'") from e

    frame = _read_csv(path, dtype=str, keep_default_na=False, skip_blank_lines=False)

    wanted = schema.mandatory_columns + list(schema.attributes.values())
    missing = [column for column in wanted if column not in frame.columns]
    if missing:
        raise SchemaError(f"{path} is missing column(s): {', '.join(missing)}")

    result = AccidentLoad()
    timestamps = frame[schema.timestamp].tolist()
    latitudes = frame[schema.latitude].tolist()
    longitudes = frame[schema.longitude].tolist()
    attribute_columns = {name: frame[column].tolist() for name, column in schema.attributes.items()}

    for offset, (raw_time, raw_lat, raw_lon) in enumerate(zip(timestamps, latitudes, longitudes)):
        line = offset + 2
        time_text = _text(raw_time)
        try:
            timestamp = datetime.fromisoformat(time_text)
        except ValueError:
            result.rejected.append(RejectedRow(line=line, reason=f"invalid timestamp '{time_text}'"))
            continue
        if timestamp.tzinfo is None:
            timestamp = timestamp.replace(tzinfo=zone)

        latitude, reason = _parse_coordinate(_text(raw_lat), "latitude", 90.0)
        if reason is None:
            longitude, reason = _parse_coordinate(_text(raw_lon), "longitude", 180.0)
        if reason is not None:
            result.rejected.append(RejectedRow(line=line, reason=reason))
            continue

        attributes = {name: _text(values[offset]) for name, values in attribute_columns.items()}
        result.records.append(
            AccidentRecord(
                timestamp=timestamp,
                latitude=latitude,
                longitude=longitude,
                attributes=attributes,
            )
        )

    logger.info(
        "Loaded %d accident records from %s (%d rejected)",
        len(result.records),
        path,
        len(result.rejected),
    )
    for row in result.rejected:
        logger.debug("Rejected line %d of %s: %s", row.line, path, row.reason)
    return result


def load_mobility(
    path: str | Path,
    categories: list[str],
    fill_policy: FillPolicy = "fail",
    filters: Optional[dict[str, str]] = None,
) -> MobilitySeries:
    """Load a daily combined mobility series from a mobility report CSV.

    The combined value of a day is the unweighted mean of the requested
    category columns. A day is missing when it is absent from the file or
    when any requested category is blank on it.

    Args:
        path: CSV with a `date` column and one column per category
        categories: Category columns to combine
        fill_policy: "fail" raises on the first missing day,
            "linear-interpolate" fills interior gaps linearly
        filters: Optional {column: value} row selection, e.g. a region

    Returns:
        Gap-free MobilitySeries
    """
    if not categories:
        raise ArgumentError("At least one mobility category is required")

    path = Path(path)
    frame = _read_csv(path, low_memory=False)

    if "date" not in frame.columns:
        raise SchemaError(f"{path} has no 'date' column")
    missing = [column for column in categories if column not in frame.columns]
    if missing:
        raise SchemaError(f"{path} is missing category column(s): {', '.join(missing)}")

    for column, wanted in (filters or {}).items():
        if column not in frame.columns:
            raise SchemaError(f"{path} has no filter column '{column}'")
        frame = frame[frame[column].astype(str) == wanted]
    if frame.empty:
        raise SchemaError(f"No rows of {path} match the mobility filters {filters}")

    dates = pd.to_datetime(frame["date"], format="%Y-%m-%d", errors="coerce")
    if dates.isna().any():
        bad = frame["date"][dates.isna()].iloc[0]
        raise SchemaError(f"{path} has an unparseable date '{bad}'")
    if dates.duplicated().any():
        dup = dates[dates.duplicated()].iloc[0].date()
        raise SchemaError(f"{path} has more than one row for {dup}; add a mobility filter")

    numbers = frame[categories].apply(pd.to_numeric, errors="coerce")
    # Rows whose categories agree keep that value exactly
    first = numbers.iloc[:, 0]
    agree = numbers.eq(first, axis=0).all(axis=1)
    mean = first.where(agree, numbers.mean(axis=1, skipna=False))
    combined = pd.Series(mean.to_numpy(), index=dates.to_numpy())
    combined = combined.sort_index()
    combined = combined.reindex(pd.date_range(combined.index[0], combined.index[-1], freq="D"))

    if fill_policy == "linear-interpolate" and combined.isna().any():
        filled = int(combined.isna().sum())
        combined = combined.interpolate(method="linear", limit_area="inside")
        logger.info("Interpolated %d missing mobility day(s) in %s", filled, path)

    gaps = combined.index[combined.isna()]
    if len(gaps):
        raise MobilityGapError(f"Mobility data in {path} has no value for {gaps[0].date()}")
    if len(combined) < 2:
        raise SchemaError(f"Mobility data in {path} covers fewer than two days")

    return MobilitySeries(
        start_date=combined.index[0].date(),
        values=tuple(float(v) for v in combined.to_numpy()),
        source_categories=tuple(categories),
    )
