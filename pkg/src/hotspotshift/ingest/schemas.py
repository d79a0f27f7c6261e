"""Schemas for accident records, mobility series and study windows."""

from datetime import date, datetime, timedelta
from typing import Literal

import numpy as np
from pydantic import BaseModel, ConfigDict, Field, PositiveInt, field_validator

FillPolicy = Literal["fail", "linear-interpolate"]


class AccidentSchema(BaseModel):
    """Mapping from logical accident fields to source CSV column names."""

    model_config = ConfigDict(frozen=True)

    timestamp: str = "date"
    latitude: str = "latitude"
    longitude: str = "longitude"
    timezone: str = "UTC"
    # Pass-through fields: logical name -> source column
    attributes: dict[str, str] = Field(default_factory=dict)

    @property
    def mandatory_columns(self) -> list[str]:
        return [self.timestamp, self.latitude, self.longitude]


class AccidentRecord(BaseModel):
    """A single geolocated traffic accident."""

    model_config = ConfigDict(frozen=True)

    timestamp: datetime
    latitude: float = Field(ge=-90, le=90)
    longitude: float = Field(ge=-180, le=180)
    attributes: dict[str, str] = Field(default_factory=dict)

    @property
    def day(self) -> date:
        """Calendar date of the accident in its own zone."""
        return self.timestamp.date()


class RejectedRow(BaseModel):
    """A source row that could not be turned into a record."""

    line: int  # 1-based line in the source file, header is line 1
    reason: str


class AccidentLoad(BaseModel):
    """Records loaded from one accident file plus the rejection report."""

    records: list[AccidentRecord] = Field(default_factory=list)
    rejected: list[RejectedRow] = Field(default_factory=list)


class MobilitySeries(BaseModel):
    """Daily combined mobility percent change from baseline, gap free."""

    model_config = ConfigDict(frozen=True)

    start_date: date
    values: tuple[float, ...] = Field(min_length=2)
    source_categories: tuple[str, ...]

    @field_validator("values")
    @classmethod
    def values_finite(cls, values: tuple[float, ...]) -> tuple[float, ...]:
        if not all(np.isfinite(values)):
            raise ValueError("mobility values must be finite")
        return values

    def __len__(self) -> int:
        return len(self.values)

    def as_array(self) -> np.ndarray:
        return np.asarray(self.values, dtype=float)

    def date_at(self, index: int) -> date:
        """Calendar date of entry `index`."""
        return self.start_date + timedelta(days=index)


class StudyWindow(BaseModel):
    """Adjacent before/after windows around a change date.

    before covers [change_date - days_before, change_date),
    after covers [change_date, change_date + days_after).
    """

    model_config = ConfigDict(frozen=True)

    change_date: date
    days_before: PositiveInt = 30
    days_after: PositiveInt = 30

    @property
    def before_start(self) -> date:
        return self.change_date - timedelta(days=self.days_before)

    @property
    def after_end(self) -> date:
        return self.change_date + timedelta(days=self.days_after)

    def in_before(self, day: date) -> bool:
        return self.before_start <= day < self.change_date

    def in_after(self, day: date) -> bool:
        return self.change_date <= day < self.after_end


class WindowCounts(BaseModel):
    """Accident counts on either side of a change date."""

    n_before: int
    n_after: int
    percent_change: float | None  # None when the before window is empty
