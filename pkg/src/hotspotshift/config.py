"""Configuration management for hotspot-shift."""

import os
from datetime import date
from functools import lru_cache
from pathlib import Path
from typing import Any, Literal, Optional

from dotenv import dotenv_values, load_dotenv
from pydantic import BaseModel, ConfigDict, Field, ValidationError, field_validator

from .errors import DataFileError, SchemaError

# Google Community Mobility columns that measure trips out of the home.
DEFAULT_CATEGORIES = [
    "retail_and_recreation_percent_change_from_baseline",
    "grocery_and_pharmacy_percent_change_from_baseline",
    "parks_percent_change_from_baseline",
    "transit_stations_percent_change_from_baseline",
    "workplaces_percent_change_from_baseline",
]

FILTER_PREFIX = "mobility_filter."

# Short names accepted for segment cost kinds
COST_ALIASES = {"l2": "l2-mean"}


class Settings(BaseModel):
    """Application settings."""

    output_dir: str = "output"
    log_level: str = "INFO"
    seed: int = 0
    max_grid_cells: int = 4_000_000


@lru_cache
def get_settings() -> Settings:
    """Load settings from environment variables."""
    load_dotenv()

    return Settings(
        output_dir=os.getenv("HOTSPOTSHIFT_OUTPUT_DIR", "output"),
        log_level=os.getenv("HOTSPOTSHIFT_LOG_LEVEL", "INFO"),
        seed=int(os.getenv("HOTSPOTSHIFT_SEED", "0")),
        max_grid_cells=int(os.getenv("HOTSPOTSHIFT_MAX_GRID_CELLS", "4000000")),
    )


class PipelineConfig(BaseModel):
    """Resolved parameters for one run of the analysis pipeline."""

    model_config = ConfigDict(extra="forbid")

    # Inputs
    accidents: Optional[Path] = None
    schema_file: Optional[Path] = None
    mobility: Optional[Path] = None
    osm: Optional[Path] = None
    road_colors: Optional[Path] = None

    # Mobility and change point
    categories: list[str] = Field(default_factory=lambda: list(DEFAULT_CATEGORIES))
    mobility_filters: dict[str, str] = Field(default_factory=dict)
    fill_policy: Literal["fail", "linear-interpolate"] = "fail"
    beta: Optional[float] = Field(default=None, ge=0)
    cost: Literal["l2-mean", "l2-constant-reference"] = "l2-mean"
    cost_reference: float = 0.0
    min_seg_len: int = Field(default=2, ge=1)

    # Windows
    change_date: Optional[date] = None
    days_before: int = Field(default=30, gt=0)
    days_after: int = Field(default=30, gt=0)
    baseline_years: int = Field(default=0, ge=0)

    # Density and test
    cell_size_m: float = Field(default=250.0, gt=0)
    bandwidth: str = "silverman"
    kernel: Literal["gaussian", "epanechnikov"] = "gaussian"
    max_grid_cells: int = Field(default=4_000_000, gt=0)
    quantile: float = Field(default=0.95, gt=0, lt=1)
    n_permutations: int = Field(default=999, ge=99)
    seed: int = 0
    write_null: bool = False

    output_dir: Path = Path("output")

    @field_validator("cost", mode="before")
    @classmethod
    def expand_cost_alias(cls, value: Any) -> Any:
        return COST_ALIASES.get(value, value) if isinstance(value, str) else value

    @field_validator("categories", mode="before")
    @classmethod
    def split_categories(cls, value: Any) -> Any:
        if isinstance(value, str):
            return [part.strip() for part in value.split(",") if part.strip()]
        return value

    def echo(self) -> dict[str, str]:
        """Flat parameter set embedded into every output artifact."""
        dumped = self.model_dump(mode="json", exclude={"output_dir"})
        echo: dict[str, str] = {}
        for key, value in dumped.items():
            if key == "mobility_filters":
                for column, wanted in sorted(value.items()):
                    echo[f"{FILTER_PREFIX}{column}"] = wanted
            elif isinstance(value, list):
                echo[key] = ",".join(value)
            elif value is None:
                continue
            else:
                echo[key] = str(value)
        return echo

    def require_files(self, *names: str) -> None:
        """Check that the named path parameters are set and point at files."""
        for name in names:
            path = getattr(self, name)
            if path is None:
                raise SchemaError(f"Config parameter '{name}' is required for this command")
            if not Path(path).is_file():
                raise DataFileError(path, "file does not exist")

    def prepare_output_dir(self) -> Path:
        """Create the output directory and check it is writable."""
        try:
            self.output_dir.mkdir(parents=True, exist_ok=True)
        except OSError as e:
            raise DataFileError(self.output_dir, str(e)) from e
        if not os.access(self.output_dir, os.W_OK):
            raise DataFileError(self.output_dir, "directory is not writable")
        return self.output_dir


def read_key_values(path: str | Path) -> dict[str, str]:
    """Read a flat key=value text file.

    Blank values are dropped so that "key=" falls back to the default.
    """
    path = Path(path)
    if not path.is_file():
        raise DataFileError(path, "file does not exist")
    values = dotenv_values(path)
    return {key: value for key, value in values.items() if value not in (None, "")}


def load_pipeline_config(
    path: Optional[str | Path] = None,
    overrides: Optional[dict[str, Any]] = None,
) -> PipelineConfig:
    """Build a PipelineConfig from a config file plus command-line overrides.

    Args:
        path: Optional key=value config file
        overrides: Values from command-line flags; None entries are ignored

    Returns:
        Validated PipelineConfig
    """
    settings = get_settings()
    raw: dict[str, Any] = {
        "output_dir": settings.output_dir,
        "seed": settings.seed,
        "max_grid_cells": settings.max_grid_cells,
    }

    filters: dict[str, str] = {}
    file_values = read_key_values(path) if path else {}
    for key, value in file_values.items():
        if key.startswith(FILTER_PREFIX):
            filters[key[len(FILTER_PREFIX):]] = value
        else:
            raw[key] = value

    for key, value in (overrides or {}).items():
        if value is None:
            continue
        if key == "mobility_filters":
            filters.update(value)
        else:
            raw[key] = value

    raw["mobility_filters"] = filters

    try:
        return PipelineConfig.model_validate(raw)
    except ValidationError as e:
        problems = "; ".join(
            f"{'.'.join(str(p) for p in err['loc'])}: {err['msg']}" for err in e.errors()
        )
        raise SchemaError(f"Invalid configuration: {problems}") from e
