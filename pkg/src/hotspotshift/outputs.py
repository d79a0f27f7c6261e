"""Result files: CSV tables, GeoJSON and text summaries carrying their parameters."""

from collections.abc import Mapping
from pathlib import Path
from typing import Optional

import geojson
import pandas as pd

from .errors import DataFileError


def provenance_lines(parameters: Optional[Mapping[str, str]]) -> list[str]:
    """`# key=value` comment lines, sorted by key."""
    return [f"# {key}={value}" for key, value in sorted((parameters or {}).items())]


def write_table(
    frame: pd.DataFrame, path: str | Path, parameters: Optional[Mapping[str, str]] = None
) -> Path:
    """Write a CSV preceded by its parameters as comment lines.

    Read it back with ``pandas.read_csv(path, comment="#")``.
    """
    path = Path(path)
    try:
        with path.open("w", newline="") as fh:
            for line in provenance_lines(parameters):
                fh.write(line + "\n")
            frame.to_csv(fh, index=False, lineterminator="\n")
    except OSError as e:
        raise DataFileError(path, e.strerror or str(e)) from e
    return path


def write_geojson(obj: geojson.GeoJSON, path: str | Path) -> Path:
    """Serialize with sorted keys so reruns are byte-identical."""
    path = Path(path)
    try:
        path.write_text(geojson.dumps(obj, sort_keys=True, indent=2) + "\n")
    except OSError as e:
        raise DataFileError(path, e.strerror or str(e)) from e
    return path


def write_summary(
    lines: list[str], path: str | Path, parameters: Optional[Mapping[str, str]] = None
) -> Path:
    """Plain-text report: the lines, then a parameters block."""
    path = Path(path)
    body = list(lines)
    if parameters:
        body += ["", "parameters:"] + [f"  {k}={v}" for k, v in sorted(parameters.items())]
    try:
        path.write_text("\n".join(body) + "\n")
    except OSError as e:
        raise DataFileError(path, e.strerror or str(e)) from e
    return path
