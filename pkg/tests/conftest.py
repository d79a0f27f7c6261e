"""Shared fixtures: synthetic inputs written into tmp_path."""

import math
import textwrap
from datetime import date, timedelta
from pathlib import Path

import numpy as np
import pandas as pd
import pytest

from hotspotshift.config import get_settings

EARTH_RADIUS_M = 6_371_000.0

MOBILITY_START = date(2020, 2, 1)
PLANTED_INDEX = 43  # 2020-03-15
PLANTED_DATE = MOBILITY_START + timedelta(days=PLANTED_INDEX)

CLUSTER_LAT = 40.70
CLUSTER_LON = -74.00


def planted_step(rng: np.random.Generator, n_days: int = 90, at: int = PLANTED_INDEX,
                 drop: float = -71.0, sigma: float = 5.0) -> np.ndarray:
    """Mobility values that fall by `drop` points at index `at`, plus gaussian noise."""
    values = np.where(np.arange(n_days) < at, 0.0, drop)
    return values + rng.normal(0.0, sigma, n_days)


def meters_to_degrees(lat: float, east_m: np.ndarray, north_m: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
    dlat = np.degrees(north_m / EARTH_RADIUS_M)
    dlon = np.degrees(east_m / (EARTH_RADIUS_M * math.cos(math.radians(lat))))
    return dlat, dlon


def scatter(rng: np.random.Generator, n: int, lat: float, lon: float, sigma_m: float,
            east_shift_m: float = 0.0) -> tuple[np.ndarray, np.ndarray]:
    """n points normally scattered around (lat, lon), optionally moved east."""
    east = rng.normal(east_shift_m, sigma_m, n)
    north = rng.normal(0.0, sigma_m, n)
    dlat, dlon = meters_to_degrees(lat, east, north)
    return lat + dlat, lon + dlon


def accident_frame(days: list[date], lats: np.ndarray, lons: np.ndarray) -> pd.DataFrame:
    return pd.DataFrame(
        {
            "date": [d.isoformat() for d in days],
            "latitude": [f"{v:.7f}" for v in lats],
            "longitude": [f"{v:.7f}" for v in lons],
        }
    )


def spread_days(start: date, n_days: int, n: int) -> list[date]:
    return [start + timedelta(days=i % n_days) for i in range(n)]


@pytest.fixture(autouse=True)
def fresh_settings(monkeypatch):
    """Keep environment overrides from leaking between tests."""
    for name in ("HOTSPOTSHIFT_OUTPUT_DIR", "HOTSPOTSHIFT_LOG_LEVEL", "HOTSPOTSHIFT_SEED",
                 "HOTSPOTSHIFT_MAX_GRID_CELLS"):
        monkeypatch.delenv(name, raising=False)
    get_settings.cache_clear()
    yield
    get_settings.cache_clear()


@pytest.fixture
def write_text(tmp_path):
    """Write dedented text into tmp_path and return the path."""

    def write(name: str, content: str) -> Path:
        path = tmp_path / name
        path.write_text(textwrap.dedent(content).lstrip())
        return path

    return write


@pytest.fixture
def mobility_csv(tmp_path) -> Path:
    """Two identical categories with a -71 point drop on 2020-03-15."""
    values = planted_step(np.random.default_rng(7))
    frame = pd.DataFrame(
        {
            "date": [(MOBILITY_START + timedelta(days=i)).isoformat() for i in range(len(values))],
            "retail": values,
            "transit": values,
        }
    )
    path = tmp_path / "mobility.csv"
    frame.to_csv(path, index=False)
    return path


@pytest.fixture
def constant_mobility_csv(tmp_path) -> Path:
    frame = pd.DataFrame(
        {
            "date": [(MOBILITY_START + timedelta(days=i)).isoformat() for i in range(40)],
            "retail": [-12.0] * 40,
        }
    )
    path = tmp_path / "constant.csv"
    frame.to_csv(path, index=False)
    return path


@pytest.fixture
def shifted_accidents_csv(tmp_path) -> Path:
    """200 accidents per window; the after-window cluster sits 5 km east."""
    rng = np.random.default_rng(11)
    before_lats, before_lons = scatter(rng, 200, CLUSTER_LAT, CLUSTER_LON, 300.0)
    after_lats, after_lons = scatter(rng, 200, CLUSTER_LAT, CLUSTER_LON, 300.0, east_shift_m=5000.0)
    frame = pd.concat(
        [
            accident_frame(spread_days(PLANTED_DATE - timedelta(days=30), 30, 200), before_lats, before_lons),
            accident_frame(spread_days(PLANTED_DATE, 30, 200), after_lats, after_lons),
        ]
    )
    path = tmp_path / "accidents.csv"
    frame.to_csv(path, index=False)
    return path


@pytest.fixture
def repeated_accidents_csv(tmp_path) -> Path:
    """The after window repeats the before window's locations in the same order."""
    rng = np.random.default_rng(5)
    lats, lons = scatter(rng, 150, CLUSTER_LAT, CLUSTER_LON, 400.0)
    frame = pd.concat(
        [
            accident_frame(spread_days(PLANTED_DATE - timedelta(days=30), 30, 150), lats, lons),
            accident_frame(spread_days(PLANTED_DATE, 30, 150), lats, lons),
        ]
    )
    path = tmp_path / "repeated.csv"
    frame.to_csv(path, index=False)
    return path


THREE_WAY_OSM = """\
<?xml version="1.0" encoding="UTF-8"?>
<osm version="0.6">
  <node id="1" lat="{lat0}" lon="0.0"/>
  <node id="2" lat="{lat1}" lon="0.0"/>
  <node id="3" lat="{lat0}" lon="0.01"/>
  <node id="4" lat="{lat1}" lon="0.01"/>
  <node id="5" lat="{lat0}" lon="0.02"/>
  <node id="6" lat="{lat3}" lon="0.02"/>
  <node id="7" lat="{lat0}" lon="0.03"/>
  <node id="8" lat="{lat1}" lon="0.03"/>
  <way id="10">
    <nd ref="1"/><nd ref="2"/>
    <tag k="highway" v="residential"/>
  </way>
  <way id="11">
    <nd ref="3"/><nd ref="4"/>
    <tag k="highway" v="residential"/>
    <tag k="name" v="Side Street"/>
  </way>
  <way id="12">
    <nd ref="5"/><nd ref="6"/>
    <tag k="highway" v="primary"/>
  </way>
  <way id="13">
    <nd ref="7"/><nd ref="8"/>
    <tag k="waterway" v="stream"/>
  </way>
</osm>
"""


def lat_for_meters(meters: float) -> float:
    return math.degrees(meters / EARTH_RADIUS_M)


@pytest.fixture
def three_way_osm(tmp_path) -> Path:
    """Two 100 m residential ways and one 300 m primary way along meridians."""
    path = tmp_path / "roads.osm"
    path.write_text(
        THREE_WAY_OSM.format(
            lat0=repr(0.0),
            lat1=repr(lat_for_meters(100.0)),
            lat3=repr(lat_for_meters(300.0)),
        )
    )
    return path


@pytest.fixture
def covering_region(write_text) -> Path:
    return write_text(
        "region.geojson",
        """
        {"type": "Feature", "properties": {},
         "geometry": {"type": "Polygon",
                      "coordinates": [[[-1, -1], [1, -1], [1, 1], [-1, 1], [-1, -1]]]}}
        """,
    )


@pytest.fixture
def distant_region(write_text) -> Path:
    return write_text(
        "nowhere.geojson",
        """
        {"type": "Polygon",
         "coordinates": [[[10, 10], [11, 10], [11, 11], [10, 11], [10, 10]]]}
        """,
    )
