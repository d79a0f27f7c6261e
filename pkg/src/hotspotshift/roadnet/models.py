"""Road segments and per-type composition tables."""

from pydantic import BaseModel, ConfigDict, Field, field_validator

LatLon = tuple[float, float]


class RoadSegment(BaseModel):
    """An OSM way with a highway tag, as (lat, lon) vertices."""

    model_config = ConfigDict(frozen=True)

    way_id: int
    highway_type: str = Field(min_length=1)
    geometry: tuple[LatLon, ...] = Field(min_length=2)

    @field_validator("geometry")
    @classmethod
    def check_coordinates(cls, geometry: tuple[LatLon, ...]) -> tuple[LatLon, ...]:
        for lat, lon in geometry:
            if not (-90 <= lat <= 90 and -180 <= lon <= 180):
                raise ValueError(f"vertex ({lat}, {lon}) is not a WGS84 coordinate")
        return geometry


class RejectedWay(BaseModel):
    """A highway way that could not be turned into a segment."""

    way_id: int
    reason: str


class OsmParse(BaseModel):
    """Segments in file order plus the ways rejected along the way."""

    segments: list[RoadSegment] = Field(default_factory=list)
    rejected: list[RejectedWay] = Field(default_factory=list)
    n_nodes: int = 0


class RoadTypeRow(BaseModel):
    highway_type: str
    segment_count: int = Field(ge=1)
    count_percent: float
    normalized_percent: float  # share of total length
    total_length_m: float = Field(ge=0)


class RoadTypeStats(BaseModel):
    """Per-type rows, longest total length first."""

    rows: tuple[RoadTypeRow, ...] = ()

    @property
    def total_count(self) -> int:
        return sum(row.segment_count for row in self.rows)

    @property
    def total_length_m(self) -> float:
        return sum(row.total_length_m for row in self.rows)

    def row(self, highway_type: str) -> RoadTypeRow:
        for row in self.rows:
            if row.highway_type == highway_type:
                return row
        raise KeyError(highway_type)
