"""Tests for OSM parsing, road lengths, region clipping and type statistics."""

import math

import pytest
import shapely
from hypothesis import given, settings
from hypothesis import strategies as st

from hotspotshift.errors import DataFileError, GeometryError, OsmParseError, SchemaError
from hotspotshift.roadnet import (
    DEFAULT_ROAD_COLORS,
    RoadSegment,
    as_region,
    clip_to_region,
    load_region,
    load_road_colors,
    parse_osm,
    road_color,
    segment_length,
    segments_feature_collection,
    stats_frame,
    type_stats,
)
from hotspotshift.roadnet.export import FALLBACK_COLOR, STATS_COLUMNS

from .conftest import lat_for_meters

SQUARE = {"type": "Polygon", "coordinates": [[[0, 0], [1, 0], [1, 1], [0, 1], [0, 0]]]}


def road(highway: str, *vertices: tuple[float, float], way_id: int = 1) -> RoadSegment:
    return RoadSegment(way_id=way_id, highway_type=highway, geometry=vertices)


def meridian_road(highway: str, meters: float, way_id: int = 1) -> RoadSegment:
    return road(highway, (0.0, 0.0), (lat_for_meters(meters), 0.0), way_id=way_id)


# --- parse_osm ---


def test_parse_single_way(write_text):
    path = write_text(
        "one.osm",
        """
        <?xml version="1.0"?>
        <osm>
          <node id="1" lat="40.70" lon="-74.00"/>
          <node id="2" lat="40.71" lon="-74.00"/>
          <node id="3" lat="40.72" lon="-74.01"/>
          <way id="7">
            <nd ref="1"/><nd ref="2"/><nd ref="3"/>
            <tag k="highway" v="residential"/>
          </way>
        </osm>
        """,
    )
    parsed = parse_osm(path)

    [segment] = parsed.segments
    assert segment.way_id == 7
    assert segment.highway_type == "residential"
    assert segment.geometry == ((40.70, -74.00), (40.71, -74.00), (40.72, -74.01))
    assert parsed.n_nodes == 3
    assert parsed.rejected == []


def test_parse_skips_ways_without_highway_tag(three_way_osm):
    parsed = parse_osm(three_way_osm)
    assert [s.way_id for s in parsed.segments] == [10, 11, 12]
    assert {s.highway_type for s in parsed.segments} == {"residential", "primary"}


def test_parse_rejects_way_with_missing_node(write_text):
    path = write_text(
        "missing.osm",
        """
        <osm>
          <way id="1"><nd ref="1"/><nd ref="2"/><tag k="highway" v="service"/></way>
          <way id="2"><nd ref="1"/><nd ref="99"/><tag k="highway" v="service"/></way>
          <node id="1" lat="0.0" lon="0.0"/>
          <node id="2" lat="0.001" lon="0.0"/>
        </osm>
        """,
    )
    parsed = parse_osm(path)

    assert [s.way_id for s in parsed.segments] == [1]
    [rejected] = parsed.rejected
    assert rejected.way_id == 2
    assert rejected.reason == "missing node 99"


def test_parse_rejects_single_node_way(write_text):
    path = write_text(
        "short.osm",
        """
        <osm>
          <node id="1" lat="0.0" lon="0.0"/>
          <way id="5"><nd ref="1"/><tag k="highway" v="footway"/></way>
        </osm>
        """,
    )
    parsed = parse_osm(path)
    assert parsed.segments == []
    assert parsed.rejected[0].reason == "fewer than 2 nodes"


def test_parse_keeps_link_types(write_text):
    path = write_text(
        "link.osm",
        """
        <osm>
          <node id="1" lat="0.0" lon="0.0"/>
          <node id="2" lat="0.001" lon="0.0"/>
          <way id="5"><nd ref="1"/><nd ref="2"/><tag k="highway" v="motorway_link"/></way>
        </osm>
        """,
    )
    assert parse_osm(path).segments[0].highway_type == "motorway_link"


def test_parse_malformed_xml_reports_byte_offset(write_text):
    path = write_text("bad.osm", '<osm>\n  <node id="1" lat="0" lon="0">\n</osm>\n')
    with pytest.raises(OsmParseError, match="byte offset") as info:
        parse_osm(path)
    # the mismatched close tag is on the third line, which starts at byte 38
    assert 38 <= info.value.byte_offset <= 44


def test_parse_error_offset_counts_bytes_not_characters(tmp_path):
    def offset_for(name_tag: str) -> tuple[int, bytes]:
        data = f'<osm><node id="1" lat="0" lon="0"><tag k="name" v="{name_tag}"/>&</node></osm>'.encode()
        path = tmp_path / "names.osm"
        path.write_bytes(data)
        with pytest.raises(OsmParseError) as info:
            parse_osm(path)
        return info.value.byte_offset, data

    ascii_offset, ascii_data = offset_for("U" * 10)
    wide_offset, wide_data = offset_for("Ü" * 10)

    # each Ü takes two bytes in UTF-8
    assert wide_offset - ascii_offset == 10
    assert wide_data[wide_offset:] == ascii_data[ascii_offset:]
    assert abs(wide_offset - wide_data.index(b"&")) <= 1


def test_parse_missing_file(tmp_path):
    with pytest.raises(DataFileError):
        parse_osm(tmp_path / "absent.osm")


# --- lengths ---


def test_length_of_a_hundredth_degree_of_latitude():
    seg = road("residential", (40.0, -74.0), (40.01, -74.0))
    assert segment_length(seg) == pytest.approx(1111.95, rel=1e-4)


def test_repeated_vertex_adds_nothing():
    once = road("residential", (40.0, -74.0), (40.01, -74.0))
    twice = road("residential", (40.0, -74.0), (40.0, -74.0), (40.01, -74.0))
    assert segment_length(twice) == segment_length(once)


def test_collinear_vertices_match_the_endpoints():
    direct = road("primary", (40.70, -74.00), (40.72, -74.00))
    via = road("primary", (40.70, -74.00), (40.71, -74.00), (40.72, -74.00))
    assert segment_length(via) == pytest.approx(segment_length(direct), rel=1e-4)


# --- type_stats ---


def test_type_stats_hand_table(three_way_osm):
    stats = type_stats(parse_osm(three_way_osm).segments)

    assert [row.highway_type for row in stats.rows] == ["primary", "residential"]
    residential = stats.row("residential")
    primary = stats.row("primary")
    assert residential.segment_count == 2
    assert residential.count_percent == pytest.approx(200 / 3)
    assert primary.count_percent == pytest.approx(100 / 3)
    assert residential.normalized_percent == pytest.approx(40.0)
    assert primary.normalized_percent == pytest.approx(60.0)
    assert residential.total_length_m == pytest.approx(200.0)
    assert primary.total_length_m == pytest.approx(300.0)


def test_type_stats_single_type():
    stats = type_stats([meridian_road("service", 50.0), meridian_road("service", 70.0)])
    [row] = stats.rows
    assert row.count_percent == 100.0
    assert row.normalized_percent == 100.0


def test_type_stats_empty():
    stats = type_stats([])
    assert stats.rows == ()
    assert stats.total_count == 0
    assert stats_frame(stats).columns.tolist() == STATS_COLUMNS


def test_type_stats_zero_length_network():
    stats = type_stats([road("service", (1.0, 1.0), (1.0, 1.0))])
    assert stats.rows[0].normalized_percent == 0.0
    assert stats.rows[0].count_percent == 100.0


def test_type_stats_rows_tie_break_on_name():
    stats = type_stats([meridian_road("tertiary", 100.0), meridian_road("secondary", 100.0)])
    assert [row.highway_type for row in stats.rows] == ["secondary", "tertiary"]


networks = st.lists(
    st.tuples(
        st.sampled_from(["residential", "primary", "service", "motorway_link"]),
        st.floats(min_value=1.0, max_value=5000.0),
    ),
    min_size=1,
    max_size=30,
)


@given(network=networks)
@settings(max_examples=60, deadline=None)
def test_percentages_close_to_one_hundred(network):
    stats = type_stats([meridian_road(kind, meters) for kind, meters in network])
    assert sum(row.count_percent for row in stats.rows) == pytest.approx(100.0)
    assert sum(row.normalized_percent for row in stats.rows) == pytest.approx(100.0)
    assert stats.total_count == len(network)


@given(first=networks, second=networks)
@settings(max_examples=40, deadline=None)
def test_counts_and_lengths_add_over_disjoint_networks(first, second):
    a = [meridian_road(kind, meters) for kind, meters in first]
    b = [meridian_road(kind, meters) for kind, meters in second]
    combined = type_stats(a + b)
    parts = (type_stats(a), type_stats(b))

    for row in combined.rows:
        count = sum(p.row(row.highway_type).segment_count for p in parts
                    if row.highway_type in {r.highway_type for r in p.rows})
        length = sum(p.row(row.highway_type).total_length_m for p in parts
                     if row.highway_type in {r.highway_type for r in p.rows})
        assert row.segment_count == count
        assert row.total_length_m == pytest.approx(length)


# --- clipping ---


def test_universe_region_keeps_everything(three_way_osm):
    segments = parse_osm(three_way_osm).segments
    universe = shapely.box(-180, -90, 180, 90)
    clipped = clip_to_region(segments, universe)
    assert clipped == segments
    assert type_stats(clipped) == type_stats(segments)


def test_segment_fully_inside_is_returned_unchanged():
    seg = road("primary", (0.2, 0.2), (0.5, 0.5), (0.8, 0.3))
    [kept] = clip_to_region([seg], SQUARE)
    assert kept is seg


def test_segment_fully_outside_is_dropped():
    seg = road("primary", (2.0, 2.0), (3.0, 3.0))
    assert clip_to_region([seg], SQUARE) == []


def test_middle_run_is_kept():
    seg = road("secondary", (0.5, -1.0), (0.5, 0.2), (0.5, 0.5), (0.5, 0.8), (0.5, 2.0), way_id=9)
    [kept] = clip_to_region([seg], SQUARE)
    assert kept.geometry == ((0.5, 0.2), (0.5, 0.5), (0.5, 0.8))
    assert kept.way_id == 9
    assert kept.highway_type == "secondary"


def test_boundary_vertices_count_as_inside():
    seg = road("service", (0.0, 0.5), (0.5, 1.0), (2.0, 2.0))
    [kept] = clip_to_region([seg], SQUARE)
    assert kept.geometry == ((0.0, 0.5), (0.5, 1.0))


def test_single_inside_vertex_is_dropped_and_runs_split():
    seg = road("service", (0.5, 0.5), (2.0, 2.0), (0.5, 0.6), (0.6, 0.6), (3.0, 3.0), (0.7, 0.7))
    [kept] = clip_to_region([seg], SQUARE)
    assert kept.geometry == ((0.5, 0.6), (0.6, 0.6))


def test_self_intersecting_region_is_rejected():
    bowtie = {"type": "Polygon", "coordinates": [[[0, 0], [1, 1], [1, 0], [0, 1], [0, 0]]]}
    with pytest.raises(GeometryError, match="invalid"):
        clip_to_region([road("primary", (0.5, 0.5), (0.6, 0.6))], bowtie)


def test_point_region_is_rejected():
    with pytest.raises(GeometryError, match="Point"):
        as_region({"type": "Point", "coordinates": [0, 0]})


def test_garbage_region_is_rejected():
    with pytest.raises(GeometryError):
        as_region({"coordinates": [0, 0]})


# --- regions from files ---


def test_load_region_from_feature(covering_region):
    region = load_region(covering_region)
    assert region.geom_type == "Polygon"
    assert region.area == 4.0


def test_load_region_from_bare_geometry(distant_region):
    assert load_region(distant_region).bounds == (10.0, 10.0, 11.0, 11.0)


def test_load_region_merges_a_feature_collection(write_text):
    path = write_text(
        "two.geojson",
        """
        {"type": "FeatureCollection", "features": [
          {"type": "Feature", "properties": {},
           "geometry": {"type": "Polygon", "coordinates": [[[0, 0], [1, 0], [1, 1], [0, 1], [0, 0]]]}},
          {"type": "Feature", "properties": {},
           "geometry": {"type": "Polygon", "coordinates": [[[5, 5], [6, 5], [6, 6], [5, 6], [5, 5]]]}}
        ]}
        """,
    )
    region = load_region(path)
    assert region.geom_type == "MultiPolygon"
    assert region.area == 2.0


def test_load_region_empty_collection(write_text):
    path = write_text("empty.geojson", '{"type": "FeatureCollection", "features": []}')
    with pytest.raises(GeometryError, match="no polygon"):
        load_region(path)


def test_load_region_not_json(write_text):
    path = write_text("broken.geojson", "{not json")
    with pytest.raises(GeometryError, match="not valid GeoJSON"):
        load_region(path)


def test_load_region_missing_file(tmp_path):
    with pytest.raises(DataFileError):
        load_region(tmp_path / "absent.geojson")


# --- colours and GeoJSON ---


def test_default_road_colors():
    assert load_road_colors() == DEFAULT_ROAD_COLORS


def test_road_colors_from_file(write_text):
    path = write_text("colors.txt", "residential=#000000\nbusway=#123abc\n")
    colors = load_road_colors(path)
    assert colors["residential"] == "#000000"
    assert colors["busway"] == "#123abc"
    assert colors["motorway"] == DEFAULT_ROAD_COLORS["motorway"]


def test_road_colors_reject_bad_values(write_text):
    path = write_text("colors.txt", "residential=blue\n")
    with pytest.raises(SchemaError, match="residential"):
        load_road_colors(path)


def test_road_color_fallbacks():
    assert road_color("motorway_link", DEFAULT_ROAD_COLORS) == DEFAULT_ROAD_COLORS["motorway"]
    assert road_color("bridleway", DEFAULT_ROAD_COLORS) == FALLBACK_COLOR


def test_segments_feature_collection():
    seg = road("residential", (40.70, -74.00), (40.71, -74.01), way_id=3)
    collection = segments_feature_collection([seg], parameters={"region": "r.geojson"})

    assert collection.is_valid
    [feature] = collection["features"]
    assert feature["geometry"]["type"] == "LineString"
    assert [list(c) for c in feature["geometry"]["coordinates"]] == [[-74.0, 40.7], [-74.01, 40.71]]
    assert feature["properties"]["stroke"] == DEFAULT_ROAD_COLORS["residential"]
    assert feature["properties"]["length_m"] == pytest.approx(segment_length(seg))
    assert collection["parameters"] == {"region": "r.geojson"}


def test_stats_frame_columns(three_way_osm):
    frame = stats_frame(type_stats(parse_osm(three_way_osm).segments))
    assert frame.columns.tolist() == STATS_COLUMNS
    assert frame["highway_type"].tolist() == ["primary", "residential"]
    assert math.isclose(frame["count_percent"].sum(), 100.0)
