"""Streaming OSM XML parser for highway ways."""

import logging
import xml.etree.ElementTree as ET
from pathlib import Path

from ..errors import DataFileError, OsmParseError
from .models import OsmParse, RejectedWay, RoadSegment

logger = logging.getLogger(__name__)


def _byte_offset(path: Path, line: int, column: int) -> int:
    """Offset of a 1-based line and 0-based column from the start of the file.

    The parser counts columns in characters, so the error line is decoded to
    turn the column into a byte count.
    """
    offset = 0
    with path.open("rb") as fh:
        for _ in range(line - 1):
            chunk = fh.readline()
            if not chunk:
                break
            offset += len(chunk)
        current = fh.readline()
    prefix = current.decode("utf-8", errors="surrogateescape")[:column]
    return offset + len(prefix.encode("utf-8", errors="surrogateescape"))


def parse_osm(path: str | Path) -> OsmParse:
    """Read every way carrying a `highway` tag, resolving node references.

    Nodes may appear anywhere in the file; ways are resolved once the whole
    document has been read. A way that references an unknown node, or has
    fewer than two nodes, is rejected into the report instead of failing the
    parse. Link types such as motorway_link are kept as their own types.

    Args:
        path: OSM XML extract

    Returns:
        OsmParse with segments in file order and the rejected ways

    Raises:
        DataFileError: If the file does not exist
        OsmParseError: If the XML is malformed, with the byte offset of the error
    """
    path = Path(path)
    if not path.is_file():
        raise DataFileError(path, "file does not exist")

    nodes: dict[int, tuple[float, float]] = {}
    ways: list[tuple[int, str, list[int]]] = []
    try:
        for _, elem in ET.iterparse(str(path), events=("end",)):
            if elem.tag == "node":
                try:
                    nodes[int(elem.attrib["id"])] = (
                        float(elem.attrib["lat"]),
                        float(elem.attrib["lon"]),
                    )
                except (KeyError, ValueError):
                    logger.warning("Skipping node without usable id/lat/lon: %s", elem.attrib)
                elem.clear()
            elif elem.tag == "way":
                tags = {t.attrib.get("k"): t.attrib.get("v", "") for t in elem.findall("tag")}
                highway = (tags.get("highway") or "").strip()
                if highway:
                    try:
                        refs = [int(nd.attrib["ref"]) for nd in elem.findall("nd")]
                        ways.append((int(elem.attrib["id"]), highway, refs))
                    except (KeyError, ValueError):
                        logger.warning("Skipping way without usable id or node refs: %s", elem.attrib)
                elem.clear()
    except ET.ParseError as e:
        line, column = e.position
        raise OsmParseError(path, _byte_offset(path, line, column), str(e)) from e

    result = OsmParse(n_nodes=len(nodes))
    for way_id, highway, refs in ways:
        missing = [ref for ref in refs if ref not in nodes]
        if missing:
            result.rejected.append(RejectedWay(way_id=way_id, reason=f"missing node {missing[0]}"))
            continue
        if len(refs) < 2:
            result.rejected.append(RejectedWay(way_id=way_id, reason="fewer than 2 nodes"))
            continue
        result.segments.append(
            RoadSegment(
                way_id=way_id,
                highway_type=highway,
                geometry=tuple(nodes[ref] for ref in refs),
            )
        )

    logger.info(
        "Parsed %d highway segment(s) from %s, %d rejected",
        len(result.segments),
        path,
        len(result.rejected),
    )
    return result
