"""Command-line interface for hotspot-shift."""

import logging
from collections.abc import Iterator, Sequence
from contextlib import contextmanager
from dataclasses import dataclass
from datetime import date
from pathlib import Path
from typing import Any, Optional

import geojson
import numpy as np
import pandas as pd
import typer
from pydantic import ValidationError
from rich.console import Console
from rich.logging import RichHandler
from rich.markup import escape
from rich.progress import Progress, SpinnerColumn, TextColumn
from rich.table import Table

from .config import PipelineConfig, get_settings, load_pipeline_config
from .density.models import GridSpec
from .errors import EmptyWindowError, HotspotShiftError, NoChangePointError, SchemaError

app = typer.Typer(
    name="hotspot-shift",
    help="Detect mobility change points and test whether accident hotspots moved across them.",
    no_args_is_help=True,
)
console = Console()
err_console = Console(stderr=True)

logger = logging.getLogger("hotspotshift")

EXIT_ERROR = 1
EXIT_NO_CHANGE_POINT = 2

CHANGEPOINTS_CSV = "changepoints.csv"


class NoChangePoint(Exception):
    """Raised inside a command when the series has no breakpoint."""


@contextmanager
def reporting_errors() -> Iterator[None]:
    """Print package errors in red on stderr and exit with the documented codes."""
    try:
        yield
    except NoChangePoint:
        raise typer.Exit(EXIT_NO_CHANGE_POINT)
    except NoChangePointError as e:
        err_console.print(f"[yellow]{escape(str(e))}[/yellow]", soft_wrap=True)
        raise typer.Exit(EXIT_NO_CHANGE_POINT)
    except HotspotShiftError as e:
        err_console.print(f"[red]Error: {escape(str(e))}[/red]", soft_wrap=True)
        raise typer.Exit(EXIT_ERROR)
    except ValidationError as e:
        err_console.print(f"[red]Error: {escape(str(e))}[/red]", soft_wrap=True)
        raise typer.Exit(EXIT_ERROR)


@app.callback()
def main(
    verbose: bool = typer.Option(False, "--verbose", "-v", help="Show debug logging"),
):
    """Accident hotspot shifts around mobility change points.

    Every command reads an optional flat key=value config file (--config) and
    lets individual flags override it.
    """
    level = logging.DEBUG if verbose else get_settings().log_level.upper()
    logging.basicConfig(
        level=level,
        format="%(message)s",
        datefmt="[%X]",
        handlers=[RichHandler(console=err_console, show_path=False)],
        force=True,
    )


def _config(path: Optional[Path], **overrides: Any) -> PipelineConfig:
    return load_pipeline_config(path, overrides)


# ---------------------------------------------------------------------------
# Stages shared by the subcommands and the pipeline


def _run_changepoint(cfg: PipelineConfig) -> Optional[date]:
    """Detect breakpoints, write the report and return the first change date."""
    from .changepoint import SegmentCost, change_date, detect_pruned
    from .ingest import load_mobility
    from .outputs import write_summary, write_table

    cfg.require_files("mobility")
    out = cfg.prepare_output_dir()
    series = load_mobility(cfg.mobility, cfg.categories, cfg.fill_policy, cfg.mobility_filters)
    cost = SegmentCost(kind=cfg.cost, reference=cfg.cost_reference)
    seg = detect_pruned(series, cfg.beta, cost, cfg.min_seg_len)

    values = series.as_array()
    segments = seg.segments
    rows = []
    for rank, breakpoint in enumerate(seg.breakpoints):
        left, right = segments[rank], segments[rank + 1]
        mean_before = float(values[left[0]:left[1]].mean())
        mean_after = float(values[right[0]:right[1]].mean())
        rows.append(
            {
                "rank": rank,
                "breakpoint": breakpoint,
                "date": series.date_at(breakpoint).isoformat(),
                "mean_before": mean_before,
                "mean_after": mean_after,
                "shift": mean_after - mean_before,
            }
        )
    frame = pd.DataFrame(
        rows, columns=["rank", "breakpoint", "date", "mean_before", "mean_after", "shift"]
    )

    params = cfg.echo() | {"beta_used": repr(seg.beta), "objective": repr(seg.objective)}
    write_table(frame, out / CHANGEPOINTS_CSV, params)
    lines = [
        "Mobility change points",
        f"  series: {series.start_date.isoformat()} + {len(series)} days",
        f"  categories: {', '.join(series.source_categories)}",
        f"  beta: {seg.beta:.6g}",
        f"  objective: {seg.objective:.6g}",
        f"  breakpoints: {seg.k}",
    ]
    lines += [f"    {row['date']}: {row['mean_before']:.2f} -> {row['mean_after']:.2f}" for row in rows]
    write_summary(lines, out / "changepoints.txt", params)

    if seg.k == 0:
        return None

    table = Table(title="Mobility change points")
    table.add_column("Date", style="cyan")
    table.add_column("Index", justify="right")
    table.add_column("Mean before", justify="right")
    table.add_column("Mean after", justify="right")
    for row in rows:
        table.add_row(
            row["date"],
            str(row["breakpoint"]),
            f"{row['mean_before']:.2f}",
            f"{row['mean_after']:.2f}",
        )
    console.print(table)
    return change_date(series, seg)


def _recorded_change_date(output_dir: Path) -> Optional[date]:
    """First change date from an earlier changepoint run, if there is one."""
    path = output_dir / CHANGEPOINTS_CSV
    if not path.is_file():
        return None
    frame = pd.read_csv(path, comment="#", dtype=str)
    if frame.empty:
        return None
    return date.fromisoformat(frame["date"].iloc[0])


def _resolve_change_date(cfg: PipelineConfig) -> date:
    if cfg.change_date is not None:
        return cfg.change_date
    recorded = _recorded_change_date(cfg.output_dir)
    if recorded is None:
        raise SchemaError(
            "No change date: pass --change-date, set change_date in the config, "
            "or run 'hotspot-shift changepoint' first"
        )
    logger.info("Using change date %s from %s", recorded, cfg.output_dir / CHANGEPOINTS_CSV)
    return recorded


def _load_records(cfg: PipelineConfig):
    from .ingest import AccidentSchema, load_accidents, load_schema

    cfg.require_files("accidents")
    schema = load_schema(cfg.schema_file) if cfg.schema_file else AccidentSchema()
    load = load_accidents(cfg.accidents, schema)
    if load.rejected:
        first = load.rejected[0]
        logger.warning(
            "Rejected %d accident row(s); first at line %d: %s",
            len(load.rejected),
            first.line,
            first.reason,
        )
    return load.records


def _split_windows(cfg: PipelineConfig, records: Sequence, change: date):
    """Before and after samples; a baseline year replaces the before window."""
    from .ingest import StudyWindow, baseline_window, window_records

    window = StudyWindow(change_date=change, days_before=cfg.days_before, days_after=cfg.days_after)
    before, after = window_records(records, window)
    if cfg.baseline_years:
        base = baseline_window(window, cfg.baseline_years)
        _, before = window_records(records, base)
        logger.info(
            "Comparing with the same days %d year(s) earlier, from %s",
            cfg.baseline_years,
            base.change_date,
        )
    if not before:
        raise EmptyWindowError("before")
    if not after:
        raise EmptyWindowError("after")
    return before, after


@dataclass
class PlanarSamples:
    spec: GridSpec
    bandwidth_m: float
    samples: list[np.ndarray]


def _planar_samples(cfg: PipelineConfig, *groups: Sequence) -> PlanarSamples:
    """Shared grid and bandwidth for one or more record groups.

    The bandwidth is chosen from the pooled points; the grid covers every
    point with a margin of one kernel support radius.
    """
    from .density import GridSpec, project_many, select_bandwidth
    from .density.kde import TRUNCATION

    sizes = [len(g) for g in groups]
    records = [r for g in groups for r in g]
    lats = np.array([r.latitude for r in records])
    lons = np.array([r.longitude for r in records])

    provisional = project_many(lats, lons, float(lats.min()), float(lons.min()))
    bandwidth = select_bandwidth(provisional, cfg.bandwidth)
    spec = GridSpec.covering(
        lats,
        lons,
        cfg.cell_size_m,
        margin_m=TRUNCATION[cfg.kernel] * bandwidth,
        max_cells=cfg.max_grid_cells,
    )
    xy = project_many(lats, lons, spec.origin_lat, spec.origin_lon)
    splits = np.cumsum(sizes)[:-1]
    logger.info(
        "Grid %dx%d cells of %.0f m, bandwidth %.1f m (%s)",
        spec.nx,
        spec.ny,
        spec.cell_size_m,
        bandwidth,
        cfg.bandwidth,
    )
    return PlanarSamples(spec=spec, bandwidth_m=bandwidth, samples=np.split(xy, splits))


def _test_outputs(cfg: PipelineConfig, planar: PlanarSamples, out: Path, params: dict[str, str]):
    from .outputs import write_table
    from .shifttest import permutation_test

    xy_before, xy_after = planar.samples
    with Progress(
        SpinnerColumn(),
        TextColumn("[progress.description]{task.description}"),
        console=console,
        transient=True,
    ) as progress:
        progress.add_task(f"Running {cfg.n_permutations} permutations...", total=None)
        result = permutation_test(
            xy_before,
            xy_after,
            planar.spec,
            planar.bandwidth_m,
            n_permutations=cfg.n_permutations,
            seed=cfg.seed,
            kernel=cfg.kernel,
            keep_null=cfg.write_null,
        )
    write_table(pd.DataFrame([result.summary_row()]), out / "test.csv", params)
    if result.null_distribution is not None:
        null = pd.DataFrame(
            {"replicate": range(len(result.null_distribution)), "ise": result.null_distribution}
        )
        write_table(null, out / "null.csv", params)
    return result


def _run_compare(cfg: PipelineConfig, change: date) -> dict[str, Path]:
    """Densities, permutation test, hotspots and shift report around one date."""
    from .density import kde, write_esri_ascii
    from .hotspot import (
        extract_hotspots,
        hotspots_feature_collection,
        shift_metrics,
        shift_report_frame,
        shift_report_lines,
    )
    from .ingest import window_counts
    from .outputs import write_geojson, write_summary, write_table

    out = cfg.prepare_output_dir()
    records = _load_records(cfg)
    before, after = _split_windows(cfg, records, change)
    planar = _planar_samples(cfg, before, after)
    params = cfg.echo() | {
        "change_date": change.isoformat(),
        "bandwidth_m": repr(planar.bandwidth_m),
    }

    counts = window_counts(before, after)
    write_table(pd.DataFrame([counts.model_dump()]), out / "counts.csv", params)

    paths: dict[str, Path] = {}
    hotspots = {}
    for name, xy in zip(("before", "after"), planar.samples):
        grid = kde(xy, planar.spec, planar.bandwidth_m, cfg.kernel)
        paths[f"density_{name}"] = write_esri_ascii(grid, out / f"density_{name}.asc", params)
        hotspots[name] = extract_hotspots(grid, cfg.quantile)
        paths[f"hotspots_{name}"] = write_geojson(
            hotspots_feature_collection(hotspots[name], params), out / f"hotspots_{name}.geojson"
        )

    result = _test_outputs(cfg, planar, out, params)
    report = shift_metrics(hotspots["before"], hotspots["after"], planar.spec)
    write_table(shift_report_frame(report), out / "shift.csv", params)
    write_summary(shift_report_lines(report), out / "shift.txt", params)

    table = Table(title=f"Hotspot shift around {change.isoformat()}")
    table.add_column("Metric", style="cyan")
    table.add_column("Value", justify="right", style="green")
    table.add_row("Accidents before", str(counts.n_before))
    table.add_row("Accidents after", str(counts.n_after))
    if counts.percent_change is not None:
        table.add_row("Change", f"{counts.percent_change:+.1f}%")
    table.add_row("Bandwidth", f"{planar.bandwidth_m:.1f} m")
    table.add_row("ISE", f"{result.ise:.4e}")
    table.add_row("p-value", f"{result.p_value:.4f}")
    table.add_row("Hotspots before / after", f"{report.n_before_regions} / {report.n_after_regions}")
    table.add_row("Jaccard overlap", f"{report.jaccard:.3f}")
    displacement = "n/a" if report.displacement_m is None else f"{report.displacement_m:.0f} m"
    table.add_row("Centroid displacement", displacement)
    console.print(table)
    return paths


def _run_roadnet(cfg: PipelineConfig, region_path: Path, prefix: str = "roadnet") -> None:
    from .outputs import write_geojson, write_table
    from .roadnet import (
        clip_to_region,
        load_region,
        load_road_colors,
        parse_osm,
        segments_feature_collection,
        stats_frame,
        type_stats,
    )

    cfg.require_files("osm")
    out = cfg.prepare_output_dir()
    colors = load_road_colors(cfg.road_colors)
    region = load_region(region_path)
    parsed = parse_osm(cfg.osm)
    for way in parsed.rejected:
        logger.warning("Rejected way %d: %s", way.way_id, way.reason)
    clipped = clip_to_region(parsed.segments, region)
    stats = type_stats(clipped)

    params = cfg.echo() | {"region": str(region_path)}
    write_table(stats_frame(stats), out / f"{prefix}.csv", params)
    write_geojson(segments_feature_collection(clipped, colors, params), out / f"{prefix}.geojson")

    table = Table(title=f"Road types in {region_path.name}")
    table.add_column("Highway", style="cyan")
    table.add_column("Segments", justify="right")
    table.add_column("Count %", justify="right")
    table.add_column("Length %", justify="right")
    table.add_column("Length (m)", justify="right", style="green")
    for row in stats.rows:
        table.add_row(
            row.highway_type,
            str(row.segment_count),
            f"{row.count_percent:.2f}",
            f"{row.normalized_percent:.2f}",
            f"{row.total_length_m:.0f}",
        )
    console.print(table)
    if parsed.rejected:
        console.print(f"[dim]{len(parsed.rejected)} way(s) rejected for missing nodes[/dim]")


# ---------------------------------------------------------------------------
# Subcommands


@app.command()
def changepoint(
    config: Optional[Path] = typer.Option(None, "--config", "-c", help="key=value config file"),
    mobility: Optional[Path] = typer.Option(None, "--mobility", "-m", help="Mobility report CSV"),
    categories: Optional[str] = typer.Option(None, "--categories", help="Comma-separated category columns"),
    beta: Optional[float] = typer.Option(None, "--beta", help="Penalty per breakpoint (default: BIC-style)"),
    cost: Optional[str] = typer.Option(None, "--cost", help="l2 (l2-mean) or l2-constant-reference"),
    cost_reference: Optional[float] = typer.Option(
        None, "--cost-reference", help="Reference level for l2-constant-reference"
    ),
    min_seg_len: Optional[int] = typer.Option(None, "--min-seg-len", help="Shortest segment in days"),
    fill_policy: Optional[str] = typer.Option(None, "--fill-policy", help="fail or linear-interpolate"),
    output_dir: Optional[Path] = typer.Option(None, "--output-dir", "-o", help="Output directory"),
):
    """Detect mobility change points.

    Writes changepoints.csv and changepoints.txt. Exits with code 2 when the
    series has no change point.

    Examples:
        hotspot-shift changepoint -m mobility.csv
        hotspot-shift changepoint -c run.conf --beta 500
    """
    with reporting_errors():
        cfg = _config(
            config,
            mobility=mobility,
            categories=categories,
            beta=beta,
            cost=cost,
            cost_reference=cost_reference,
            min_seg_len=min_seg_len,
            fill_policy=fill_policy,
            output_dir=output_dir,
        )
        found = _run_changepoint(cfg)
        if found is None:
            err_console.print("[yellow]No change point detected[/yellow]")
            raise NoChangePoint()
        console.print(f"[green]Change date: {found.isoformat()}[/green]")


@app.command("kde")
def kde_command(
    config: Optional[Path] = typer.Option(None, "--config", "-c", help="key=value config file"),
    accidents: Optional[Path] = typer.Option(None, "--accidents", "-a", help="Accident CSV"),
    schema_file: Optional[Path] = typer.Option(None, "--schema", help="Accident column mapping file"),
    window: str = typer.Option("all", "--window", "-w", help="all, before or after"),
    change_date: Optional[str] = typer.Option(None, "--change-date", help="YYYY-MM-DD"),
    cell_size_m: Optional[float] = typer.Option(None, "--cell-size", help="Grid cell size in meters"),
    bandwidth: Optional[str] = typer.Option(None, "--bandwidth", help="silverman, scott or fixed(<m>)"),
    kernel: Optional[str] = typer.Option(None, "--kernel", help="gaussian or epanechnikov"),
    output_dir: Optional[Path] = typer.Option(None, "--output-dir", "-o", help="Output directory"),
):
    """Estimate an accident density surface as an ESRI ASCII grid.

    With --window before/after only that side of the change date is used.
    """
    from .density import kde, write_esri_ascii

    with reporting_errors():
        if window not in ("all", "before", "after"):
            raise SchemaError(f"--window must be all, before or after, got '{window}'")
        cfg = _config(
            config,
            accidents=accidents,
            schema_file=schema_file,
            change_date=change_date,
            cell_size_m=cell_size_m,
            bandwidth=bandwidth,
            kernel=kernel,
            output_dir=output_dir,
        )
        out = cfg.prepare_output_dir()
        records = _load_records(cfg)
        params = cfg.echo() | {"window": window}
        if window != "all":
            change = _resolve_change_date(cfg)
            before, after = _split_windows(cfg, records, change)
            records = before if window == "before" else after
            params["change_date"] = change.isoformat()
        if not records:
            raise SchemaError(f"{cfg.accidents} holds no valid accident records")

        planar = _planar_samples(cfg, records)
        params["bandwidth_m"] = repr(planar.bandwidth_m)
        grid = kde(planar.samples[0], planar.spec, planar.bandwidth_m, cfg.kernel)
        name = "density.asc" if window == "all" else f"density_{window}.asc"
        path = write_esri_ascii(grid, out / name, params)

    console.print(f"[green]Density grid saved to {path}[/green]")
    console.print(
        f"  {planar.spec.nx}x{planar.spec.ny} cells, h={planar.bandwidth_m:.1f} m, "
        f"leaked mass {grid.leaked_mass:.2e}"
    )


@app.command("test")
def test_command(
    config: Optional[Path] = typer.Option(None, "--config", "-c", help="key=value config file"),
    accidents: Optional[Path] = typer.Option(None, "--accidents", "-a", help="Accident CSV"),
    schema_file: Optional[Path] = typer.Option(None, "--schema", help="Accident column mapping file"),
    change_date: Optional[str] = typer.Option(None, "--change-date", help="YYYY-MM-DD"),
    cell_size_m: Optional[float] = typer.Option(None, "--cell-size", help="Grid cell size in meters"),
    bandwidth: Optional[str] = typer.Option(None, "--bandwidth", help="silverman, scott or fixed(<m>)"),
    kernel: Optional[str] = typer.Option(None, "--kernel", help="gaussian or epanechnikov"),
    n_permutations: Optional[int] = typer.Option(None, "--permutations", "-n", help="Number of permutations"),
    seed: Optional[int] = typer.Option(None, "--seed", help="Random seed"),
    write_null: Optional[bool] = typer.Option(None, "--write-null/--no-write-null", help="Write null.csv"),
    output_dir: Optional[Path] = typer.Option(None, "--output-dir", "-o", help="Output directory"),
):
    """Permutation test of whether the accident density changed at the change date."""
    with reporting_errors():
        cfg = _config(
            config,
            accidents=accidents,
            schema_file=schema_file,
            change_date=change_date,
            n_permutations=n_permutations,
            cell_size_m=cell_size_m,
            bandwidth=bandwidth,
            kernel=kernel,
            seed=seed,
            write_null=write_null,
            output_dir=output_dir,
        )
        out = cfg.prepare_output_dir()
        change = _resolve_change_date(cfg)
        before, after = _split_windows(cfg, _load_records(cfg), change)
        planar = _planar_samples(cfg, before, after)
        params = cfg.echo() | {
            "change_date": change.isoformat(),
            "bandwidth_m": repr(planar.bandwidth_m),
        }
        result = _test_outputs(cfg, planar, out, params)

    color = "green" if result.p_value <= 0.05 else "yellow"
    console.print(f"ISE {result.ise:.4e}, [{color}]p = {result.p_value:.4f}[/{color}]")
    console.print(f"[dim]Saved {out / 'test.csv'}[/dim]")


@app.command()
def hotspots(
    grid_path: Path = typer.Argument(..., help="ESRI ASCII grid written by 'kde'"),
    quantile: Optional[float] = typer.Option(None, "--quantile", "-q", help="Density quantile, in (0, 1)"),
    config: Optional[Path] = typer.Option(None, "--config", "-c", help="key=value config file"),
    output_dir: Optional[Path] = typer.Option(None, "--output-dir", "-o", help="Output directory"),
):
    """Extract hotspot regions from a density grid as GeoJSON."""
    from .density import read_esri_ascii
    from .hotspot import extract_hotspots, hotspots_feature_collection
    from .outputs import write_geojson

    with reporting_errors():
        cfg = _config(config, quantile=quantile, output_dir=output_dir)
        out = cfg.prepare_output_dir()
        grid, metadata = read_esri_ascii(grid_path)
        found = extract_hotspots(grid, cfg.quantile)
        params = dict(metadata.parameters) | {"quantile": repr(cfg.quantile), "grid": str(grid_path)}
        path = write_geojson(
            hotspots_feature_collection(found, params), out / f"{grid_path.stem}_hotspots.geojson"
        )

    table = Table(title=f"Hotspots above the {cfg.quantile:g} quantile")
    table.add_column("#", justify="right")
    table.add_column("Cells", justify="right")
    table.add_column("Area (km²)", justify="right")
    table.add_column("Mass", justify="right", style="green")
    table.add_column("Peak density", justify="right")
    for rank, region in enumerate(found.regions):
        table.add_row(
            str(rank),
            str(len(region.cells)),
            f"{region.area_m2 / 1e6:.3f}",
            f"{region.mass:.3f}",
            f"{region.peak_density:.3e}",
        )
    console.print(table)
    console.print(f"[green]Hotspots saved to {path}[/green]")


@app.command()
def roadnet(
    region: Path = typer.Argument(..., help="GeoJSON region polygon (e.g. a hotspot export)"),
    osm: Optional[Path] = typer.Option(None, "--osm", help="OSM XML extract"),
    road_colors: Optional[Path] = typer.Option(None, "--road-colors", help="highway_type=#rrggbb file"),
    prefix: str = typer.Option("roadnet", "--prefix", help="Output file name prefix"),
    config: Optional[Path] = typer.Option(None, "--config", "-c", help="key=value config file"),
    output_dir: Optional[Path] = typer.Option(None, "--output-dir", "-o", help="Output directory"),
):
    """Road-type composition of the network inside a region."""
    with reporting_errors():
        cfg = _config(config, osm=osm, road_colors=road_colors, output_dir=output_dir)
        _run_roadnet(cfg, region, prefix)
    console.print(f"[green]Road statistics saved to {cfg.output_dir / (prefix + '.csv')}[/green]")


@app.command()
def compare(
    config: Optional[Path] = typer.Option(None, "--config", "-c", help="key=value config file"),
    accidents: Optional[Path] = typer.Option(None, "--accidents", "-a", help="Accident CSV"),
    schema_file: Optional[Path] = typer.Option(None, "--schema", help="Accident column mapping file"),
    change_date: Optional[str] = typer.Option(None, "--change-date", help="YYYY-MM-DD"),
    days_before: Optional[int] = typer.Option(None, "--days-before", help="Days in the before window"),
    days_after: Optional[int] = typer.Option(None, "--days-after", help="Days in the after window"),
    baseline_years: Optional[int] = typer.Option(
        None, "--baseline-years", help="Compare with the same days N years earlier"
    ),
    quantile: Optional[float] = typer.Option(None, "--quantile", "-q", help="Hotspot density quantile"),
    cell_size_m: Optional[float] = typer.Option(None, "--cell-size", help="Grid cell size in meters"),
    bandwidth: Optional[str] = typer.Option(None, "--bandwidth", help="silverman, scott or fixed(<m>)"),
    kernel: Optional[str] = typer.Option(None, "--kernel", help="gaussian or epanechnikov"),
    n_permutations: Optional[int] = typer.Option(None, "--permutations", "-n", help="Number of permutations"),
    seed: Optional[int] = typer.Option(None, "--seed", help="Random seed"),
    output_dir: Optional[Path] = typer.Option(None, "--output-dir", "-o", help="Output directory"),
):
    """Compare accident densities and hotspots before and after the change date.

    The change date comes from --change-date, the config, or changepoints.csv
    left in the output directory by an earlier 'changepoint' run.

    Examples:
        hotspot-shift compare -c run.conf --change-date 2020-03-16
        hotspot-shift compare -c run.conf --baseline-years 1
    """
    with reporting_errors():
        cfg = _config(
            config,
            accidents=accidents,
            schema_file=schema_file,
            change_date=change_date,
            days_before=days_before,
            days_after=days_after,
            baseline_years=baseline_years,
            quantile=quantile,
            n_permutations=n_permutations,
            cell_size_m=cell_size_m,
            bandwidth=bandwidth,
            kernel=kernel,
            seed=seed,
            output_dir=output_dir,
        )
        _run_compare(cfg, _resolve_change_date(cfg))
    console.print(f"[green]Comparison saved to {cfg.output_dir}[/green]")


@app.command()
def pipeline(
    config: Path = typer.Option(..., "--config", "-c", help="key=value config file"),
    change_date: Optional[str] = typer.Option(None, "--change-date", help="Skip detection and use this date"),
    seed: Optional[int] = typer.Option(None, "--seed", help="Random seed"),
    output_dir: Optional[Path] = typer.Option(None, "--output-dir", "-o", help="Output directory"),
):
    """Run change point detection, comparison and road analysis in one go.

    Road-type statistics are computed for the before and after hotspot
    regions when the config names an OSM extract.
    """
    with reporting_errors():
        cfg = _config(config, change_date=change_date, seed=seed, output_dir=output_dir)
        change = cfg.change_date
        if change is None:
            change = _run_changepoint(cfg)
            if change is None:
                err_console.print("[yellow]No change point detected; nothing to compare[/yellow]")
                raise NoChangePoint()
            cfg = cfg.model_copy(update={"change_date": change})
        console.print(f"[cyan]Change date: {change.isoformat()}[/cyan]")

        paths = _run_compare(cfg, change)

        if cfg.osm is not None:
            for name in ("before", "after"):
                region = paths[f"hotspots_{name}"]
                if not _has_features(region):
                    logger.warning("No %s hotspots; skipping road analysis for them", name)
                    continue
                _run_roadnet(cfg, region, prefix=f"roadnet_{name}")

    console.print(f"[green]Pipeline outputs saved to {cfg.output_dir}[/green]")


def _has_features(path: Path) -> bool:
    with path.open() as fh:
        return bool(geojson.load(fh)["features"])


if __name__ == "__main__":
    app()
