"""CLI entry point for viewpath."""

import logging
from pathlib import Path

import click

from viewpath.config import BLOB_SOURCE, ConfigError, config_from_options
from viewpath.director.director import Interpolation
from viewpath.entropy.score import EntropySource
from viewpath.render.colormap import ColorMapName
from viewpath.sim.raw import VALUE_TYPES
from viewpath.utils.parsing import parse_list, parse_size, read_key_values


def _load_config_file(ctx, _param, path):
    """Eager ``--config`` callback: file values become defaults, so flags still win."""
    if path is None:
        return
    try:
        values = read_key_values(path)
    except (OSError, ValueError) as exc:
        raise click.BadParameter(str(exc), ctx=ctx, param_hint="--config") from None
    known = {p.name for p in ctx.command.params}
    defaults = {}
    for key, value in values.items():
        name = key.replace("-", "_")
        if name not in known or name == "config":
            raise click.BadParameter(f"unknown option {key!r} in {path}", param_hint="--config")
        defaults[name] = value
    ctx.default_map = {**(ctx.default_map or {}), **defaults}


def _common_options(f):
    """Options shared by every command; the sweep axes are added separately."""
    options = [
        click.option(
            "--config",
            type=click.Path(exists=True, dir_okay=False, path_type=Path),
            callback=_load_config_file,
            is_eager=True,
            expose_value=False,
            help="key=value file setting any option; command-line flags override it.",
        ),
        click.option(
            "--source",
            default=BLOB_SOURCE,
            show_default=True,
            help="'blob' for the built-in simulation, or a raw series prefix.",
        ),
        click.option(
            "--dims", default="64x64x64", show_default=True, help="Volume grid nodes."
        ),
        click.option(
            "--value-type",
            type=click.Choice(list(VALUE_TYPES)),
            default="float32",
            show_default=True,
            help="Element type of raw volume files.",
        ),
        click.option(
            "--steps",
            type=int,
            default=None,
            help="Simulation steps (default: 300 for blob, all files for raw).",
        ),
        click.option("--dt", type=float, default=0.02, show_default=True, help="Step size."),
        click.option(
            "--image", default="512x512", show_default=True, help="Frame size <w>x<h>."
        ),
        click.option("--fov", type=float, default=50.0, show_default=True, help="Degrees."),
        click.option(
            "--radius-factor",
            type=float,
            default=2.5,
            show_default=True,
            help="Viewsphere radius as a multiple of the volume's bounding radius.",
        ),
        click.option("--isovalues", default=None, help="Comma-separated isovalues v1,v2,v3."),
        click.option("--nv", type=int, default=1, show_default=True, help="Steps per frame."),
        click.option("--seed", type=int, default=0, show_default=True),
        click.option("--fps", type=int, default=30, show_default=True, help="Manifest fps."),
        click.option(
            "--workers",
            type=int,
            default=1,
            show_default=True,
            help="Threads rendering candidate viewpoints.",
        ),
        click.option(
            "--out",
            "-o",
            type=click.Path(file_okay=False, path_type=Path),
            default=Path("out"),
            show_default=True,
            help="Output directory.",
        ),
        click.option("--verbose", "-v", is_flag=True, help="Log debug detail."),
    ]
    for option in reversed(options):
        f = option(f)
    return f


def _run_axis_options(f):
    options = [
        click.option(
            "--entropy",
            type=click.Choice([e.value for e in EntropySource]),
            default=EntropySource.DEPTH_AND_LIGHTNESS.value,
            show_default=True,
            help="Entropy source.",
        ),
        click.option(
            "--colormap",
            type=click.Choice([c.value for c in ColorMapName], case_sensitive=False),
            default=ColorMapName.RDBU.value,
            show_default=True,
        ),
        click.option(
            "--grid", default="25x50", show_default=True, help="Viewpoints <lat>x<lon>."
        ),
        click.option(
            "--ne", type=int, default=30, show_default=True, help="Frames per entropy step."
        ),
        click.option(
            "--interp",
            type=click.Choice([m.value for m in Interpolation]),
            default=Interpolation.SQUAD.value,
            show_default=True,
        ),
    ]
    for option in reversed(options):
        f = option(f)
    return f


def _setup_logging(verbose: bool) -> None:
    from rich.console import Console
    from rich.logging import RichHandler

    logging.basicConfig(
        level=logging.DEBUG if verbose else logging.WARNING,
        format="%(message)s",
        handlers=[RichHandler(console=Console(stderr=True), show_path=False)],
        force=True,
    )


def _build_config(options: dict):
    try:
        return config_from_options(options)
    except ConfigError as exc:
        raise click.BadParameter(exc.message, param_hint=exc.field) from None


def _with_progress(console, description: str, work):
    """Call ``work(on_step)`` under a rich progress bar over simulation steps."""
    from rich.progress import BarColumn, MofNCompleteColumn, Progress, TimeElapsedColumn

    with Progress(
        "[progress.description]{task.description}",
        BarColumn(),
        MofNCompleteColumn(),
        TimeElapsedColumn(),
        console=console,
        transient=True,
    ) as progress:
        task = progress.add_task(description, total=None)

        def on_step(done: int, total: int) -> None:
            progress.update(task, completed=done, total=total)

        return work(on_step)


@click.group(invoke_without_command=True)
@click.version_option(version="0.1.0")
@click.option(
    "--tui/--no-tui",
    default=True,
    help="Launch the interactive TUI when no command is given (default: enabled).",
)
@click.pass_context
def main(ctx, tui):
    """Entropy-driven camera paths for in-situ visualization of time-varying volumes.

    Run with no command to launch an interactive guide, or use a subcommand
    (run, sweep, trace) directly.
    """
    if ctx.invoked_subcommand is not None:
        return

    if tui:
        from viewpath.tui import display_welcome

        options = display_welcome()
        if options is None:
            click.echo("Cancelled.")
            return
        ctx.invoke(run, **options)
    else:
        click.echo(ctx.get_help())


@main.command()
@_common_options
@_run_axis_options
@click.option("--metrics", is_flag=True, help="Score every frame and the best-viewpoint trace.")
@click.option("--all-views", is_flag=True, help="Also save every candidate view per evaluation.")
def run(verbose, **options):
    """Render a camera path through a simulation run.

    Writes frames, heatmaps, run.log, manifest.txt and summary.txt under --out.
    """
    import shlex
    import time

    from rich.console import Console
    from rich.panel import Panel

    from viewpath.output.manifest import encoder_command
    from viewpath.pipeline import run as run_pipeline

    _setup_logging(verbose)
    config = _build_config(options)
    console = Console()

    console.print(f"[bold]Source:[/bold] {config.source}  [bold]Dims:[/bold] {config.dims}")
    console.print(
        f"[bold]Grid:[/bold] {config.grid[0]}x{config.grid[1]}  "
        f"[bold]N_V/N_E:[/bold] {config.nv}/{config.ne}  "
        f"[bold]Path:[/bold] {config.interp.value}  "
        f"[bold]Entropy:[/bold] {config.entropy.value}"
    )
    console.print(f"[bold]Output directory:[/bold] {config.out}")

    start = time.monotonic()
    try:
        result = _with_progress(
            console, "Simulating", lambda on_step: run_pipeline(config, on_step)
        )
    except (OSError, ValueError) as exc:
        raise click.ClickException(str(exc)) from None
    elapsed = time.monotonic() - start

    lines = [
        "[bold green]Camera path rendered[/bold green]\n",
        f"Output:      {result.out}",
        f"Frames:      {len(result.frames)}  ({len(result.evaluations)} entropy evaluations)",
        f"Viewpoints:  {len(result.grid)}",
        f"Evaluation:  {result.evaluation_seconds:.1f}s",
    ]
    if result.average_entropy is not None:
        lines.append(f"Avg entropy: {result.average_entropy:.4f}")
        lines.append(f"Distance:    {result.final_distance:.4f}")
    lines.append(f"Elapsed:     {elapsed:.0f}s")
    console.print(Panel("\n".join(lines), title="✓ Done", expand=False))

    argv = encoder_command(result.out / "manifest.txt", result.out / "path.mp4")
    console.print("\nEncode with:")
    console.print(shlex.join(argv), markup=False, highlight=False)


@main.command()
@_common_options
@click.option("--entropy", default=None, help="Entropy sources, comma-separated.")
@click.option("--colormap", default=None, help="Color maps, comma-separated.")
@click.option("--grid", default=None, help="Viewpoint grids, comma-separated (10x20,25x50).")
@click.option("--ne", default=None, help="Frames per entropy step, comma-separated.")
@click.option("--interp", default=None, help="Interpolation methods, comma-separated.")
def sweep(verbose, entropy, colormap, grid, ne, interp, **options):
    """Run the cross product of sweep axes and summarise each cell in sweep.csv.

    Axes left out use the run default. Every cell runs in metrics mode.
    """
    from rich.console import Console
    from rich.table import Table

    from viewpath.pipeline import SWEEP_AXES, format_setting
    from viewpath.pipeline import sweep as run_sweep

    _setup_logging(verbose)
    base = _build_config(options)
    try:
        matrix = {
            "entropy": parse_list(entropy or ""),
            "colormap": parse_list(colormap or ""),
            "grid": [parse_size(g) for g in parse_list(grid or "")],
            "ne": [int(n) for n in parse_list(ne or "")],
            "interp": parse_list(interp or ""),
        }
    except ValueError as exc:
        raise click.BadParameter(str(exc)) from None
    matrix = {axis: values for axis, values in matrix.items() if values}

    console = Console()

    def on_cell(index, total, cell):
        console.print(f"\n[bold blue]Cell {index + 1}/{total}:[/bold blue] {cell.out}")

    try:
        summaries = run_sweep(base, matrix, on_cell=on_cell)
    except ConfigError as exc:
        raise click.BadParameter(exc.message, param_hint=exc.field) from None

    table = Table(title="Sweep summary", show_header=True, header_style="bold magenta")
    table.add_column("Cell", style="dim")
    for axis in SWEEP_AXES:
        table.add_column(axis)
    table.add_column("Avg entropy", justify="right", style="green")
    table.add_column("Distance", justify="right", style="green")
    failed = 0
    for s in summaries:
        cells = [format_setting(s.settings[axis]) for axis in SWEEP_AXES]
        if s.error:
            failed += 1
            table.add_row(str(s.index), *cells, "[red]failed[/red]", s.error)
        else:
            table.add_row(
                str(s.index), *cells, f"{s.average_entropy:.4f}", f"{s.final_distance:.4f}"
            )
    console.print(table)
    console.print(f"Summary: {base.out / 'sweep.csv'}")
    if failed:
        raise SystemExit(1)


@main.command()
@_common_options
@_run_axis_options
def trace(verbose, **options):
    """Write the best viewpoint of every visualization step to trace.csv."""
    from rich.console import Console

    from viewpath.pipeline import trace as run_trace

    _setup_logging(verbose)
    config = _build_config(options)
    console = Console()
    try:
        results = _with_progress(console, "Evaluating", lambda on_step: run_trace(config, on_step))
    except (OSError, ValueError) as exc:
        raise click.ClickException(str(exc)) from None
    click.echo(f"Traced {len(results)} visualization steps -> {config.out / 'trace.csv'}")
