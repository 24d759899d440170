"""Interactive terminal UI for viewpath, built on rich + questionary.

Running ``viewpath`` with no subcommand launches :func:`display_welcome`, which
guides the user through choosing a data source, the viewpoint grid, the camera path
settings and an output directory, then hands the collected options to ``run``.
"""

from pathlib import Path

import questionary
from rich.console import Console
from rich.panel import Panel
from rich.prompt import Confirm, IntPrompt, Prompt
from rich.table import Table

from viewpath.config import BLOB_SOURCE
from viewpath.director.director import Interpolation
from viewpath.entropy.score import EntropySource
from viewpath.render.colormap import ColorMapName
from viewpath.sim.raw import count_series
from viewpath.utils.parsing import parse_dims, parse_size

console = Console()


def browse_directory(message: str, default: str = ".") -> Path | None:
    """Pick an output directory with questionary's path autocomplete.

    Returns the selected directory (created if missing), or None if cancelled.
    """
    try:
        console.print(
            "[dim]Navigation: Tab to autocomplete, up/down for history, Enter to select[/dim]"
        )
        path = questionary.path(
            message,
            default=default,
            only_directories=True,
            validate=lambda _p: True,  # allow non-existent directories
        ).ask()
        if path:
            selected = Path(path)
            selected.mkdir(parents=True, exist_ok=True)
            return selected
        return None
    except KeyboardInterrupt:
        return None


def prompt_source() -> tuple[str, str] | None:
    """Ask for the volume source; returns ``(source, dims)`` or None if cancelled."""
    kind = questionary.select(
        "Volume source",
        choices=["Built-in blob simulation", "Raw volume series on disk"],
    ).ask()
    if kind is None:
        return None
    if kind.startswith("Built-in"):
        return BLOB_SOURCE, _ask_parsed("Volume dims", "64x64x64", parse_dims)

    while True:
        prefix = questionary.path("Raw series prefix (files are <prefix>_NNNNNN.raw)").ask()
        if not prefix:
            return None
        count = count_series(prefix)
        if count:
            console.print(f"[green]Found {count} volumes[/green]")
            break
        console.print(f"[red]No raw volumes found for prefix {prefix}.[/red]")
        if not Confirm.ask("Try another prefix?", default=True):
            return None
    return prefix, _ask_parsed("Volume dims", "64x64x64", parse_dims)


def _ask_parsed(label: str, default: str, parse) -> str:
    """Prompt until ``parse`` accepts the answer; returns the text as entered."""
    while True:
        text = Prompt.ask(label, default=default).strip()
        try:
            parse(text)
        except ValueError as exc:
            console.print(f"[red]{exc}[/red]")
            continue
        return text


def prompt_path_settings() -> dict:
    """Viewpoint grid, entropy source, color map and camera path options."""
    console.print("\n[bold]Camera path settings:[/bold]\n")
    grid = _ask_parsed("Viewpoint grid <lat>x<lon>", "25x50", parse_size)
    entropy = questionary.select(
        "Entropy source",
        choices=[e.value for e in EntropySource],
        default=EntropySource.DEPTH_AND_LIGHTNESS.value,
    ).ask()
    colormap = questionary.select(
        "Color map",
        choices=[c.value for c in ColorMapName],
        default=ColorMapName.RDBU.value,
    ).ask()
    interp = Prompt.ask(
        "Interpolation",
        choices=[m.value for m in Interpolation],
        default=Interpolation.SQUAD.value,
    )
    ne = IntPrompt.ask("Frames between entropy evaluations (N_E)", default=30)
    while ne < 1:
        console.print("[red]N_E must be at least 1[/red]")
        ne = IntPrompt.ask("Frames between entropy evaluations (N_E)", default=30)
    return {"grid": grid, "entropy": entropy, "colormap": colormap, "interp": interp, "ne": ne}


def confirm_run(options: dict) -> bool:
    """Show a summary table and ask the user to confirm before running."""
    table = Table(title="Run settings", show_header=True, header_style="bold magenta")
    table.add_column("Option", style="cyan")
    table.add_column("Value", style="green")
    for name, value in options.items():
        table.add_row(name, str(value))
    console.print(table)
    console.print()
    return Confirm.ask("Start the run?", default=True)


def display_welcome() -> dict | None:
    """Guide the user through the choices for one run.

    Returns a dict of options keyed to the ``run`` command's parameters,
    or None if the user cancelled.
    """
    console.print()
    console.print(
        Panel(
            "[bold blue]Welcome to viewpath[/bold blue]\n\n"
            "Render a camera path through a time-varying volume:\n"
            "- viewpoints scored by depth and lightness entropy\n"
            "- a smooth SLERP or SQUAD path between the best ones\n\n"
            "This will guide you through the settings step by step.",
            title="🎥 viewpath",
            subtitle="Press Ctrl+C at any time to exit",
        ),
        justify="center",
    )
    console.print()

    source = prompt_source()
    if source is None:
        return None
    source, dims = source

    options: dict = {"source": source, "dims": dims}
    if source == BLOB_SOURCE:
        options["steps"] = IntPrompt.ask("Simulation steps", default=300)
    options.update(prompt_path_settings())
    options["metrics"] = Confirm.ask("Compute evaluation metrics?", default=False)

    out = browse_directory("[bold]Select output directory[/bold]", default="./out")
    if out is None:
        return None
    options["out"] = out

    if not confirm_run(options):
        return None
    return options
