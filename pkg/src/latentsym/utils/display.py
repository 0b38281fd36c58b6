from typing import Optional

from rich.console import Console
from rich.layout import Layout
from rich.panel import Panel
from rich.table import Table
from rich.text import Text

from latentsym.data_model.dynamics import TrajectorySample
from latentsym.data_model.network import CospectralReport
from latentsym.data_model.numerics import SpectralDecomposition
from latentsym.data_model.simulation import RunConfig
from latentsym.data_model.sweep import EPLocation
from latentsym.data_model.trimer import PhaseClassification, Regime
from latentsym.settings import get_run_settings


def _fmt(z: complex) -> str:
    z = complex(z)
    return f"{z.real:+.6f} {z.imag:+.6f}i"


class ConsoleDisplay:
    # stderr keeps standard output free for data
    console = Console(stderr=True)

    REGIME_STYLES = {
        Regime.PT_UNBROKEN: "bold green",
        Regime.EXCEPTIONAL_POINT: "bold yellow",
        Regime.PT_BROKEN: "bold red",
        Regime.NON_PT: "bold magenta",
    }

    @classmethod
    def display_run_config(cls, config: RunConfig):
        layout = Layout()
        layout.split_row(
            Layout(name="run", ratio=1),
            Layout(name="model", ratio=1),
        )

        run_content = Panel(
            f"[white]Command:[/] {config.command.value}\n"
            f"[white]Output:[/] {config.output or 'stdout'}\n"
            f"[white]Format:[/] {config.output_format.value}\n"
            f"[white]Tolerance:[/] {config.tol:.1e}\n"
            f"[white]Normalize:[/] {config.normalize}",
            title="[bold blue]Run Configuration",
            border_style="blue",
        )

        if config.model.trimer is not None:
            trimer = config.model.trimer
            model_text = (
                f"[white]omega, gamma:[/] {trimer.omega}, {trimer.gamma}\n"
                f"[white]mu, kappa:[/] {trimer.mu}, {trimer.kappa}\n"
                f"[white]chi:[/] {trimer.chi}\n"
                f"[white]omega3, gamma3:[/] {trimer.omega3}, {trimer.gamma3}"
            )
        else:
            network = config.model.network
            model_text = (
                f"[white]Sites:[/] {len(network.sites)}\n"
                f"[white]Couplings:[/] {len(network.couplings)}"
            )
        model_content = Panel(
            model_text, title="[bold cyan]Model", border_style="cyan"
        )

        layout["run"].update(run_content)
        layout["model"].update(model_content)
        cls.console.print(layout, height=8)

        table = Table(title="Settings", show_header=True, header_style="bold cyan")
        table.add_column("Setting")
        table.add_column("Value")
        for name, value in get_run_settings().items():
            table.add_row(name, str(value))
        cls.console.print(table)

    @classmethod
    def display_spectrum(
        cls,
        spectrum: SpectralDecomposition,
        phase: Optional[PhaseClassification] = None,
    ):
        table = Table(title="Spectrum", show_header=True, header_style="bold cyan")
        table.add_column("#", justify="right")
        table.add_column("Eigenvalue")
        for k, lam in enumerate(spectrum.eigenvalues):
            table.add_row(str(k), _fmt(lam))
        cls.console.print(table)

        content = Text()
        content.append("Defective: ", style="bold cyan")
        content.append(
            f"{spectrum.defective}\n", style="bold red" if spectrum.defective else None
        )
        content.append("Eigenvector condition: ", style="bold cyan")
        content.append(f"{spectrum.eigenvector_condition:.3e}\n")
        content.append("Max overlap: ", style="bold cyan")
        content.append(f"{spectrum.max_overlap:.12f}")
        if phase is not None:
            content.append("\nRegime: ", style="bold cyan")
            content.append(phase.regime.value, style=cls.REGIME_STYLES[phase.regime])
            content.append("\ngamma_c: ", style="bold cyan")
            content.append(f"{phase.gamma_c:.12f}")
        cls.console.print(
            Panel(content, title="[bold blue]Eigenstructure", border_style="blue")
        )

    @classmethod
    def display_trajectory(cls, samples: list[TrajectorySample], rows: int = 5):
        """Show the first and last few samples."""
        table = Table(title="Trajectory", show_header=True, header_style="bold cyan")
        table.add_column("t", justify="right")
        n = len(samples[0].occupations) if samples else 0
        for j in range(n):
            table.add_column(f"P{j + 1}", justify="right")
        shown = samples if len(samples) <= 2 * rows else samples[:rows] + samples[-rows:]
        for k, sample in enumerate(shown):
            if len(samples) > 2 * rows and k == rows:
                table.add_row("...", *["..."] * n)
            table.add_row(f"{sample.t:.4f}", *[f"{p:.6e}" for p in sample.occupations])
        cls.console.print(table)

    @classmethod
    def display_exceptional_points(cls, locations: dict[str, Optional[EPLocation]]):
        content = Text()
        for side, location in locations.items():
            content.append(f"{side}: ", style="bold cyan")
            if location is None:
                content.append("not in sweep range\n", style="yellow")
                continue
            content.append(f"gamma_c = {location.gamma_c:.12f}, ")
            content.append(f"residual = {location.residual:.2e}, ")
            content.append(
                "coalesced\n" if location.coalesced else "not coalesced\n",
                style="green" if location.coalesced else "red",
            )
        cls.console.print(
            Panel(content, title="[bold blue]Exceptional Points", border_style="blue")
        )

    @classmethod
    def display_cospectral(
        cls, reports: list[CospectralReport], classes: list[list[int]]
    ):
        table = Table(
            title="Site Pairs", show_header=True, header_style="bold cyan"
        )
        table.add_column("Pair")
        table.add_column("Cospectral")
        table.add_column("Deviation", justify="right")
        for report in reports:
            table.add_row(
                f"({report.pair[0]}, {report.pair[1]})",
                "[green]yes[/]" if report.cospectral else "[red]no[/]",
                f"{report.max_coeff_deviation:.3e}",
            )
        cls.console.print(table)
        if classes:
            cls.console.print(
                Text(f"Cospectral classes: {classes}", style="bold green")
            )
