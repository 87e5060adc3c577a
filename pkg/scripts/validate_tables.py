"""Compare computed zero-rate tables and 8-PAM labeling crossovers against published values.

Examples:
  - Closed-form tables only (instant):
      poetry run python scripts/validate_tables.py --skip-crossovers

  - Everything, including the numerical crossover search:
      poetry run python scripts/validate_tables.py --quad-nodes 64
"""

from __future__ import annotations

import argparse
import logging
import math
import sys

from dotenv import load_dotenv
from rich.console import Console
from rich.panel import Panel
from rich.progress import track
from rich.rule import Rule
from rich.table import Table

from bicm.config.runtime import build_quadrature, configure_logging
from bicm.config.settings import get_settings
from bicm.core.capacity import labeling_crossover
from bicm.core.constants import REFERENCE_CROSSOVERS_8PAM, REFERENCE_TOLERANCE_DB
from bicm.core.constellations import Constellation, pam
from bicm.core.labelings import standard_labeling
from bicm.models import QuadratureSpec, ReferenceRow
from bicm.services.tables import reference_tables

logger = logging.getLogger(__name__)


def _fmt(value: float | None) -> str:
    if value is None:
        return "-"
    if math.isinf(value):
        return "inf"
    return f"{value:.3f}"


def _status(ok: bool | None) -> str:
    if ok is None:
        return "[dim]n/a[/dim]"
    return "[green]pass[/green]" if ok else "[red]FAIL[/red]"


def print_reference_table(console: Console, title: str, rows: list[ReferenceRow]) -> None:
    table = Table(show_header=True, header_style="bold magenta")
    table.title = title
    table.add_column("Alphabet", justify="left", style="bold")
    table.add_column("Labeling", justify="left")
    table.add_column("alpha / log2 e", justify="right")
    table.add_column("Computed (dB)", justify="right")
    table.add_column("Published (dB)", justify="right")
    table.add_column("Status", justify="center")
    for row in rows:
        table.add_row(
            row.alphabet,
            row.labeling.upper(),
            f"{row.alpha / math.log2(math.e):.6f}",
            _fmt(row.computed_db),
            _fmt(row.published_db),
            _status(row.within_tolerance),
        )
    console.print(table)


def check_crossovers(console: Console, quad: QuadratureSpec) -> list[bool]:
    """Rates where the best 8-PAM labeling switches between NBC, FBC and BRGC."""
    alphabet = pam(8)
    table = Table(show_header=True, header_style="bold cyan")
    table.title = "8-PAM labeling crossovers"
    table.add_column("Pair", justify="left", style="bold")
    table.add_column("Computed rate", justify="right")
    table.add_column("Published rate", justify="right")
    table.add_column("Status", justify="center")

    outcomes: list[bool] = []
    for (first, second), published in track(
        list(REFERENCE_CROSSOVERS_8PAM.items()), description="Searching crossovers", transient=True
    ):
        base = Constellation(alphabet, standard_labeling(first, 3))
        crossings = labeling_crossover(base, base.labeling, standard_labeling(second, 3), quad=quad)
        rates = [c.rate for c in crossings]
        nearest = min(rates, key=lambda r: abs(r - published)) if rates else None
        ok = nearest is not None and abs(nearest - published) <= REFERENCE_TOLERANCE_DB
        outcomes.append(ok)
        table.add_row(f"{first.upper()} / {second.upper()}", _fmt(nearest), f"{published:.2f}", _status(ok))
    console.print(table)
    return outcomes


def parse_args() -> argparse.Namespace:
    parser = argparse.ArgumentParser(description="Validate computed reference values against published tables.")
    parser.add_argument("--quad-nodes", type=int, default=None, help="Gauss-Hermite nodes per dimension")
    parser.add_argument("--skip-crossovers", action="store_true", help="Only check the closed-form tables")
    return parser.parse_args()


def main() -> int:
    args = parse_args()
    load_dotenv()
    settings = get_settings()
    configure_logging(settings)
    console = Console()

    console.print(Panel.fit("Reference table validation\n(zero-rate limits, SNR gaps and crossovers)", style="bold"))
    rows = reference_tables()
    console.print(Rule("Zero-rate Eb/N0"))
    print_reference_table(console, "Zero-rate Eb/N0 per labeling", [r for r in rows if r.table == "zero-rate-ebn0"])
    console.print(Rule("Zero-rate SNR gap"))
    print_reference_table(console, "Zero-rate SNR gap", [r for r in rows if r.table == "zero-rate-gap"])

    outcomes = [bool(r.within_tolerance) for r in rows if r.within_tolerance is not None]
    if not args.skip_crossovers:
        console.print(Rule("Crossovers"))
        outcomes += check_crossovers(console, build_quadrature(settings, nodes=args.quad_nodes))

    failed = sum(1 for ok in outcomes if not ok)
    if failed:
        console.print(f"[red]{failed} of {len(outcomes)} checks failed[/red]")
        return 1
    console.print(f"[green]All {len(outcomes)} checks passed[/green]")
    return 0


if __name__ == "__main__":
    sys.exit(main())
