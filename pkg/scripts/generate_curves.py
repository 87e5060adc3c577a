"""Write plot-ready CSV curves under results/, each with a manifest sidecar.

Examples:
  - All curve families with default quadrature:
      poetry run python scripts/generate_curves.py

  - Skip the (slow) shaping sweep and use 4 threads:
      poetry run python scripts/generate_curves.py --skip-shaping --workers 4
"""

from __future__ import annotations

import argparse
import logging
from pathlib import Path
from typing import Any

import numpy as np
from dotenv import load_dotenv
from rich.console import Console
from rich.panel import Panel
from rich.progress import track
from rich.rule import Rule

from bicm import __version__
from bicm.config.runtime import build_quadrature, configure_logging
from bicm.config.settings import Settings, get_settings
from bicm.core.capacity import CapacityInverter, bicm_capacity, capacity_curve, default_rate_grid, f_curve, snr_gap
from bicm.core.constants import LABELING_KINDS
from bicm.core.constellations import Constellation, InputAlphabet, pam, psk
from bicm.core.labelings import standard_labeling
from bicm.core.shaping import shaped_f_curve
from bicm.models import CapacityCurve, CapacityKind, QuadratureSpec, RunManifest
from bicm.utils import render_csv, write_manifest_sidecar, write_text

logger = logging.getLogger(__name__)

CURVE_HEADER = ["snr_db", "rate_bpcu", "ebn0_db"]
SNR_DB_GRID = np.arange(-20.0, 30.0 + 1e-9, 0.25)


def _write(
    rows: list[list[Any]], header: list[str], path: Path, config: dict[str, Any], settings: Settings
) -> Path:
    write_text(render_csv(header, rows, settings.float_digits), path)
    manifest = RunManifest(subcommand="generate-curves", config=config, version=__version__)
    write_manifest_sidecar(manifest, path)
    return path


def _curve_rows(curve: CapacityCurve) -> list[list[Any]]:
    return [[p.snr_db, p.rate, p.ebn0_db] for p in curve.points]


def pam8_labeling_curves(out_dir: Path, quad: QuadratureSpec, settings: Settings, workers: int) -> list[Path]:
    """Rate versus Eb/N0 for 8-PAM under each standard labeling, plus CM and AWGN."""
    alphabet = pam(8)
    written: list[Path] = []
    jobs: list[tuple[str, Constellation | None, CapacityKind]] = [
        (kind, Constellation(alphabet, standard_labeling(kind, 3)), "bicm") for kind in LABELING_KINDS
    ]
    jobs += [("cm", Constellation(alphabet, standard_labeling("nbc", 3)), "cm"), ("awgn", None, "awgn")]
    for label, constellation, kind in track(jobs, description="8-PAM curves", transient=True):
        curve = capacity_curve(constellation, kind, SNR_DB_GRID, quad=quad, workers=workers)
        config = {"alphabet": "pam:8", "labeling": label, "kind": kind, "quadrature": quad.model_dump()}
        written.append(_write(_curve_rows(curve), CURVE_HEADER, out_dir / f"pam8_{label}.csv", config, settings))
    return written


def shaped_curves(
    out_dir: Path, quad: QuadratureSpec, settings: Settings, workers: int, rate_count: int
) -> list[Path]:
    """Shaped and uniform f-curves for 8-PAM with BRGC and NBC."""
    alphabet = pam(8)
    written: list[Path] = []
    for kind in ("brgc", "nbc"):
        labeling = standard_labeling(kind, 3)
        uniform = Constellation(alphabet, labeling)
        inverter = CapacityInverter(lambda snr, c=uniform: bicm_capacity(c, snr, quad), workers=workers)
        rates = default_rate_grid(inverter.max_rate, count=rate_count, low=0.05)
        base = f_curve(uniform, "bicm", rates, quad=quad, inverter=inverter)
        shaped = shaped_f_curve(alphabet, labeling, rates, settings.shaping_step, quad=quad, workers=workers)
        config = {"alphabet": "pam:8", "labeling": kind, "step": settings.shaping_step, "quadrature": quad.model_dump()}
        written.append(_write(_curve_rows(base), CURVE_HEADER, out_dir / f"pam8_{kind}_uniform.csv", config, settings))
        written.append(_write(_curve_rows(shaped), CURVE_HEADER, out_dir / f"pam8_{kind}_shaped.csv", config, settings))
    return written


def gap_curves(out_dir: Path, quad: QuadratureSpec, settings: Settings, workers: int) -> list[Path]:
    """SNR gap versus rate for BRGC-labeled 4/8/16-PAM and 8-PSK."""
    alphabets: list[tuple[str, InputAlphabet]] = [
        ("pam4", pam(4)),
        ("pam8", pam(8)),
        ("pam16", pam(16)),
        ("psk8", psk(8)),
    ]
    written: list[Path] = []
    for label, alphabet in track(alphabets, description="Gap curves", transient=True):
        constellation = Constellation(alphabet, standard_labeling("brgc", alphabet.order))
        inverter = CapacityInverter(lambda snr, c=constellation: bicm_capacity(c, snr, quad), workers=workers)
        rates = [0.0, *default_rate_grid(inverter.max_rate, count=60, low=0.01).tolist()]
        gaps = [snr_gap(constellation, "bicm", r, quad=quad, inverter=inverter) for r in rates]
        rows: list[list[Any]] = [[g.rate, g.gap_db] for g in gaps]
        config = {"alphabet": label, "labeling": "brgc", "quadrature": quad.model_dump()}
        written.append(_write(rows, ["rate_bpcu", "gap_db"], out_dir / f"gap_{label}_brgc.csv", config, settings))
    return written


def parse_args() -> argparse.Namespace:
    parser = argparse.ArgumentParser(description="Generate plot-ready capacity, shaping and gap curves.")
    parser.add_argument("--out-dir", type=str, default=None, help="Defaults to the configured results directory")
    parser.add_argument("--quad-nodes", type=int, default=None, help="Gauss-Hermite nodes per dimension")
    parser.add_argument("--workers", type=int, default=None, help="Worker threads for sweeps")
    parser.add_argument("--rate-count", type=int, default=40, help="Rates per shaped f-curve")
    parser.add_argument("--skip-shaping", action="store_true", help="Skip the shaped-curve sweep")
    return parser.parse_args()


def main() -> None:
    args = parse_args()
    load_dotenv()
    settings = get_settings()
    configure_logging(settings)
    console = Console()

    out_dir = Path(args.out_dir) if args.out_dir else settings.resolved_results_dir
    quad = build_quadrature(settings, nodes=args.quad_nodes)
    workers = settings.workers if args.workers is None else args.workers
    console.print(Panel.fit(f"Curve generation\n({out_dir})", style="bold"))

    written: list[Path] = []
    console.print(Rule("8-PAM labelings"))
    written += pam8_labeling_curves(out_dir, quad, settings, workers)
    console.print(Rule("SNR gaps"))
    written += gap_curves(out_dir, quad, settings, workers)
    if not args.skip_shaping:
        console.print(Rule("Shaping"))
        written += shaped_curves(out_dir, quad, settings, workers, args.rate_count)

    for path in written:
        console.print(f"  [green]wrote[/green] {path}")


if __name__ == "__main__":
    main()
