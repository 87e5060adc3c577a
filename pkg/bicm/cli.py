"""Command-line front end: ``bicm <subcommand> [flags]`` emitting CSV or JSON.

Examples:
  - BICM capacity of 8-PAM/BRGC on a dB grid:
      bicm capacity --alphabet pam:8 --labeling brgc --snr-db-min -10 --snr-db-max 20

  - First-order coefficient of a labeling read from disk:
      bicm alpha --alphabet psk:8 --labeling file:labelings/fbc8.txt

  - Census of all 8! labelings of 8-PSK as JSON:
      bicm search-labelings --alphabet psk:8 --format json --out results/psk8_census.json
"""

from __future__ import annotations

import argparse
import json
import logging
import sys
from collections.abc import Callable, Sequence
from dataclasses import dataclass, field
from typing import Any, NoReturn

import numpy as np
from dotenv import load_dotenv

from bicm import __version__
from bicm.config.runtime import configure_logging
from bicm.config.settings import Settings, get_settings
from bicm.core.asymptotics import alpha_bicm, alpha_cm, is_foo, nbc_ordered
from bicm.core.capacity import (
    CapacityInverter,
    capacity_curve,
    capacity_function,
    default_rate_grid,
    f_curve,
    min_ebn0,
    snr_gap,
)
from bicm.core.constants import LOG2E
from bicm.core.constellations import Constellation, from_db
from bicm.core.hadamard import ht
from bicm.core.search import distinct_value_count_of_pmf, enumerate_alpha_classes
from bicm.core.shaping import optimize_alpha_distribution, optimize_distribution, shaped_f_curve
from bicm.errors import DomainError
from bicm.models import CapacityCurve, RunManifest
from bicm.services.registry import ALPHABET_FORMS, ServiceRegistry, build_service_registry
from bicm.services.tables import reference_tables
from bicm.utils import json_safe, render_csv, render_json, write_manifest_sidecar, write_text

logger = logging.getLogger(__name__)

EXIT_OK = 0
EXIT_DOMAIN = 2
EXIT_USAGE = 64

CURVE_HEADER = ["snr_db", "rate_bpcu", "ebn0_db"]


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message: str) -> NoReturn:
        self.print_usage(sys.stderr)
        raise UsageError(f"{self.prog}: error: {message}")


@dataclass
class CommandOutput:
    header: list[str]
    rows: list[list[Any]]
    payload: Any
    summary: Any = None
    config: dict[str, Any] = field(default_factory=dict)


Handler = Callable[[argparse.Namespace, ServiceRegistry], CommandOutput]


def _float_list(text: str) -> list[float]:
    try:
        return [float(part) for part in text.split(",") if part.strip()]
    except ValueError as exc:
        raise DomainError(f"expected comma-separated numbers, got {text!r}") from exc


def _snr_grid(args: argparse.Namespace) -> list[float]:
    if args.snr_db_step <= 0 or args.snr_db_max < args.snr_db_min:
        raise DomainError(
            f"SNR grid needs step > 0 and max >= min, got [{args.snr_db_min}, {args.snr_db_max}]"
            f" step {args.snr_db_step}"
        )
    grid = np.arange(args.snr_db_min, args.snr_db_max + args.snr_db_step / 2, args.snr_db_step)
    return [round(float(v), 10) for v in grid]


def _constellation(args: argparse.Namespace, registry: ServiceRegistry) -> Constellation:
    return registry.constellation(args.alphabet, args.labeling, args.bits)


def _constellation_config(args: argparse.Namespace) -> dict[str, Any]:
    return {"alphabet": args.alphabet, "labeling": args.labeling, "bits": args.bits}


def _curve_rows(curve: CapacityCurve) -> list[list[Any]]:
    return [[p.snr_db, p.rate, p.ebn0_db] for p in curve.points]


# -- Handlers -----------------------------------------------------------------------------------


def _cmd_capacity(args: argparse.Namespace, registry: ServiceRegistry) -> CommandOutput:
    constellation = _constellation(args, registry)
    curve = capacity_curve(
        None if args.kind == "awgn" else constellation,
        args.kind,
        _snr_grid(args),
        quad=registry.quadrature,
        channel=registry.channel_for(constellation.alphabet),
        workers=registry.workers,
    )
    return CommandOutput(CURVE_HEADER, _curve_rows(curve), curve, config=_constellation_config(args))


def _cmd_f_curve(args: argparse.Namespace, registry: ServiceRegistry) -> CommandOutput:
    constellation = _constellation(args, registry)
    channel = registry.channel_for(constellation.alphabet)
    target = None if args.kind == "awgn" else constellation
    inverter = CapacityInverter(
        capacity_function(target, args.kind, registry.quadrature, dimension=channel.dimension),
        workers=registry.workers,
    )
    rates = _float_list(args.rates) if args.rates else default_rate_grid(inverter.max_rate, count=args.rate_count)
    if args.shaped:
        curve = shaped_f_curve(
            constellation.alphabet,
            constellation.labeling,
            rates,
            args.step or registry.settings.shaping_step,
            quad=registry.quadrature,
            channel=channel,
            workers=registry.workers,
        )
    else:
        curve = f_curve(target, args.kind, rates, quad=registry.quadrature, channel=channel, inverter=inverter)
    return CommandOutput(CURVE_HEADER, _curve_rows(curve), curve, config=_constellation_config(args))


def _cmd_gap(args: argparse.Namespace, registry: ServiceRegistry) -> CommandOutput:
    constellation = _constellation(args, registry)
    inverter = CapacityInverter(
        capacity_function(constellation, args.kind, registry.quadrature), workers=registry.workers
    )
    results = [
        snr_gap(constellation, args.kind, rate, quad=registry.quadrature, inverter=inverter)
        for rate in _float_list(args.rates)
    ]
    rows = [[r.rate, r.gap, r.gap_db] for r in results]
    return CommandOutput(["rate_bpcu", "gap", "gap_db"], rows, results, config=_constellation_config(args))


def _cmd_min_ebn0(args: argparse.Namespace, registry: ServiceRegistry) -> CommandOutput:
    constellation = _constellation(args, registry)
    result = min_ebn0(
        constellation,
        args.kind,
        quad=registry.quadrature,
        channel=registry.channel_for(constellation.alphabet),
        workers=registry.workers,
    )
    roots = ";".join(f"{r:.12g}" for r in result.interior_roots)
    row = [result.rate, result.ebn0, result.ebn0_db, result.at_zero_rate, roots]
    header = ["rate_bpcu", "ebn0", "ebn0_db", "at_zero_rate", "interior_roots"]
    return CommandOutput(header, [row], result, config=_constellation_config(args))


def _cmd_alpha(args: argparse.Namespace, registry: ServiceRegistry) -> CommandOutput:
    constellation = _constellation(args, registry)
    result = alpha_cm(constellation) if args.kind == "cm" else alpha_bicm(constellation)
    row = [result.alpha, result.alpha / LOG2E, result.zero_rate_ebn0, result.zero_rate_ebn0_db]
    header = ["alpha", "alpha_over_log2e", "zero_rate_ebn0", "zero_rate_ebn0_db"]
    return CommandOutput(header, [row], result, config=_constellation_config(args))


def _cmd_foo_check(args: argparse.Namespace, registry: ServiceRegistry) -> CommandOutput:
    alphabet = registry.alphabet(args.alphabet)
    labeling = registry.labeling(args.labeling, alphabet)
    verdict = is_foo(alphabet, labeling)
    header = ["is_foo", "residual", "k"] + [f"v_{n}" for n in range(alphabet.dimension)]
    rows = [[verdict.is_foo, verdict.residual, k, *v] for k, v in enumerate(verdict.v)]
    return CommandOutput(header, rows, verdict, config={"alphabet": args.alphabet, "labeling": args.labeling})


def _cmd_ht(args: argparse.Namespace, registry: ServiceRegistry) -> CommandOutput:
    alphabet = registry.alphabet(args.alphabet)
    labeling = registry.labeling(args.labeling, alphabet)
    spectrum = ht(nbc_ordered(alphabet, labeling))
    energies = spectrum.energies()
    header = ["index"] + [f"t_{n}" for n in range(alphabet.dimension)] + ["energy", "power_of_two"]
    rows = [
        [j, *spectrum.coefficients[j].tolist(), float(energies[j]), j > 0 and (j & (j - 1)) == 0]
        for j in range(spectrum.size)
    ]
    payload = {"coefficients": spectrum.coefficients.tolist(), "power_of_two_energy": spectrum.power_of_two_energy()}
    return CommandOutput(header, rows, payload, config={"alphabet": args.alphabet, "labeling": args.labeling})


def _cmd_search(args: argparse.Namespace, registry: ServiceRegistry) -> CommandOutput:
    alphabet = registry.alphabet(args.alphabet)
    census = enumerate_alpha_classes(
        alphabet,
        allow_large=args.allow_large,
        max_size=registry.settings.search_max_order,
        workers=registry.workers,
    )
    rows = [[c.alpha, c.count] for c in census.classes]
    summary = {
        "alphabet": census.alphabet,
        "total": census.total,
        "class_count": census.class_count,
        "distinct_counts": distinct_value_count_of_pmf(census),
        "foo_count": census.foo_count,
        "max_alpha": census.max_alpha,
        "max_witness": census.max_witness,
    }
    return CommandOutput(["alpha", "count"], rows, census, summary=summary, config={"alphabet": args.alphabet})


def _cmd_shape(args: argparse.Namespace, registry: ServiceRegistry) -> CommandOutput:
    alphabet = registry.alphabet(args.alphabet)
    labeling = registry.labeling(args.labeling, alphabet)
    step = args.step or registry.settings.shaping_step
    config = {"alphabet": args.alphabet, "labeling": args.labeling, "step": step, "objective": args.objective}
    bit_columns = [f"p0_{k}" for k in range(labeling.order)]
    if args.objective == "alpha":
        bits, result = optimize_alpha_distribution(alphabet, labeling, step)
        row = [*bits.p0, result.alpha, result.zero_rate_ebn0_db]
        return CommandOutput(
            bit_columns + ["alpha", "zero_rate_ebn0_db"], [row], {"bits": bits, "alpha": result}, config=config
        )
    results = [
        optimize_distribution(
            alphabet,
            labeling,
            from_db(db),
            step,
            refine=not args.no_refine,
            quad=registry.quadrature,
            workers=registry.workers,
        )
        for db in _float_list(args.snr_db)
    ]
    rows = [
        [db, *r.bits.p0, r.shaped_rate, r.uniform_rate]
        for db, r in zip(_float_list(args.snr_db), results, strict=True)
    ]
    header = ["snr_db", *bit_columns, "shaped_rate_bpcu", "uniform_rate_bpcu"]
    return CommandOutput(header, rows, results, config=config)


def _cmd_tables(args: argparse.Namespace, registry: ServiceRegistry) -> CommandOutput:
    rows = reference_tables()
    header = ["table", "alphabet", "labeling", "alpha", "computed_db", "published_db", "within_tolerance"]
    body = [[r.table, r.alphabet, r.labeling, r.alpha, r.computed_db, r.published_db, r.within_tolerance] for r in rows]
    return CommandOutput(header, body, rows)


# -- Parser -------------------------------------------------------------------------------------


def _common_parent() -> argparse.ArgumentParser:
    parent = argparse.ArgumentParser(add_help=False)
    parent.add_argument("--quad-nodes", type=int, default=None, help="Gauss-Hermite nodes per dimension")
    parent.add_argument("--mc-samples", type=int, default=None, help="Use Monte-Carlo integration with this many draws")
    parent.add_argument("--seed", type=int, default=None, help="Monte-Carlo seed")
    parent.add_argument("--workers", type=int, default=None, help="Worker threads for sweeps")
    parent.add_argument("--fading", type=float, default=1.0, help="E[H^2] of the fading channel")
    parent.add_argument("--format", choices=["csv", "json"], default="csv")
    parent.add_argument("--out", type=str, default=None, help="Write to this file instead of standard output")
    parent.add_argument("--log-level", type=str, default=None)
    return parent


def _constellation_parent(default_labeling: str = "brgc") -> argparse.ArgumentParser:
    parent = argparse.ArgumentParser(add_help=False)
    parent.add_argument("--alphabet", required=True, help=ALPHABET_FORMS)
    parent.add_argument("--labeling", default=default_labeling, help="brgc | nbc | bsgc | fbc | file:<path>")
    parent.add_argument("--labeling-file", dest="labeling_file", default=None, help="Shorthand for --labeling file:")
    parent.add_argument("--bits", default=None, help="Comma-separated P_Ck(0), one per bit position")
    return parent


def _add_grid(parser: argparse.ArgumentParser) -> None:
    parser.add_argument("--snr-db-min", type=float, default=-20.0)
    parser.add_argument("--snr-db-max", type=float, default=20.0)
    parser.add_argument("--snr-db-step", type=float, default=0.5)


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="bicm", description="BICM capacity, low-SNR asymptotics, labeling search and shaping")
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)
    common = _common_parent()
    const = _constellation_parent()
    kinds = ["cm", "bicm", "awgn"]

    p = sub.add_parser("capacity", parents=[common, const], help="Rate versus SNR")
    p.add_argument("--kind", choices=kinds, default="bicm")
    _add_grid(p)
    p.set_defaults(handler=_cmd_capacity)

    p = sub.add_parser("f-curve", parents=[common, const], help="Eb/N0 versus rate")
    p.add_argument("--kind", choices=kinds, default="bicm")
    p.add_argument("--rates", default=None, help="Comma-separated rates; default is a log grid")
    p.add_argument("--rate-count", type=int, default=50)
    p.add_argument("--shaped", action="store_true", help="Envelope over optimized bit distributions")
    p.add_argument("--step", type=float, default=None, help="Shaping grid step")
    p.set_defaults(handler=_cmd_f_curve)

    p = sub.add_parser("gap", parents=[common, const], help="SNR gap to the AWGN capacity")
    p.add_argument("--kind", choices=["cm", "bicm"], default="bicm")
    p.add_argument("--rates", default="0,0.25,0.5,1,1.5,2")
    p.set_defaults(handler=_cmd_gap)

    p = sub.add_parser("min-ebn0", parents=[common, const], help="Minimum Eb/N0 over all rates")
    p.add_argument("--kind", choices=kinds, default="bicm")
    p.set_defaults(handler=_cmd_min_ebn0)

    p = sub.add_parser("alpha", parents=[common, const], help="First-order coefficient")
    p.add_argument("--kind", choices=["cm", "bicm"], default="bicm")
    p.set_defaults(handler=_cmd_alpha)

    p = sub.add_parser("foo-check", parents=[common, _constellation_parent()], help="First-order optimality")
    p.set_defaults(handler=_cmd_foo_check)

    p = sub.add_parser("ht", parents=[common, _constellation_parent("nbc")], help="Hadamard spectrum")
    p.set_defaults(handler=_cmd_ht)

    p = sub.add_parser("search-labelings", parents=[common], help="Census over every labeling")
    p.add_argument("--alphabet", required=True)
    p.add_argument("--allow-large", action="store_true", help="Permit alphabets beyond the configured size")
    p.set_defaults(handler=_cmd_search)

    p = sub.add_parser("shape", parents=[common, const], help="Optimize the bitwise input distribution")
    p.add_argument("--snr-db", default="0", help="Comma-separated SNR values in dB")
    p.add_argument("--step", type=float, default=None)
    p.add_argument("--objective", choices=["capacity", "alpha"], default="capacity")
    p.add_argument("--no-refine", action="store_true")
    p.set_defaults(handler=_cmd_shape)

    p = sub.add_parser("tables", parents=[common], help="Zero-rate reference tables")
    p.set_defaults(handler=_cmd_tables)
    return parser


# -- Entry points -------------------------------------------------------------------------------


def _emit(output: CommandOutput, args: argparse.Namespace, manifest: RunManifest, settings: Settings) -> None:
    if args.format == "json":
        payload = output.payload if output.summary is None else {"summary": output.summary, "census": output.payload}
        text = render_json(payload, manifest)
    else:
        text = render_csv(output.header, output.rows, settings.float_digits)
    if args.out is None:
        sys.stdout.write(text)
        if args.format == "csv" and output.summary is not None:
            sys.stderr.write("summary " + json.dumps(json_safe(output.summary), allow_nan=False) + "\n")
        return
    path = write_text(text, args.out)
    if args.format == "csv":
        write_manifest_sidecar(manifest, path)
        if output.summary is not None:
            write_text(render_json(output.summary), path.with_suffix(".summary.json"))
    logger.info("Wrote %s", path)


def run(argv: Sequence[str] | None = None) -> int:
    load_dotenv()
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except UsageError as exc:
        print(exc, file=sys.stderr)
        return EXIT_USAGE
    except SystemExit as exc:
        # --help / --version
        return int(exc.code or 0)

    settings = get_settings()
    configure_logging(settings, level=args.log_level)
    if getattr(args, "labeling_file", None):
        args.labeling = f"file:{args.labeling_file}"

    try:
        registry = build_service_registry(
            settings,
            nodes=args.quad_nodes,
            samples=args.mc_samples,
            seed=args.seed,
            workers=args.workers,
            fading_second_moment=args.fading,
        )
        handler: Handler = args.handler
        output = handler(args, registry)
        manifest = RunManifest(
            subcommand=args.command,
            config={**output.config, **registry.describe()},
            version=__version__,
        )
        _emit(output, args, manifest, settings)
    except (DomainError, FileNotFoundError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_DOMAIN
    except ValueError as exc:
        # Malformed input files and rejected model values
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_DOMAIN
    return EXIT_OK


def main() -> None:
    sys.exit(run())


if __name__ == "__main__":
    main()
