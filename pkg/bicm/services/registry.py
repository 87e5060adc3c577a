from __future__ import annotations

import logging
import math
from dataclasses import dataclass
from pathlib import Path

from bicm.config.runtime import build_quadrature
from bicm.config.settings import Settings
from bicm.core.constants import V_OTOTO, V_OTTO
from bicm.core.constellations import (
    Constellation,
    InputAlphabet,
    from_projection,
    hierarchical_pam,
    pam,
    psk,
    qam,
    read_alphabet,
    rotated_psk4,
)
from bicm.core.labelings import Labeling, nbc, read_labeling, standard_labeling
from bicm.errors import DomainError
from bicm.models import BitDistribution, ChannelSpec, QuadratureSpec

logger = logging.getLogger(__name__)

ALPHABET_FORMS = "pam:M | psk:M | qam:MIxMQ | hpam:d0,d1,... | otto | ototo | apsk4:theta | apsk4:a,b | file:<path>"


def _int_arg(kind: str, arg: str) -> int:
    try:
        return int(arg)
    except ValueError as exc:
        raise DomainError(f"{kind} expects an integer size, got {arg!r}") from exc


def _float_args(kind: str, arg: str) -> list[float]:
    try:
        return [float(part) for part in arg.split(",") if part.strip()]
    except ValueError as exc:
        raise DomainError(f"{kind} expects comma-separated numbers, got {arg!r}") from exc


def parse_alphabet(spec: str) -> InputAlphabet:
    kind, _, arg = spec.strip().partition(":")
    kind = kind.lower()
    if kind == "pam":
        return pam(_int_arg(kind, arg))
    if kind == "psk":
        return psk(_int_arg(kind, arg))
    if kind == "qam":
        left, sep, right = arg.lower().partition("x")
        if not sep:
            raise DomainError(f"qam expects MIxMQ, got {arg!r}")
        return qam(_int_arg(kind, left), _int_arg(kind, right))
    if kind == "hpam":
        return hierarchical_pam(_float_args(kind, arg))
    if kind == "otto":
        return from_projection(nbc(3), V_OTTO, name="OTTO")
    if kind == "ototo":
        return from_projection(nbc(3), V_OTOTO, name="OTOTO")
    if kind == "apsk4":
        values = _float_args(kind, arg)
        if len(values) == 1:
            return rotated_psk4(values[0])
        if len(values) == 2:
            a, b = values
            if a <= 0 or b <= 0:
                raise DomainError(f"apsk4 half-sides must be positive, got a={a:g}, b={b:g}")
            # Rectangle with half-sides (a, b) is the rotated 4-PSK scaled by its radius
            unit = rotated_psk4(math.atan2(b, a))
            return InputAlphabet(unit.points * math.hypot(a, b), name=f"4-APSK[{a:g},{b:g}]")
        raise DomainError(f"apsk4 expects theta or a,b, got {arg!r}")
    if kind == "file":
        return read_alphabet(Path(arg))
    raise DomainError(f"unknown alphabet {spec!r}; expected {ALPHABET_FORMS}")


def parse_labeling(spec: str, order: int) -> Labeling:
    kind, _, arg = spec.strip().partition(":")
    if kind.lower() == "file":
        labeling = read_labeling(Path(arg))
        if labeling.order != order:
            raise DomainError(f"labeling file {arg} has order {labeling.order}, alphabet needs m={order}")
        return labeling
    return standard_labeling(kind, order)


def parse_bits(spec: str | None, order: int) -> BitDistribution:
    if spec is None or not spec.strip():
        return BitDistribution.uniform(order)
    try:
        values = tuple(float(part) for part in spec.split(","))
    except ValueError as exc:
        raise DomainError(f"--bits expects comma-separated probabilities, got {spec!r}") from exc
    if len(values) != order:
        raise DomainError(f"--bits needs m={order} probabilities P_Ck(0), got {len(values)}")
    try:
        return BitDistribution(p0=values)
    except ValueError as exc:
        raise DomainError(f"invalid bit distribution {spec!r}: each P_Ck(0) must lie in [0, 1]") from exc


@dataclass
class ServiceRegistry:
    settings: Settings
    quadrature: QuadratureSpec
    fading_second_moment: float = 1.0
    workers: int = 1

    def alphabet(self, spec: str) -> InputAlphabet:
        return parse_alphabet(spec)

    def labeling(self, spec: str, alphabet: InputAlphabet) -> Labeling:
        return parse_labeling(spec, alphabet.order)

    def constellation(self, alphabet_spec: str, labeling_spec: str, bits_spec: str | None = None) -> Constellation:
        alphabet = self.alphabet(alphabet_spec)
        labeling = self.labeling(labeling_spec, alphabet)
        constellation = Constellation(alphabet, labeling, bits=parse_bits(bits_spec, alphabet.order))
        logger.debug("Resolved constellation %s", constellation.describe())
        return constellation

    def channel_for(self, alphabet: InputAlphabet) -> ChannelSpec:
        return ChannelSpec(fading_second_moment=self.fading_second_moment, dimension=alphabet.dimension)

    def describe(self) -> dict[str, object]:
        return {
            "quadrature": self.quadrature.model_dump(),
            "fading_second_moment": self.fading_second_moment,
            "workers": self.workers,
        }


def build_service_registry(
    settings: Settings,
    *,
    nodes: int | None = None,
    samples: int | None = None,
    seed: int | None = None,
    workers: int | None = None,
    fading_second_moment: float = 1.0,
) -> ServiceRegistry:
    quadrature = build_quadrature(settings, nodes=nodes, samples=samples, seed=seed)
    if not (math.isfinite(fading_second_moment) and fading_second_moment > 0.0):
        raise DomainError(f"E[H^2] must be positive and finite, got {fading_second_moment}")
    return ServiceRegistry(
        settings=settings,
        quadrature=quadrature,
        fading_second_moment=fading_second_moment,
        workers=settings.workers if workers is None else workers,
    )
