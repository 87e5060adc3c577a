"""Probabilistic shaping: grid search over independent per-bit probabilities."""

from __future__ import annotations

import itertools
import logging
import math
from collections.abc import Sequence

import numpy as np
import numpy.typing as npt

from bicm.core.asymptotics import alpha_bicm
from bicm.core.capacity import (
    CapacityInverter,
    _map_ordered,
    _point,
    bicm_capacity,
    increasing_rates,
    resolve_quadrature,
)
from bicm.core.constellations import Constellation, InputAlphabet, from_db
from bicm.core.labelings import Labeling
from bicm.errors import DomainError, RangeError
from bicm.models import AlphaResult, BitDistribution, CapacityCurve, ChannelSpec, QuadratureSpec, ShapingResult

logger = logging.getLogger(__name__)

REFINE_STEP = 0.01
REFINE_HALF_WIDTH = 0.05
DEFAULT_SHAPING_SNR_DB = tuple(np.arange(-20.0, 20.0 + 1e-9, 2.5).tolist())


def probability_grid(step: float) -> npt.NDArray[np.float64]:
    if not 0.0 < step <= 0.5:
        raise DomainError(f"grid step must lie in (0, 0.5], got {step}")
    count = 1.0 / step
    if math.isclose(count, round(count), abs_tol=1e-9):
        return np.round(np.linspace(0.0, 1.0, int(round(count)) + 1), 12)
    grid = np.round(np.arange(0.0, 1.0 + 1e-12, step), 12)
    return grid if grid[-1] == 1.0 else np.append(grid, 1.0)


def _local_grid(center: float, half_width: float, step: float) -> list[float]:
    lo = max(0.0, center - half_width)
    hi = min(1.0, center + half_width)
    n = int(round((hi - lo) / step))
    return sorted({round(lo + j * step, 12) for j in range(n + 1)} | {round(center, 12)})


def _rate_or_zero(
    alphabet: InputAlphabet, labeling: Labeling, p0: tuple[float, ...], snr: float, quad: QuadratureSpec | None
) -> float:
    try:
        constellation = Constellation(alphabet, labeling, bits=BitDistribution(p0=p0))
    except DomainError:
        # Every surviving symbol sits at the origin: no energy, no rate
        return 0.0
    return bicm_capacity(constellation, snr, quad)


def _argmax(candidates: list[tuple[float, ...]], values: list[float]) -> tuple[tuple[float, ...], float]:
    best_idx = 0
    for j in range(1, len(values)):
        if values[j] > values[best_idx] or (values[j] == values[best_idx] and candidates[j] < candidates[best_idx]):
            best_idx = j
    return candidates[best_idx], values[best_idx]


def optimize_distribution(
    alphabet: InputAlphabet,
    labeling: Labeling,
    snr: float,
    step: float = 0.05,
    *,
    refine: bool = True,
    quad: QuadratureSpec | None = None,
    workers: int = 1,
) -> ShapingResult:
    """Maximize the BICM capacity at fixed SNR over P_{C_k}(0) on a grid; SNR fixes Es/N0 per candidate."""
    if snr < 0.0:
        raise DomainError(f"SNR must be >= 0, got {snr}")
    grid = probability_grid(step).tolist()
    uniform_constellation = Constellation(alphabet, labeling)
    # one quadrature order per SNR so every candidate is integrated on the same nodes
    quad = resolve_quadrature(uniform_constellation, snr, quad)
    m = labeling.order
    candidates = list(itertools.product(grid, repeat=m))
    values = _map_ordered(lambda p0: _rate_or_zero(alphabet, labeling, p0, snr, quad), candidates, workers)
    best, best_value = _argmax(candidates, values)
    used_step = step

    if refine and step > REFINE_STEP:
        axes = [_local_grid(p, min(step, REFINE_HALF_WIDTH), REFINE_STEP) for p in best]
        local = list(itertools.product(*axes))
        local_values = _map_ordered(lambda p0: _rate_or_zero(alphabet, labeling, p0, snr, quad), local, workers)
        fine, fine_value = _argmax(local + [best], local_values + [best_value])
        if fine_value >= best_value:
            best, best_value = fine, fine_value
        used_step = REFINE_STEP

    uniform = bicm_capacity(uniform_constellation, snr, quad)
    logger.debug("Shaping at SNR=%.4g: best P=%s rate=%.6f (uniform %.6f)", snr, best, best_value, uniform)
    return ShapingResult(
        snr=snr,
        bits=BitDistribution(p0=tuple(best)),
        shaped_rate=best_value,
        uniform_rate=uniform,
        step=used_step,
    )


def shaped_f_curve(
    alphabet: InputAlphabet,
    labeling: Labeling,
    rates: Sequence[float] | npt.NDArray[np.float64],
    step: float = 0.05,
    *,
    snr_db_grid: Sequence[float] = DEFAULT_SHAPING_SNR_DB,
    refine: bool = True,
    quad: QuadratureSpec | None = None,
    channel: ChannelSpec | None = None,
    workers: int = 1,
) -> CapacityCurve:
    """Envelope of Eb/N0 over the distributions that are optimal somewhere on ``snr_db_grid``.

    The uniform distribution is always a candidate, so the result never lies right of the uniform curve.
    """
    grid = increasing_rates(rates)
    channel = channel or ChannelSpec()
    candidates: dict[tuple[float, ...], None] = {BitDistribution.uniform(labeling.order).p0: None}
    for db in snr_db_grid:
        result = optimize_distribution(
            alphabet, labeling, from_db(db), step, refine=refine, quad=quad, workers=workers
        )
        candidates.setdefault(result.bits.p0, None)
    logger.info(
        "Shaping envelope over %d candidate distributions for %s", len(candidates), labeling.name or "labeling"
    )

    inverters = []
    for p0 in candidates:
        try:
            constellation = Constellation(alphabet, labeling, bits=BitDistribution(p0=p0))
        except DomainError:
            continue
        inverters.append(
            CapacityInverter(lambda snr, c=constellation: bicm_capacity(c, snr, quad), workers=workers)
        )

    points = []
    for rate in grid:
        best = math.inf
        for inverter in inverters:
            try:
                best = min(best, inverter.invert(float(rate)))
            except RangeError:
                continue
        if math.isinf(best):
            raise RangeError(f"rate {rate:g} is unreachable for every shaped distribution")
        points.append(_point(best, float(rate), channel))

    zero_rate = optimize_alpha_distribution(alphabet, labeling, step)[1].alpha
    return CapacityCurve(
        kind="bicm",
        constellation=f"{alphabet.name or 'alphabet'} / {labeling.name or 'labeling'} / shaped",
        points=points,
        zero_rate_ebn0=math.inf if zero_rate <= 0.0 else 1.0 / (channel.fading_second_moment * zero_rate),
    )


def optimize_alpha_distribution(
    alphabet: InputAlphabet, labeling: Labeling, step: float = 0.05
) -> tuple[BitDistribution, AlphaResult]:
    """Bit distribution on the grid maximizing the first-order coefficient (low-SNR shaping)."""
    grid = probability_grid(step).tolist()
    best_p0: tuple[float, ...] | None = None
    best: AlphaResult | None = None
    for p0 in itertools.product(grid, repeat=labeling.order):
        try:
            result = alpha_bicm(Constellation(alphabet, labeling, bits=BitDistribution(p0=p0)))
        except DomainError:
            continue
        if best is None or result.alpha > best.alpha:
            best_p0, best = p0, result
    if best is None or best_p0 is None:
        raise DomainError("no grid distribution yields positive symbol energy")
    return BitDistribution(p0=best_p0), best
