"""Capacity engine: CM/BICM/AWGN rates, capacity inversion and the Eb/N0 curves built on it.

Noise is scaled from the constellation: N0 = Es / SNR for the AWGN channel, so unnormalized integer
alphabets are used as-is. All mixture likelihoods are evaluated in the log domain.
"""

from __future__ import annotations

import logging
import math
from collections.abc import Callable, Iterable, Sequence
from concurrent.futures import ThreadPoolExecutor
from typing import TypeVar

import numpy as np
import numpy.typing as npt
from scipy.optimize import brentq, minimize_scalar
from scipy.special import logsumexp

from bicm.core.asymptotics import alpha_bicm, alpha_cm
from bicm.core.constants import LN2, LOG2E
from bicm.core.constellations import Constellation, conditional_symbol_distribution, from_db, to_db
from bicm.core.labelings import Labeling
from bicm.core.quadrature import Estimate, expectation, gauss_hermite_rule, node_cap
from bicm.errors import DomainError, RangeError
from bicm.models import (
    BitDistribution,
    CapacityCurve,
    CapacityKind,
    CapacityPoint,
    ChannelSpec,
    GapResult,
    LabelingCrossover,
    MinimumEbN0,
    QuadratureSpec,
)

logger = logging.getLogger(__name__)

FloatArray = npt.NDArray[np.float64]
CapacityFunction = Callable[[float], float]
T = TypeVar("T")
R = TypeVar("R")

DEFAULT_SNR_DB_GRID = np.arange(-60.0, 60.0 + 1e-9, 0.5)
INVERSION_XTOL = 1e-12


def _map_ordered(func: Callable[[T], R], items: Iterable[T], workers: int = 1) -> list[R]:
    values = list(items)
    if workers <= 1 or len(values) < 2:
        return [func(v) for v in values]
    with ThreadPoolExecutor(max_workers=workers) as pool:
        return list(pool.map(func, values))


# -- AWGN closed forms --------------------------------------------------------------------------


def awgn_capacity(snr: float, dimension: int = 1) -> float:
    if snr < 0.0:
        raise DomainError(f"SNR must be >= 0, got {snr}")
    if dimension < 1:
        raise DomainError(f"dimension N must be >= 1, got {dimension}")
    return 0.5 * dimension * math.log2(1.0 + 2.0 * snr / dimension)


def awgn_snr(rate: float, dimension: int = 1) -> float:
    if rate < 0.0:
        raise DomainError(f"rate must be >= 0, got {rate}")
    return 0.5 * dimension * (2.0 ** (2.0 * rate / dimension) - 1.0)


def f_awgn(rate: float, dimension: int = 1) -> float:
    if rate <= 0.0:
        raise DomainError(f"f_AW needs Rc > 0, got Rc={rate}")
    return dimension / (2.0 * rate) * math.expm1(2.0 * rate * LN2 / dimension)


def g_awgn(rate: float, dimension: int = 1) -> float:
    if rate <= 0.0:
        raise DomainError(f"g_AW needs Rc > 0, got Rc={rate}")
    growth = 2.0 ** (2.0 * rate / dimension)
    return (dimension + (2.0 * rate * LN2 - dimension) * growth) / (2.0 * rate * rate)


# -- Discrete-input integrands ------------------------------------------------------------------


def _scale(constellation: Constellation, snr: float) -> float:
    if snr < 0.0:
        raise DomainError(f"SNR must be >= 0, got {snr}")
    return math.sqrt(snr / constellation.energy)


def _log_ratios(points: FloatArray, i: int, scale: float, nodes: FloatArray) -> FloatArray:
    """log p(y|x_j) - log p(y|x_i) at y = x_i + sqrt(N0) t, shape (M, K)."""
    diff = (points[i] - points) * scale
    return -(np.sum(diff * diff, axis=1)[:, None] + 2.0 * diff @ nodes.T)


def _ami_values(points: FloatArray, probs: FloatArray, scale: float, nodes: FloatArray) -> FloatArray:
    """Per-node integrand of I(X;Y) in nats for the input pmf ``probs``."""
    live = np.flatnonzero(probs > 0.0)
    values = np.zeros(nodes.shape[0])
    if live.size < 2 or scale == 0.0:
        return values
    xs = points[live]
    ps = probs[live]
    for local, p_i in enumerate(ps):
        ratios = _log_ratios(xs, local, scale, nodes)
        values -= p_i * logsumexp(ratios, b=ps[:, None], axis=0)
    return values


def _bicm_values(constellation: Constellation, scale: float, nodes: FloatArray) -> FloatArray:
    """Per-node integrand of sum_k I(C_k;Y) in nats, bit-conditioned form."""
    values = np.zeros(nodes.shape[0])
    if scale == 0.0:
        return values
    probs = constellation.probabilities
    live = np.flatnonzero(probs > 0.0)
    xs = constellation.alphabet.points[live]
    ps = probs[live]
    codes = constellation.labeling.bits[live]
    log_p_bit = {
        (k, u): math.log(p) if (p := constellation.bit_probability(k, u)) > 0.0 else -math.inf
        for k in range(constellation.order)
        for u in (0, 1)
    }
    for local, p_i in enumerate(ps):
        ratios = _log_ratios(xs, local, scale, nodes)
        total = logsumexp(ratios, b=ps[:, None], axis=0)
        for k in range(constellation.order):
            u = int(codes[local, k])
            same = codes[:, k] == u
            partial = logsumexp(ratios[same], b=ps[same][:, None], axis=0)
            values += p_i * (partial - log_p_bit[(k, u)] - total)
    return values


def _reference_values(constellation: Constellation, scale: float, nodes: FloatArray) -> FloatArray:
    """CM and, for bitwise distributions, BICM integrands side by side."""
    columns = [_ami_values(constellation.alphabet.points, constellation.probabilities, scale, nodes)]
    if constellation.bits is not None:
        columns.append(_bicm_values(constellation, scale, nodes))
    return np.stack(columns, axis=1)


def resolve_quadrature(constellation: Constellation, snr: float, quad: QuadratureSpec | None = None) -> QuadratureSpec:
    """Fix the Gauss-Hermite order for one constellation and SNR.

    Starting from ``quad.nodes``, the order doubles until the CM and BICM rates of two successive
    orders agree within ``quad.tolerance`` bits or the node cap is reached. Every quantity computed
    for the same inputs then shares the returned order.
    """
    quad = quad or QuadratureSpec()
    scale = _scale(constellation, snr)
    if quad.method == "monte-carlo" or not quad.adaptive or scale == 0.0:
        return quad
    cap = node_cap(quad, constellation.dimension)
    nodes = quad.nodes

    def rates(order: int) -> FloatArray:
        rule = gauss_hermite_rule(order, constellation.dimension)
        return np.asarray(rule.weights @ _reference_values(constellation, scale, rule.nodes)) / LN2

    previous = rates(nodes)
    while 2 * nodes <= cap:
        nodes *= 2
        current = rates(nodes)
        if float(np.max(np.abs(current - previous))) <= quad.tolerance:
            return quad.model_copy(update={"nodes": nodes, "adaptive": False})
        previous = current
    logger.debug("Quadrature stopped at the %d-node cap at SNR=%.6g for %s", nodes, snr, constellation.describe())
    return quad.model_copy(update={"nodes": nodes, "adaptive": False})


def _expect(
    constellation: Constellation,
    snr: float,
    quad: QuadratureSpec | None,
    integrand: Callable[[FloatArray], list[FloatArray]],
) -> list[Estimate]:
    """Expectations in bits of each integrand column over the noise, in one pass over the nodes."""
    spec = resolve_quadrature(constellation, snr, quad)
    estimates = expectation(spec, constellation.dimension, lambda nodes: np.stack(integrand(nodes), axis=1))
    return [Estimate(e.value / LN2, e.stderr / LN2) for e in estimates]


def cm_capacity_estimate(constellation: Constellation, snr: float, quad: QuadratureSpec | None = None) -> Estimate:
    scale = _scale(constellation, snr)
    points, probs = constellation.alphabet.points, constellation.probabilities
    return _expect(constellation, snr, quad, lambda nodes: [_ami_values(points, probs, scale, nodes)])[0]


def cm_capacity(constellation: Constellation, snr: float, quad: QuadratureSpec | None = None) -> float:
    return cm_capacity_estimate(constellation, snr, quad).value


def bicm_capacity_estimate(
    constellation: Constellation, snr: float, quad: QuadratureSpec | None = None
) -> Estimate:
    constellation.require_bitwise()
    scale = _scale(constellation, snr)
    return _expect(constellation, snr, quad, lambda nodes: [_bicm_values(constellation, scale, nodes)])[0]


def bicm_capacity(constellation: Constellation, snr: float, quad: QuadratureSpec | None = None) -> float:
    return bicm_capacity_estimate(constellation, snr, quad).value


def _monte_carlo_spec(samples: int, seed: int) -> QuadratureSpec:
    return QuadratureSpec(method="monte-carlo", samples=samples, seed=seed)


def cm_capacity_mc(constellation: Constellation, snr: float, samples: int = 200_000, seed: int = 0) -> Estimate:
    """Monte-Carlo CM rate with its standard error; the seed fixes the noise draw (common random numbers)."""
    return cm_capacity_estimate(constellation, snr, _monte_carlo_spec(samples, seed))


def bicm_capacity_mc(constellation: Constellation, snr: float, samples: int = 200_000, seed: int = 0) -> Estimate:
    return bicm_capacity_estimate(constellation, snr, _monte_carlo_spec(samples, seed))


def degenerate_bit_levels(constellation: Constellation) -> list[tuple[int, int]]:
    """(k, u) pairs with P_{C_k}(u) = 0; their terms contribute nothing to the BICM rate."""
    return [
        (k, u)
        for k in range(constellation.order)
        for u in (0, 1)
        if constellation.bit_probability(k, u) <= 0.0
    ]


def _bit_terms(constellation: Constellation, scale: float, nodes: FloatArray) -> list[FloatArray]:
    """Per-node I(C_k;Y) = sum_u P_{C_k}(u) [I(X;Y) - I_{X|C_k=u}(X;Y)] for every k."""
    points = constellation.alphabet.points
    full = _ami_values(points, constellation.probabilities, scale, nodes)
    terms: list[FloatArray] = []
    for k in range(constellation.order):
        term = np.zeros(nodes.shape[0])
        for u in (0, 1):
            p_bit = constellation.bit_probability(k, u)
            if p_bit <= 0.0:
                continue
            conditional = conditional_symbol_distribution(constellation, k, u)
            term += p_bit * (full - _ami_values(points, conditional, scale, nodes))
        terms.append(term)
    return terms


def bicm_capacity_via_difference(
    constellation: Constellation, snr: float, quad: QuadratureSpec | None = None
) -> float:
    constellation.require_bitwise()
    scale = _scale(constellation, snr)
    return _expect(
        constellation, snr, quad, lambda nodes: [np.sum(_bit_terms(constellation, scale, nodes), axis=0)]
    )[0].value


def _prefix_average(constellation: Constellation, depth: int, scale: float, nodes: FloatArray) -> FloatArray:
    """sum_b P(b) I_{X|C_0..C_{depth-1}=b}(X;Y) per node."""
    probs = constellation.probabilities
    points = constellation.alphabet.points
    prefixes = constellation.labeling.row_values() >> (constellation.order - depth)
    values = np.zeros(nodes.shape[0])
    for prefix in np.unique(prefixes):
        mask = prefixes == prefix
        weight = float(probs[mask].sum())
        if weight <= 0.0:
            continue
        restricted = np.where(mask, probs, 0.0) / weight
        values += weight * _ami_values(points, restricted, scale, nodes)
    return values


def bit_level_conditional_ami(
    constellation: Constellation, snr: float, k: int, quad: QuadratureSpec | None = None
) -> float:
    """I(C_k; Y | C_0, ..., C_{k-1}); summing over k recovers the CM capacity."""
    if not 0 <= k < constellation.order:
        raise DomainError(f"bit position must lie in [0, {constellation.order - 1}], got {k}")
    scale = _scale(constellation, snr)

    def integrand(nodes: FloatArray) -> list[FloatArray]:
        return [_prefix_average(constellation, k, scale, nodes) - _prefix_average(constellation, k + 1, scale, nodes)]

    return _expect(constellation, snr, quad, integrand)[0].value


def bit_level_rates(
    constellation: Constellation, snr: float, quad: QuadratureSpec | None = None
) -> dict[str, list[float]]:
    """Per-bit BICM terms I(C_k;Y) and chain-rule terms I(C_k;Y|C_0..C_{k-1})."""
    scale = _scale(constellation, snr)
    order = constellation.order

    def integrand(nodes: FloatArray) -> list[FloatArray]:
        levels = [_prefix_average(constellation, depth, scale, nodes) for depth in range(order + 1)]
        chain = [levels[k] - levels[k + 1] for k in range(order)]
        return _bit_terms(constellation, scale, nodes) + chain

    estimates = _expect(constellation, snr, quad, integrand)
    return {"bicm": [e.value for e in estimates[:order]], "chain": [e.value for e in estimates[order:]]}


def capacity_function(
    constellation: Constellation | None,
    kind: CapacityKind,
    quad: QuadratureSpec | None = None,
    *,
    dimension: int | None = None,
) -> CapacityFunction:
    if kind == "awgn":
        dim = dimension or (constellation.dimension if constellation is not None else 1)
        return lambda snr: awgn_capacity(snr, dim)
    if constellation is None:
        raise DomainError(f"{kind} capacity needs a constellation")
    if kind == "cm":
        return lambda snr: cm_capacity(constellation, snr, quad)
    if kind == "bicm":
        constellation.require_bitwise()
        return lambda snr: bicm_capacity(constellation, snr, quad)
    raise DomainError(f"unknown capacity kind {kind!r}")


# -- Inversion ----------------------------------------------------------------------------------


class CapacityInverter:
    """Smallest SNR reaching a rate: first crossing on a tabulated dB grid, then Brent on log SNR.

    The first-crossing rule makes the result well defined for BICM functionals that are not concave.
    """

    def __init__(
        self,
        func: CapacityFunction,
        *,
        snr_db_grid: Sequence[float] | FloatArray | None = None,
        workers: int = 1,
    ) -> None:
        self._func = func
        grid = np.asarray(DEFAULT_SNR_DB_GRID if snr_db_grid is None else snr_db_grid, dtype=np.float64)
        if grid.ndim != 1 or grid.size < 2 or np.any(np.diff(grid) <= 0):
            raise DomainError("SNR grid must be a strictly increasing sequence of at least two dB values")
        self._grid_db = grid
        self._workers = workers
        self._table: FloatArray | None = None

    @property
    def table(self) -> FloatArray:
        if self._table is None:
            self._table = np.asarray(
                _map_ordered(lambda db: self._func(from_db(db)), self._grid_db, self._workers), dtype=np.float64
            )
        return self._table

    @property
    def max_rate(self) -> float:
        return float(np.max(self.table))

    def invert(self, rate: float) -> float:
        if rate <= 0.0:
            raise DomainError(f"inversion needs Rc > 0, got Rc={rate}")
        table = self.table
        reached = np.flatnonzero(table >= rate)
        if reached.size == 0:
            raise RangeError(
                f"rate {rate:g} is unreachable: the largest rate up to {self._grid_db[-1]:g} dB is {table.max():.12g}"
            )
        idx = int(reached[0])
        hi = math.log(from_db(self._grid_db[idx]))
        if idx > 0:
            lo = math.log(from_db(self._grid_db[idx - 1]))
        else:
            lo = hi
            while self._func(math.exp(lo)) >= rate:
                lo -= math.log(10.0) * 2.0
                if lo < math.log(1e-30):
                    raise RangeError(f"rate {rate:g} is reached below SNR 1e-30; the functional is not a capacity")
        if table[idx] == rate:
            return math.exp(hi)
        root = brentq(lambda t: self._func(math.exp(t)) - rate, lo, hi, xtol=INVERSION_XTOL, maxiter=200)
        return math.exp(float(root))


def invert_capacity(
    func: CapacityFunction,
    rate: float,
    bracket: tuple[float, float] = (-60.0, 60.0),
    *,
    step_db: float = 0.5,
) -> float:
    """Smallest SNR with func(SNR) >= rate inside the dB bracket."""
    lo_db, hi_db = bracket
    if hi_db <= lo_db:
        raise DomainError(f"bracket must satisfy lo < hi, got {bracket}")
    grid = np.arange(lo_db, hi_db + 1e-9, step_db)
    return CapacityInverter(func, snr_db_grid=grid).invert(rate)


# -- Curves -------------------------------------------------------------------------------------


def _zero_rate_alpha(constellation: Constellation | None, kind: CapacityKind) -> float:
    if kind == "awgn" or constellation is None:
        return LOG2E
    return (alpha_cm(constellation) if kind == "cm" else alpha_bicm(constellation)).alpha


def _point(snr: float, rate: float, channel: ChannelSpec) -> CapacityPoint:
    rate = max(rate, 0.0)
    ebn0 = snr / (channel.fading_second_moment * rate) if rate > 0.0 else math.inf
    return CapacityPoint(snr=snr, snr_db=to_db(snr), rate=rate, ebn0=ebn0, ebn0_db=to_db(ebn0))


def _label(constellation: Constellation | None, kind: CapacityKind) -> str:
    return "AWGN" if constellation is None else constellation.describe()


def capacity_curve(
    constellation: Constellation | None,
    kind: CapacityKind,
    snr_db_grid: Sequence[float] | FloatArray,
    *,
    quad: QuadratureSpec | None = None,
    channel: ChannelSpec | None = None,
    workers: int = 1,
) -> CapacityCurve:
    """Rate versus SNR on a dB grid, each point carrying its Eb/N0."""
    channel = channel or ChannelSpec()
    func = capacity_function(constellation, kind, quad, dimension=channel.dimension)
    snrs = [from_db(db) for db in snr_db_grid]
    rates = _map_ordered(func, snrs, workers)
    points = [_point(snr, rate, channel) for snr, rate in zip(snrs, rates, strict=True)]
    return CapacityCurve(kind=kind, constellation=_label(constellation, kind), points=points)


def increasing_rates(rates: Sequence[float] | FloatArray) -> FloatArray:
    grid = np.asarray(rates, dtype=np.float64)
    if grid.ndim != 1 or grid.size == 0 or np.any(np.diff(grid) <= 0.0):
        raise DomainError(f"curve rates must be a non-empty, strictly increasing sequence, got {grid.tolist()}")
    return grid


def default_rate_grid(max_rate: float, count: int = 200, low: float = 1e-3, headroom: float = 0.98) -> FloatArray:
    if max_rate <= low:
        raise DomainError(f"maximum rate {max_rate:g} must exceed the lowest grid rate {low:g}")
    return np.geomspace(low, headroom * max_rate, max(count, 2))


def f_curve(
    constellation: Constellation | None,
    kind: CapacityKind,
    rates: Sequence[float] | FloatArray,
    *,
    quad: QuadratureSpec | None = None,
    channel: ChannelSpec | None = None,
    inverter: CapacityInverter | None = None,
    workers: int = 1,
) -> CapacityCurve:
    """f(Rc) = C^-1(Rc) / (E[H^2] Rc) with the zero-rate endpoint 1 / (E[H^2] alpha)."""
    grid = increasing_rates(rates)
    channel = channel or ChannelSpec()
    if inverter is None:
        inverter = CapacityInverter(
            capacity_function(constellation, kind, quad, dimension=channel.dimension), workers=workers
        )
    points = []
    for rate in grid:
        snr = inverter.invert(float(rate))
        points.append(_point(snr, float(rate), channel))
    alpha = _zero_rate_alpha(constellation, kind)
    zero_rate = math.inf if alpha <= 0.0 else 1.0 / (channel.fading_second_moment * alpha)
    logger.info("Built %s f-curve with %d rates for %s", kind, len(points), _label(constellation, kind))
    return CapacityCurve(kind=kind, constellation=_label(constellation, kind), points=points, zero_rate_ebn0=zero_rate)


def _f_at(inverter: CapacityInverter, rate: float, channel: ChannelSpec) -> float:
    return inverter.invert(rate) / (channel.fading_second_moment * rate)


def g_curve(
    constellation: Constellation | None,
    kind: CapacityKind,
    rates: Sequence[float] | FloatArray,
    *,
    quad: QuadratureSpec | None = None,
    channel: ChannelSpec | None = None,
    inverter: CapacityInverter | None = None,
    step: float = 1e-4,
    workers: int = 1,
) -> tuple[FloatArray, FloatArray]:
    """g(Rc) = df/dRc by central differences with relative step ``step``."""
    channel = channel or ChannelSpec()
    if inverter is None:
        inverter = CapacityInverter(
            capacity_function(constellation, kind, quad, dimension=channel.dimension), workers=workers
        )
    grid = np.asarray(rates, dtype=np.float64)
    slopes = np.empty_like(grid)
    for j, rate in enumerate(grid):
        h = step * rate
        slopes[j] = (_f_at(inverter, rate + h, channel) - _f_at(inverter, rate - h, channel)) / (2.0 * h)
    return grid, slopes


def min_ebn0(
    constellation: Constellation | None,
    kind: CapacityKind,
    rates: Sequence[float] | FloatArray | None = None,
    *,
    quad: QuadratureSpec | None = None,
    channel: ChannelSpec | None = None,
    workers: int = 1,
) -> MinimumEbN0:
    """Minimum of f over the zero-rate limit and every interior root of g (sign change - to +)."""
    channel = channel or ChannelSpec()
    inverter = CapacityInverter(
        capacity_function(constellation, kind, quad, dimension=channel.dimension), workers=workers
    )
    grid = np.asarray(default_rate_grid(inverter.max_rate) if rates is None else rates, dtype=np.float64)
    _, slopes = g_curve(constellation, kind, grid, channel=channel, inverter=inverter)

    alpha = _zero_rate_alpha(constellation, kind)
    best_rate = 0.0
    best = math.inf if alpha <= 0.0 else 1.0 / (channel.fading_second_moment * alpha)
    at_zero = True
    roots: list[float] = []
    for j in np.flatnonzero((slopes[:-1] < 0.0) & (slopes[1:] >= 0.0)):
        lo = float(grid[max(j - 1, 0)])
        hi = float(grid[min(j + 2, grid.size - 1)])
        found = minimize_scalar(
            lambda r: _f_at(inverter, r, channel), bounds=(lo, hi), method="bounded", options={"xatol": 1e-7}
        )
        rate, value = float(found.x), float(found.fun)
        roots.append(rate)
        logger.debug("Interior stationary point of f at Rc=%.6g (%.4f dB)", rate, to_db(value))
        if value < best:
            best_rate, best, at_zero = rate, value, False
    return MinimumEbN0(rate=best_rate, ebn0=best, ebn0_db=to_db(best), at_zero_rate=at_zero, interior_roots=roots)


def snr_gap(
    constellation: Constellation,
    kind: CapacityKind,
    rate: float,
    *,
    quad: QuadratureSpec | None = None,
    inverter: CapacityInverter | None = None,
) -> GapResult:
    """f_Omega(Rc) / f_AW(Rc); at Rc = 0 the analytic limit log2(e) / alpha."""
    if rate < 0.0:
        raise DomainError(f"rate must be >= 0, got {rate}")
    if rate == 0.0:
        alpha = _zero_rate_alpha(constellation, kind)
        gap = math.inf if alpha <= 0.0 else LOG2E / alpha
    else:
        if inverter is None:
            inverter = CapacityInverter(capacity_function(constellation, kind, quad))
        gap = inverter.invert(rate) / awgn_snr(rate, constellation.dimension)
    return GapResult(rate=rate, gap=gap, gap_db=to_db(gap))


def labeling_crossover(
    constellation: Constellation,
    first: Labeling,
    second: Labeling,
    *,
    quad: QuadratureSpec | None = None,
    snr_db_grid: Sequence[float] | FloatArray | None = None,
    bits: BitDistribution | None = None,
) -> list[LabelingCrossover]:
    """SNRs (and rates) where the BICM capacities of two labelings of one alphabet cross."""
    grid = np.asarray(np.arange(-20.0, 20.0 + 1e-9, 0.25) if snr_db_grid is None else snr_db_grid, dtype=np.float64)
    bits = bits or constellation.bits
    ca = Constellation(constellation.alphabet, first, bits=bits)
    cb = Constellation(constellation.alphabet, second, bits=bits)

    def difference(db: float) -> float:
        snr = from_db(db)
        return bicm_capacity(ca, snr, quad) - bicm_capacity(cb, snr, quad)

    diffs = np.array([difference(db) for db in grid])
    crossings: list[LabelingCrossover] = []
    for j in np.flatnonzero(np.sign(diffs[:-1]) * np.sign(diffs[1:]) < 0):
        db = float(brentq(difference, grid[j], grid[j + 1], xtol=1e-10))
        snr = from_db(db)
        rate = bicm_capacity(ca, snr, quad)
        crossings.append(
            LabelingCrossover(
                labelings=(first.name or "first", second.name or "second"),
                snr=snr,
                rate=rate,
                ebn0_db=to_db(snr / rate),
            )
        )
    return crossings
