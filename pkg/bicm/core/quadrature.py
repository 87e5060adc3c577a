"""Integration rules over standardized Gaussian noise.

The noise on each real dimension has variance N0/2, so the received point is ``x + sqrt(N0) * t``
with ``t`` distributed with density ``exp(-|t|^2) / pi^(N/2)``. Both rules below integrate against
that density. Integrands map a ``(K, N)`` block of noise nodes to a ``(K, J)`` block of values, one
column per quantity, so several expectations share one set of nodes.
"""

from __future__ import annotations

import math
from collections.abc import Callable
from dataclasses import dataclass
from functools import lru_cache

import numpy as np
import numpy.typing as npt
from scipy.special import roots_hermite

from bicm.models import QuadratureSpec

FloatArray = npt.NDArray[np.float64]
Integrand = Callable[[FloatArray], FloatArray]

# Monte-Carlo draws are generated and reduced in blocks of this many samples.
MC_BLOCK = 1 << 16
# Largest tensor rule the adaptive node search builds (nodes ** dimension).
MAX_RULE_POINTS = 1 << 16


@dataclass(frozen=True)
class IntegrationRule:
    nodes: FloatArray  # (K, N)
    weights: FloatArray  # (K,), sums to one

    @property
    def count(self) -> int:
        return int(self.weights.size)


@dataclass(frozen=True)
class Estimate:
    value: float
    stderr: float


@lru_cache(maxsize=16)
def gauss_hermite_rule(nodes: int, dimension: int) -> IntegrationRule:
    """Tensor Gauss-Hermite rule with weights normalized to one."""
    t, w = roots_hermite(nodes)
    w = w / math.sqrt(math.pi)
    grids = np.meshgrid(*([t] * dimension), indexing="ij")
    points = np.stack([g.ravel() for g in grids], axis=1)
    wgrids = np.meshgrid(*([w] * dimension), indexing="ij")
    weights = np.prod(np.stack([g.ravel() for g in wgrids], axis=1), axis=1)
    points.setflags(write=False)
    weights.setflags(write=False)
    return IntegrationRule(points, weights)


def node_cap(spec: QuadratureSpec, dimension: int) -> int:
    """Largest per-dimension node count the adaptive search may reach."""
    return max(spec.nodes, min(spec.max_nodes, int(round(MAX_RULE_POINTS ** (1.0 / dimension)))))


def _as_columns(values: FloatArray, count: int) -> FloatArray:
    block = np.asarray(values, dtype=np.float64)
    if block.ndim == 1:
        block = block[:, None]
    if block.ndim != 2 or block.shape[0] != count:
        raise ValueError(f"integrand returned shape {block.shape} for {count} nodes")
    return block


def _monte_carlo(spec: QuadratureSpec, dimension: int, integrand: Integrand) -> list[Estimate]:
    rng = np.random.default_rng(spec.seed)
    total: FloatArray | None = None
    squares: FloatArray | None = None
    drawn = 0
    while drawn < spec.samples:
        size = min(MC_BLOCK, spec.samples - drawn)
        block = _as_columns(integrand(rng.normal(0.0, math.sqrt(0.5), size=(size, dimension))), size)
        if total is None or squares is None:
            total, squares = np.zeros(block.shape[1]), np.zeros(block.shape[1])
        total += block.sum(axis=0)
        squares += np.sum(block * block, axis=0)
        drawn += size
    assert total is not None and squares is not None
    mean = total / drawn
    if drawn < 2:
        return [Estimate(float(v), 0.0) for v in mean]
    variance = np.maximum(squares - drawn * mean * mean, 0.0) / (drawn - 1)
    stderr = np.sqrt(variance / drawn)
    return [Estimate(float(v), float(e)) for v, e in zip(mean, stderr, strict=True)]


def expectation(spec: QuadratureSpec, dimension: int, integrand: Integrand) -> list[Estimate]:
    """E[integrand(t)] per column; Monte-Carlo estimates carry their standard error."""
    if spec.method == "monte-carlo":
        return _monte_carlo(spec, dimension, integrand)
    rule = gauss_hermite_rule(spec.nodes, dimension)
    means = rule.weights @ _as_columns(integrand(rule.nodes), rule.count)
    return [Estimate(float(v), 0.0) for v in means]
