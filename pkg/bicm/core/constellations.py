"""Input alphabets, bitwise input distributions and the constellation triple [X, L, P]."""

from __future__ import annotations

import logging
import math
import os
from collections.abc import Sequence
from dataclasses import dataclass, field
from functools import cached_property
from pathlib import Path

import numpy as np
import numpy.typing as npt

from bicm.core.labelings import Labeling, modified_matrix
from bicm.errors import DomainError
from bicm.models import BitDistribution, ChannelSpec

logger = logging.getLogger(__name__)

FloatArray = npt.NDArray[np.float64]


@dataclass(frozen=True, eq=False)
class InputAlphabet:
    """M symbols in N real dimensions, one per row; coordinates are kept unnormalized."""

    points: FloatArray
    name: str = ""

    def __post_init__(self) -> None:
        arr = np.array(self.points, dtype=np.float64, copy=True)
        if arr.ndim == 1:
            arr = arr[:, None]
        if arr.ndim != 2 or arr.shape[0] < 2:
            raise DomainError(f"alphabet must be an M x N matrix with M >= 2, got shape {arr.shape}")
        size = arr.shape[0]
        if size & (size - 1):
            raise DomainError(f"alphabet size M must be a power of two, got {size}")
        if not np.all(np.isfinite(arr)):
            raise DomainError("alphabet coordinates must be finite")
        arr.setflags(write=False)
        object.__setattr__(self, "points", arr)

    @property
    def size(self) -> int:
        return int(self.points.shape[0])

    @property
    def dimension(self) -> int:
        return int(self.points.shape[1])

    @property
    def order(self) -> int:
        return self.size.bit_length() - 1

    @property
    def is_integer(self) -> bool:
        return bool(np.all(self.points == np.round(self.points)))

    def norms_squared(self) -> FloatArray:
        return np.sum(self.points**2, axis=1)


def _check_size(size: int, what: str) -> None:
    if size < 2 or size & (size - 1):
        raise DomainError(f"{what} must be a power of two >= 2, got {size}")


def pam(size: int) -> InputAlphabet:
    _check_size(size, "PAM size M")
    i = np.arange(size)
    return InputAlphabet(-(size - 2 * i - 1).astype(np.float64), name=f"{size}-PAM")


def psk(size: int) -> InputAlphabet:
    _check_size(size, "PSK size M")
    angles = (2 * np.arange(size) + 1) * np.pi / size
    return InputAlphabet(np.column_stack([np.cos(angles), np.sin(angles)]), name=f"{size}-PSK")


def ordered_direct_product(outer: npt.ArrayLike, inner: npt.ArrayLike) -> FloatArray:
    """Row q*i + j is [outer row i, inner row j] with q = number of inner rows."""
    a = np.asarray(outer, dtype=np.float64)
    b = np.asarray(inner, dtype=np.float64)
    a = a[:, None] if a.ndim == 1 else a
    b = b[:, None] if b.ndim == 1 else b
    return np.hstack([np.repeat(a, b.shape[0], axis=0), np.tile(b, (a.shape[0], 1))])


def qam(size_i: int, size_q: int) -> InputAlphabet:
    _check_size(size_i, "QAM in-phase size M'")
    _check_size(size_q, "QAM quadrature size M''")
    points = ordered_direct_product(pam(size_i).points, pam(size_q).points)
    return InputAlphabet(points, name=f"{size_i}x{size_q}-QAM")


def hierarchical_pam(distances: Sequence[float]) -> InputAlphabet:
    """x_i = sum_k (2 b_k(i) - 1) d_k with b_k(i) the k-th bit of i (k = 0 least significant)."""
    d = np.asarray(distances, dtype=np.float64)
    if d.ndim != 1 or d.size < 1:
        raise DomainError("hierarchical PAM needs at least one distance")
    if np.any(d <= 0):
        raise DomainError(f"hierarchical PAM distances must be positive, got {d.tolist()}")
    size = 1 << d.size
    i = np.arange(size)
    bits = (i[:, None] >> np.arange(d.size)) & 1
    points = (2 * bits - 1) @ d
    steps = np.diff(points)
    bad = np.flatnonzero(steps <= 0)
    if bad.size:
        idx = int(bad[0])
        raise DomainError(
            f"hierarchical PAM points must be strictly increasing; "
            f"x_{idx}={points[idx]:g} >= x_{idx + 1}={points[idx + 1]:g}"
        )
    label = ",".join(f"{v:g}" for v in d)
    return InputAlphabet(points, name=f"hierarchical-PAM[{label}]")


def from_projection(labeling: Labeling, v: npt.ArrayLike, *, name: str = "") -> InputAlphabet:
    """X = Q(L) V; duplicate points are allowed."""
    proj = np.asarray(v, dtype=np.float64)
    if proj.ndim == 1:
        proj = proj[:, None]
    if proj.shape[0] != labeling.order:
        raise DomainError(f"projection matrix needs m={labeling.order} rows, got {proj.shape[0]}")
    if not np.all(np.isfinite(proj)):
        raise DomainError("projection matrix must be finite")
    return InputAlphabet(modified_matrix(labeling).astype(np.float64) @ proj, name=name or "projection")


def rotated_psk4(theta: float) -> InputAlphabet:
    """Four unit-energy points at angles theta, pi - theta, pi + theta, 2 pi - theta."""
    if not 0.0 < theta < math.pi / 2:
        raise DomainError(f"theta must lie in (0, pi/2), got {theta}")
    c, s = math.cos(theta), math.sin(theta)
    return InputAlphabet(np.array([[c, s], [-c, s], [-c, -s], [c, -s]]), name=f"4-PSK[{theta:g}]")


def bitwise_symbol_distribution(labeling: Labeling, bits: BitDistribution) -> FloatArray:
    """P_X(x_i) = prod_k P_{C_k}(c_{i,k})."""
    if bits.order != labeling.order:
        raise DomainError(f"bit distribution has {bits.order} positions but labeling has order {labeling.order}")
    p0 = np.asarray(bits.p0, dtype=np.float64)
    per_bit = np.where(labeling.bits == 0, p0, 1.0 - p0)
    return np.prod(per_bit, axis=1)


@dataclass(frozen=True, eq=False)
class Constellation:
    """The triple [X, L, P] with cached energy, mean and bit index sets."""

    alphabet: InputAlphabet
    labeling: Labeling
    probabilities: FloatArray = field(default_factory=lambda: np.empty(0))
    bits: BitDistribution | None = None

    def __post_init__(self) -> None:
        if self.labeling.size != self.alphabet.size:
            raise DomainError(
                f"labeling has {self.labeling.size} codewords but alphabet has {self.alphabet.size} symbols"
            )
        if self.bits is not None:
            probs = bitwise_symbol_distribution(self.labeling, self.bits)
        elif np.size(self.probabilities) == 0:
            object.__setattr__(self, "bits", BitDistribution.uniform(self.labeling.order))
            probs = np.full(self.alphabet.size, 1.0 / self.alphabet.size)
        else:
            probs = np.array(self.probabilities, dtype=np.float64)
            if probs.shape != (self.alphabet.size,) or np.any(probs < 0) or abs(probs.sum() - 1.0) > 1e-12:
                raise DomainError("symbol distribution must be M non-negative probabilities summing to 1")
        probs.setflags(write=False)
        object.__setattr__(self, "probabilities", probs)
        if self.energy <= 0.0:
            raise DomainError("mean symbol energy Es must be positive")

    @cached_property
    def energy(self) -> float:
        return float(self.probabilities @ self.alphabet.norms_squared())

    @cached_property
    def mean(self) -> FloatArray:
        return np.asarray(self.probabilities @ self.alphabet.points, dtype=np.float64)

    @cached_property
    def index_sets(self) -> dict[tuple[int, int], npt.NDArray[np.intp]]:
        return {
            (k, u): np.flatnonzero(self.labeling.bits[:, k] == u) for k in range(self.order) for u in (0, 1)
        }

    @property
    def order(self) -> int:
        return self.labeling.order

    @property
    def size(self) -> int:
        return self.alphabet.size

    @property
    def dimension(self) -> int:
        return self.alphabet.dimension

    @property
    def is_uniform(self) -> bool:
        return bool(np.all(self.probabilities == self.probabilities[0]))

    def require_bitwise(self) -> BitDistribution:
        if self.bits is None:
            raise DomainError("operation requires a bitwise-product input distribution")
        return self.bits

    def bit_probability(self, k: int, u: int) -> float:
        return self.require_bitwise().probability(k, u)

    def with_bits(self, bits: BitDistribution) -> Constellation:
        return Constellation(self.alphabet, self.labeling, bits=bits)

    def describe(self) -> str:
        parts = [self.alphabet.name or f"{self.size}-point", self.labeling.name or "custom labeling"]
        if self.bits is not None and not self.bits.is_uniform:
            parts.append("P=(" + ",".join(f"{p:g}" for p in self.bits.p0) + ")")
        return " / ".join(parts)


def conditional_symbol_distribution(constellation: Constellation, k: int, u: int) -> FloatArray:
    """P_{X|C_k=u}: P_X / P_{C_k}(u) on I_{k,u}, zero elsewhere."""
    p_bit = constellation.bit_probability(k, u)
    if p_bit <= 0.0:
        raise DomainError(f"cannot condition on C_{k}={u}: P_C{k}({u}) = 0")
    out = np.zeros(constellation.size)
    idx = constellation.index_sets[(k, u)]
    out[idx] = constellation.probabilities[idx] / p_bit
    return out


def to_db(value: float) -> float:
    if value <= 0.0:
        return -math.inf
    if math.isinf(value):
        return math.inf
    return 10.0 * math.log10(value)


def from_db(value_db: float) -> float:
    return float(10.0 ** (value_db / 10.0))


def snr_to_ebn0(snr: float, rate: float, channel: ChannelSpec | None = None) -> float:
    """Eb/N0 = SNR / (E[H^2] Rc)."""
    channel = channel or ChannelSpec()
    if rate <= 0.0:
        raise DomainError(f"Eb/N0 conversion needs Rc > 0, got Rc={rate}")
    if snr <= 0.0:
        raise DomainError(f"Eb/N0 conversion needs SNR > 0, got SNR={snr}")
    return snr / (channel.fading_second_moment * rate)


def ebn0_to_snr(ebn0: float, rate: float, channel: ChannelSpec | None = None) -> float:
    channel = channel or ChannelSpec()
    if rate <= 0.0:
        raise DomainError(f"SNR conversion needs Rc > 0, got Rc={rate}")
    if ebn0 <= 0.0:
        raise DomainError(f"SNR conversion needs Eb/N0 > 0, got {ebn0}")
    return ebn0 * channel.fading_second_moment * rate


def read_alphabet(path: str | os.PathLike[str]) -> InputAlphabet:
    file_path = Path(path)
    if not file_path.exists():
        raise FileNotFoundError(f"Alphabet file not found: {file_path}")
    try:
        points = np.loadtxt(file_path, delimiter=",", ndmin=2)
    except ValueError as exc:
        raise ValueError(f"Alphabet file {file_path} is not numeric CSV: {exc}") from exc
    alphabet = InputAlphabet(points, name=file_path.stem)
    logger.debug("Loaded %d-point alphabet in %d dimensions from %s", alphabet.size, alphabet.dimension, file_path)
    return alphabet


def write_alphabet(alphabet: InputAlphabet, path: str | os.PathLike[str]) -> Path:
    file_path = Path(path)
    file_path.parent.mkdir(parents=True, exist_ok=True)
    np.savetxt(file_path, alphabet.points, delimiter=",", fmt="%.17g")
    return file_path
