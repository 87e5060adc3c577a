"""Binary labelings: the four named constructions, their building blocks, and the ±1 matrix Q."""

from __future__ import annotations

import itertools
import logging
import os
from collections.abc import Iterator, Sequence
from dataclasses import dataclass, field
from pathlib import Path

import numpy as np
import numpy.typing as npt

from bicm.core.constants import LABELING_KINDS, MIN_ORDER
from bicm.errors import DomainError

logger = logging.getLogger(__name__)

IntArray = npt.NDArray[np.int8]

_MATERIALIZE_MAX_ORDER = 4


@dataclass(frozen=True, eq=False)
class Labeling:
    """An M x m binary matrix; row i is the codeword of symbol i, column k is bit position k."""

    bits: IntArray
    name: str = field(default="", compare=False)

    def __post_init__(self) -> None:
        arr = np.array(self.bits, dtype=np.int8, copy=True)
        if arr.ndim != 2 or arr.shape[1] < 1:
            raise DomainError(f"labeling must be a 2-D matrix with at least one column, got shape {arr.shape}")
        size, order = arr.shape
        if size != 1 << order:
            raise DomainError(f"labeling of order m={order} needs 2^m={1 << order} rows, got {size}")
        if np.any((arr != 0) & (arr != 1)):
            raise DomainError("labeling entries must be binary digits 0/1")
        if len(np.unique(_row_values(arr))) != size:
            raise DomainError("labeling rows must be pairwise distinct")
        arr.setflags(write=False)
        object.__setattr__(self, "bits", arr)

    @property
    def order(self) -> int:
        return int(self.bits.shape[1])

    @property
    def size(self) -> int:
        return int(self.bits.shape[0])

    @property
    def codewords(self) -> tuple[str, ...]:
        return tuple("".join(str(int(b)) for b in row) for row in self.bits)

    def row_values(self) -> npt.NDArray[np.int64]:
        """Integer value of each codeword read with column 0 as the most significant bit."""
        return _row_values(self.bits)

    def to_text(self) -> str:
        return "\n".join(self.codewords) + "\n"

    @classmethod
    def from_text(cls, text: str, *, name: str = "") -> Labeling:
        lines = [line.strip() for line in text.splitlines() if line.strip()]
        if not lines:
            raise DomainError("labeling text is empty")
        widths = {len(line) for line in lines}
        if len(widths) != 1:
            raise DomainError(f"all codewords must share one length, got lengths {sorted(widths)}")
        try:
            rows = [[int(ch) for ch in line] for line in lines]
        except ValueError as exc:
            raise DomainError(f"codewords must be bit strings: {exc}") from exc
        return cls(np.array(rows, dtype=np.int8), name=name)

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, Labeling):
            return NotImplemented
        return self.bits.shape == other.bits.shape and bool(np.array_equal(self.bits, other.bits))

    def __hash__(self) -> int:
        return hash((self.bits.shape, self.bits.tobytes()))

    def __repr__(self) -> str:
        label = self.name or "Labeling"
        return f"{label}(m={self.order}, rows={list(self.codewords)})"


def _row_values(arr: npt.NDArray[np.integer]) -> npt.NDArray[np.int64]:
    order = arr.shape[1]
    weights = 1 << np.arange(order - 1, -1, -1, dtype=np.int64)
    return arr.astype(np.int64) @ weights


def _trivial() -> Labeling:
    return Labeling(np.array([[0], [1]], dtype=np.int8))


def expand(labeling: Labeling) -> Labeling:
    """Duplicate each codeword and append the column 0,1,1,0,0,1,1,0,..."""
    doubled = np.repeat(labeling.bits, 2, axis=0)
    idx = np.arange(doubled.shape[0])
    tail = ((idx + 1) // 2) % 2
    return Labeling(np.column_stack([doubled, tail]).astype(np.int8))


def reflect(labeling: Labeling) -> Labeling:
    """Stack the codewords and their reversed order, prefixed by a zeros/ones column."""
    body = np.vstack([labeling.bits, labeling.bits[::-1]])
    return Labeling(_prefix_half_split(body))


def repeat(labeling: Labeling) -> Labeling:
    """Stack the codewords twice, prefixed by a zeros/ones column."""
    body = np.vstack([labeling.bits, labeling.bits])
    return Labeling(_prefix_half_split(body))


def _prefix_half_split(body: IntArray) -> IntArray:
    half = body.shape[0] // 2
    head = np.concatenate([np.zeros(half, dtype=np.int8), np.ones(half, dtype=np.int8)])
    return np.column_stack([head, body]).astype(np.int8)


def nbc(m: int) -> Labeling:
    _check_order("nbc", m)
    values = np.arange(1 << m)
    shifts = np.arange(m - 1, -1, -1)
    return Labeling(((values[:, None] >> shifts) & 1).astype(np.int8), name="NBC")


def brgc(m: int) -> Labeling:
    _check_order("brgc", m)
    labeling = _trivial()
    for _ in range(m - 1):
        labeling = expand(labeling)
    return Labeling(labeling.bits, name="BRGC")


def brgc_by_reflection(m: int) -> Labeling:
    _check_order("brgc", m)
    labeling = _trivial()
    for _ in range(m - 1):
        labeling = reflect(labeling)
    return Labeling(labeling.bits, name="BRGC")


def bsgc(m: int) -> Labeling:
    _check_order("bsgc", m)
    bits = np.array(brgc(m).bits)
    bits[:, 0] = bits[:, 0] ^ bits[:, m - 1]
    return Labeling(bits, name="BSGC")


def fbc(m: int) -> Labeling:
    _check_order("fbc", m)
    return Labeling(reflect(nbc(m - 1)).bits, name="FBC")


_BUILDERS = {"brgc": brgc, "nbc": nbc, "bsgc": bsgc, "fbc": fbc}


def _check_order(kind: str, m: int) -> None:
    minimum = MIN_ORDER[kind]
    if m < minimum:
        raise DomainError(f"{kind.upper()} requires m >= {minimum}, got m={m}")


def standard_labeling(kind: str, m: int) -> Labeling:
    key = kind.lower()
    if key not in _BUILDERS:
        raise DomainError(f"unknown labeling kind {kind!r}; expected one of {', '.join(LABELING_KINDS)}")
    return _BUILDERS[key](m)


def modified_matrix(labeling: Labeling) -> IntArray:
    """Q with q[i, k] = +1 iff c[i, m-1-k] = 0."""
    return (1 - 2 * labeling.bits[:, ::-1]).astype(np.int8)


def labeling_from_modified(q: npt.ArrayLike) -> Labeling:
    arr = np.asarray(q)
    if np.any((arr != 1) & (arr != -1)):
        raise DomainError("modified labeling entries must be +1/-1")
    return Labeling(((1 - arr[:, ::-1]) // 2).astype(np.int8))


def ordered_product(outer: Labeling, inner: Labeling) -> Labeling:
    """Row q*i + j is [outer row i, inner row j] with q = 2^(inner order)."""
    left = np.repeat(outer.bits, inner.size, axis=0)
    right = np.tile(inner.bits, (outer.size, 1))
    return Labeling(np.hstack([left, right]).astype(np.int8))


def from_permutation(perm: Sequence[int]) -> Labeling:
    """Labeling whose row i is the natural-binary codeword perm[i]."""
    perm_arr = np.asarray(perm, dtype=np.int64)
    m = int(perm_arr.size).bit_length() - 1
    return Labeling(nbc(m).bits[perm_arr])


def iter_trivial_variants(labeling: Labeling) -> Iterator[Labeling]:
    """Every column permutation composed with every per-column inversion, duplicates included."""
    m = labeling.order
    for cols in itertools.permutations(range(m)):
        permuted = labeling.bits[:, list(cols)]
        for mask in range(1 << m):
            flips = np.array([(mask >> k) & 1 for k in range(m)], dtype=np.int8)
            yield Labeling(permuted ^ flips)


def trivial_variants(labeling: Labeling) -> frozenset[Labeling]:
    if labeling.order > _MATERIALIZE_MAX_ORDER:
        raise DomainError(
            f"trivial_variants materializes orders m <= {_MATERIALIZE_MAX_ORDER}; "
            f"use iter_trivial_variants for m={labeling.order}"
        )
    return frozenset(iter_trivial_variants(labeling))


def read_labeling(path: str | os.PathLike[str]) -> Labeling:
    file_path = Path(path)
    if not file_path.exists():
        raise FileNotFoundError(f"Labeling file not found: {file_path}")
    labeling = Labeling.from_text(file_path.read_text(encoding="utf-8"), name=file_path.stem)
    logger.debug("Loaded labeling of order %d from %s", labeling.order, file_path)
    return labeling


def write_labeling(labeling: Labeling, path: str | os.PathLike[str]) -> Path:
    file_path = Path(path)
    file_path.parent.mkdir(parents=True, exist_ok=True)
    file_path.write_text(labeling.to_text(), encoding="utf-8")
    return file_path
