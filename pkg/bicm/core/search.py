"""Exhaustive enumeration of all M! labelings of an alphabet, grouped by their BICM coefficient."""

from __future__ import annotations

import itertools
import logging
import math
from collections import Counter
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field

import numpy as np
import numpy.typing as npt

from bicm.core.constants import LOG2E
from bicm.core.constellations import InputAlphabet
from bicm.core.labelings import from_permutation, modified_matrix, nbc
from bicm.errors import DomainError
from bicm.models import AlphaCensus, AlphaClass

logger = logging.getLogger(__name__)

DEFAULT_MAX_SIZE = 8
CLASS_GAP = 1e-9
CHUNK_SIZE = 5040


@dataclass
class _PartialCensus:
    counts: Counter[float | int] = field(default_factory=Counter)
    first_seen: dict[float | int, int] = field(default_factory=dict)

    def merge(self, other: _PartialCensus) -> None:
        self.counts.update(other.counts)
        for key, index in other.first_seen.items():
            if key not in self.first_seen or index < self.first_seen[key]:
                self.first_seen[key] = index


def _chunk_keys(
    perms: npt.NDArray[np.int64], q_nbc: npt.NDArray[np.int64], points: npt.NDArray[np.generic], exact: bool
) -> npt.NDArray[np.generic]:
    """sum_k ||sum_i q_{perm[i],k} x_i||^2 for each permutation in the chunk."""
    gathered = q_nbc[perms]  # (B, M, m)
    sums = np.einsum("bik,in->bkn", gathered, points)
    keys = np.einsum("bkn,bkn->b", sums, sums)
    return keys if exact else keys.astype(np.float64)


def _scan_chunk(
    start: int,
    perms: npt.NDArray[np.int64],
    q_nbc: npt.NDArray[np.int64],
    points: npt.NDArray[np.generic],
    exact: bool,
    scale: float,
) -> _PartialCensus:
    keys = _chunk_keys(perms, q_nbc, points, exact)
    if not exact:
        # Rounded provisional keys; classes closer than CLASS_GAP are merged afterwards
        keys = np.round(keys * scale, 12)
    values, first, counts = np.unique(keys, return_index=True, return_counts=True)
    partial = _PartialCensus()
    for value, idx, count in zip(values.tolist(), first.tolist(), counts.tolist(), strict=True):
        partial.counts[value] = count
        partial.first_seen[value] = start + idx
    return partial


def _permutation_chunks(size: int, chunk_size: int) -> list[tuple[int, npt.NDArray[np.int64]]]:
    chunks: list[tuple[int, npt.NDArray[np.int64]]] = []
    source = itertools.permutations(range(size))
    start = 0
    while True:
        block = list(itertools.islice(source, chunk_size))
        if not block:
            return chunks
        chunks.append((start, np.asarray(block, dtype=np.int64)))
        start += len(block)


def _nth_permutation(size: int, index: int) -> tuple[int, ...]:
    """Lexicographic permutation number ``index`` of range(size)."""
    pool = list(range(size))
    out = []
    for slot in range(size, 0, -1):
        block = math.factorial(slot - 1)
        pos, index = divmod(index, block)
        out.append(pool.pop(pos))
    return tuple(out)


def enumerate_alpha_classes(
    alphabet: InputAlphabet,
    *,
    allow_large: bool = False,
    max_size: int = DEFAULT_MAX_SIZE,
    workers: int = 1,
    chunk_size: int = CHUNK_SIZE,
) -> AlphaCensus:
    """Census of the uniform BICM coefficient over every labeling, iterated as NBC-row permutations."""
    size = alphabet.size
    total = math.factorial(size)
    if size > max_size and not allow_large:
        raise DomainError(
            f"exhaustive search over M={size} enumerates {size}! = {total:,} labelings; "
            f"the default limit is M <= {max_size} (pass allow_large to override)"
        )

    exact = alphabet.is_integer
    q_nbc = modified_matrix(nbc(alphabet.order)).astype(np.int64)
    points: npt.NDArray[np.generic]
    if exact:
        points = np.round(alphabet.points).astype(np.int64)
        total_energy = int(np.sum(points * points))
    else:
        points = alphabet.points
        total_energy = float(np.sum(points**2))
    if total_energy == 0:
        raise DomainError("mean symbol energy Es must be positive")
    # alpha / log2(e) = key / (M * sum ||x_i||^2)
    denominator = size * total_energy
    scale = 1.0 / denominator

    logger.info(
        "Enumerating %d labelings of %s (%s keys)", total, alphabet.name or "alphabet", "exact" if exact else "float"
    )
    chunks = _permutation_chunks(size, chunk_size)
    merged = _PartialCensus()
    if workers > 1 and len(chunks) > 1:
        with ThreadPoolExecutor(max_workers=workers) as pool:
            partials = list(pool.map(lambda c: _scan_chunk(c[0], c[1], q_nbc, points, exact, scale), chunks))
    else:
        partials = [_scan_chunk(start, perms, q_nbc, points, exact, scale) for start, perms in chunks]
    for partial in partials:
        merged.merge(partial)

    classes = _build_classes(merged, size, exact, denominator)
    foo_count = _foo_count(merged, exact, denominator)
    alphas = [c.alpha for c in classes]
    spacing = min((b - a for a, b in zip(alphas, alphas[1:], strict=False)), default=None)
    best = classes[-1]
    logger.info("Found %d classes, %d first-order optimal labelings", len(classes), foo_count)
    return AlphaCensus(
        alphabet=alphabet.name or f"{size}-point alphabet",
        total=total,
        exact=exact,
        classes=classes,
        class_count=len(classes),
        max_alpha=best.alpha,
        max_witness=best.witness,
        foo_count=foo_count,
        min_class_spacing=spacing,
    )


def _build_classes(merged: _PartialCensus, size: int, exact: bool, denominator: float | int) -> list[AlphaClass]:
    keys = sorted(merged.counts)
    groups: list[list[float | int]] = []
    for key in keys:
        if not exact and groups and key - groups[-1][-1] <= CLASS_GAP:
            groups[-1].append(key)
        else:
            groups.append([key])

    classes: list[AlphaClass] = []
    for group in groups:
        count = sum(merged.counts[k] for k in group)
        first = min(merged.first_seen[k] for k in group)
        ratio = group[0] / denominator if exact else float(group[0])
        witness = from_permutation(_nth_permutation(size, first))
        classes.append(AlphaClass(alpha=LOG2E * float(ratio), count=count, witness=list(witness.codewords)))
    return classes


def _foo_count(merged: _PartialCensus, exact: bool, denominator: float | int) -> int:
    """Labelings whose coefficient equals log2(e): key == M * sum ||x_i||^2."""
    if exact:
        return merged.counts.get(denominator, 0)
    return sum(count for key, count in merged.counts.items() if abs(float(key) - 1.0) <= CLASS_GAP)


def count_foo_labelings(alphabet: InputAlphabet, *, allow_large: bool = False, workers: int = 1) -> int:
    return enumerate_alpha_classes(alphabet, allow_large=allow_large, workers=workers).foo_count


def distinct_value_count_of_pmf(census: AlphaCensus) -> int:
    """Number of distinct multiplicities in the coefficient histogram."""
    return len({c.count for c in census.classes})
