"""First-order (low-SNR) coefficients of the CM and BICM capacities and first-order optimality."""

from __future__ import annotations

import logging
import math
from fractions import Fraction
from functools import lru_cache

import numpy as np
import numpy.typing as npt

from bicm.core.constants import LOG2E, MIN_ORDER
from bicm.core.constellations import Constellation, InputAlphabet, qam
from bicm.core.hadamard import ht
from bicm.core.labelings import Labeling, iter_trivial_variants, modified_matrix, nbc
from bicm.errors import DomainError
from bicm.models import AlphaResult, FooVerdict

logger = logging.getLogger(__name__)

FloatArray = npt.NDArray[np.float64]

DEFAULT_FOO_TOLERANCE = 1e-9


def _points(alphabet: InputAlphabet | npt.ArrayLike) -> FloatArray:
    if isinstance(alphabet, InputAlphabet):
        return np.asarray(alphabet.points)
    arr = np.asarray(alphabet, dtype=np.float64)
    return arr[:, None] if arr.ndim == 1 else arr


def alpha_cm(constellation: Constellation) -> AlphaResult:
    mean_energy = float(constellation.mean @ constellation.mean)
    return AlphaResult.from_alpha(LOG2E * (1.0 - mean_energy / constellation.energy))


def _conditional_mean_terms(constellation: Constellation) -> tuple[float, float, list[tuple[int, int]]]:
    """Returns (conditional-mean sum, signed-form sum, degenerate (k, u) pairs), both sums divided by Es."""
    bits = constellation.require_bitwise()
    x = constellation.alphabet.points
    probs = constellation.probabilities
    mean = constellation.mean
    es = constellation.energy
    mean_sq = float(mean @ mean)

    conditional = 0.0
    signed = 0.0
    degenerate: list[tuple[int, int]] = []
    for k in range(constellation.order):
        column = constellation.labeling.bits[:, k]
        p_bit = np.array([bits.probability(k, 0), bits.probability(k, 1)])
        for u in (0, 1):
            if p_bit[u] <= 0.0:
                degenerate.append((k, u))
                continue
            idx = constellation.index_sets[(k, u)]
            weighted = probs[idx] @ x[idx]
            conditional += float(weighted @ weighted) / p_bit[u]
        conditional -= mean_sq

        live = probs > 0.0
        scale = np.zeros_like(probs)
        scale[live] = probs[live] / np.sqrt(p_bit[column[live]])
        sign = 1.0 - 2.0 * column
        a = (sign * scale) @ x
        b = scale @ x
        signed += 0.5 * (float(a @ a) + float(b @ b)) - mean_sq
    return conditional / es, signed / es, degenerate


def alpha_bicm(constellation: Constellation) -> AlphaResult:
    """Conditional-mean form; a (k, u) with P_{C_k}(u) = 0 contributes nothing and is reported."""
    conditional, signed, degenerate = _conditional_mean_terms(constellation)
    if not math.isclose(conditional, signed, rel_tol=1e-12, abs_tol=1e-12):
        raise RuntimeError(f"BICM coefficient forms disagree: {conditional!r} vs {signed!r}")
    if degenerate:
        logger.debug("Degenerate bit levels in %s: %s", constellation.describe(), degenerate)
    return AlphaResult.from_alpha(LOG2E * conditional, degenerate)


def projection_sums(alphabet: InputAlphabet | npt.ArrayLike, labeling: Labeling) -> FloatArray:
    """Rows sum_i q_{i,k} x_i, k = 0..m-1."""
    x = _points(alphabet)
    if x.shape[0] != labeling.size:
        raise DomainError(f"alphabet has {x.shape[0]} rows but labeling has {labeling.size} codewords")
    return np.asarray(modified_matrix(labeling).astype(np.float64).T @ x)


def alpha_bicm_uniform_exact(alphabet: InputAlphabet | npt.ArrayLike, labeling: Labeling) -> Fraction:
    """alpha / log2(e) as an exact rational for integer-valued alphabets."""
    x = _points(alphabet)
    if not np.all(x == np.round(x)):
        raise DomainError("exact coefficient requires integer alphabet coordinates")
    xi = np.round(x).astype(np.int64)
    q = modified_matrix(labeling).astype(np.int64)
    sums = q.T @ xi
    key = int(np.sum(sums * sums))
    total_energy = int(np.sum(xi * xi))
    if total_energy == 0:
        raise DomainError("mean symbol energy Es must be positive")
    return Fraction(key, labeling.size * total_energy)


def alpha_bicm_uniform(alphabet: InputAlphabet | npt.ArrayLike, labeling: Labeling) -> AlphaResult:
    """(log2 e / Es) sum_k ||(1/M) sum_i q_{i,k} x_i||^2 under the uniform distribution."""
    x = _points(alphabet)
    if np.all(x == np.round(x)):
        ratio = alpha_bicm_uniform_exact(x, labeling)
        return AlphaResult.from_alpha(LOG2E * float(ratio))
    es = float(np.mean(np.sum(x**2, axis=1)))
    if es <= 0.0:
        raise DomainError("mean symbol energy Es must be positive")
    sums = projection_sums(x, labeling) / labeling.size
    return AlphaResult.from_alpha(LOG2E * float(np.sum(sums**2)) / es)


def nbc_ordered(alphabet: InputAlphabet | npt.ArrayLike, labeling: Labeling) -> FloatArray:
    """Rows permuted so that row j carries the symbol labeled with the natural-binary codeword j."""
    x = _points(alphabet)
    out = np.empty_like(x)
    out[labeling.row_values()] = x
    return out


def alpha_bicm_ht(alphabet: InputAlphabet | npt.ArrayLike) -> AlphaResult:
    """Coefficient of [X, NBC, uniform] from the power-of-two entries of the Hadamard spectrum."""
    x = _points(alphabet)
    es = float(np.mean(np.sum(x**2, axis=1)))
    if es <= 0.0:
        raise DomainError("mean symbol energy Es must be positive")
    return AlphaResult.from_alpha(LOG2E * ht(x).power_of_two_energy() / es)


def _order_of(size: int, kind: str) -> int:
    if size < 2 or size & (size - 1):
        raise DomainError(f"M must be a power of two >= 2, got {size}")
    m = size.bit_length() - 1
    key = kind.lower()
    if key not in MIN_ORDER:
        raise DomainError(f"unknown labeling kind {kind!r}")
    if m < MIN_ORDER[key]:
        raise DomainError(f"{key.upper()} requires m >= {MIN_ORDER[key]}, got m={m}")
    return m


def alpha_pam_ratio(size: int, kind: str) -> Fraction:
    """alpha / log2(e) for uniform M-PAM as an exact rational."""
    _order_of(size, kind)
    key = kind.lower()
    if key in ("brgc", "fbc"):
        return Fraction(3 * size * size, 4 * (size * size - 1))
    if key == "nbc":
        return Fraction(1)
    return Fraction(0)


def alpha_pam_closed(size: int, kind: str) -> AlphaResult:
    return AlphaResult.from_alpha(LOG2E * float(alpha_pam_ratio(size, kind)))


def fbc_tangent_series(m: int | None = None) -> float:
    """sum_{k=2}^{m} tan^2(pi / 2^k); m=None sums until the terms vanish in double precision."""
    upper = 64 if m is None else m
    return math.fsum(math.tan(math.pi / 2**k) ** 2 for k in range(2, upper + 1))


def alpha_psk_closed(size: int, kind: str) -> AlphaResult:
    m = _order_of(size, kind)
    key = kind.lower()
    c = 4.0 * LOG2E / (size * size * math.sin(math.pi / size) ** 2)
    if key == "brgc":
        alpha = 2.0 * c
    elif key == "nbc":
        alpha = c
    elif key == "bsgc":
        alpha = c * (1.0 + (1.0 - 1.0 / math.cos(2.0 * math.pi / size)) ** 2)
    else:
        alpha = c * (1.0 + fbc_tangent_series(m))
    return AlphaResult.from_alpha(alpha)


def alpha_limit(family: str, kind: str) -> AlphaResult:
    """M -> infinity limit of the uniform coefficient for PAM or PSK."""
    key = kind.lower()
    if family == "pam":
        ratio = {"brgc": 0.75, "fbc": 0.75, "nbc": 1.0, "bsgc": 0.0}[key]
        return AlphaResult.from_alpha(LOG2E * ratio)
    if family == "psk":
        base = 4.0 / math.pi**2
        factor = {"brgc": 2.0, "nbc": 1.0, "bsgc": 1.0, "fbc": 1.0 + fbc_tangent_series()}[key]
        return AlphaResult.from_alpha(LOG2E * base * factor)
    raise DomainError(f"limit is defined for 'pam' or 'psk', got {family!r}")


def is_foo(
    alphabet: InputAlphabet | npt.ArrayLike,
    labeling: Labeling,
    tolerance: float = DEFAULT_FOO_TOLERANCE,
) -> FooVerdict:
    """Least-squares V = (1/M) Q^T X and the relative residual ||QV - X||^2 / (M Es)."""
    x = _points(alphabet)
    size = labeling.size
    if x.shape[0] != size:
        raise DomainError(f"alphabet has {x.shape[0]} rows but labeling has {size} codewords")
    total_energy = float(np.sum(x**2))
    if total_energy <= 0.0:
        raise DomainError("mean symbol energy Es must be positive")

    q = modified_matrix(labeling).astype(np.float64)
    v = q.T @ x / size
    residual = float(np.sum((q @ v - x) ** 2)) / total_energy
    if np.all(x == np.round(x)):
        qi = q.astype(np.int64)
        xi = np.round(x).astype(np.int64)
        exact = bool(np.all(qi @ (qi.T @ xi) == size * xi))
    else:
        exact = residual <= tolerance

    alpha = alpha_bicm_uniform(x, labeling).alpha
    via_spectrum = alpha_bicm_ht(nbc_ordered(x, labeling)).alpha
    if not math.isclose(alpha, via_spectrum, rel_tol=1e-9, abs_tol=1e-12):
        raise RuntimeError(f"coefficient routes disagree: {alpha!r} vs {via_spectrum!r}")
    if not math.isclose(1.0 - residual, alpha / LOG2E, rel_tol=1e-9, abs_tol=1e-9):
        raise RuntimeError(f"residual {residual!r} inconsistent with alpha {alpha!r}")
    return FooVerdict(is_foo=exact, v=v.tolist(), residual=residual, alpha=alpha)


def constant_energy_foo_check(
    alphabet: InputAlphabet | npt.ArrayLike,
    labeling: Labeling,
    tolerance: float = DEFAULT_FOO_TOLERANCE,
) -> bool:
    x = _points(alphabet)
    norms = np.sum(x**2, axis=1)
    if np.max(norms) - np.min(norms) > tolerance * max(float(np.max(norms)), 1.0):
        raise DomainError("constant-energy check needs all symbols at equal norm")
    verdict = is_foo(x, labeling, tolerance)
    v = np.asarray(verdict.v)
    gram = v @ v.T
    off_diagonal = gram - np.diag(np.diag(gram))
    orthogonal = bool(np.max(np.abs(off_diagonal), initial=0.0) <= tolerance * float(norms[0]))
    if verdict.is_foo and not orthogonal:
        raise RuntimeError("first-order optimal constant-energy alphabet produced non-orthogonal projection rows")
    return verdict.is_foo and orthogonal


@lru_cache(maxsize=8)
def _nbc_variants(m: int) -> frozenset[Labeling]:
    return frozenset(iter_trivial_variants(nbc(m)))


def qam_foo_check(size_i: int, size_q: int, labeling: Labeling) -> bool:
    alphabet = qam(size_i, size_q)
    if labeling.size != alphabet.size:
        raise DomainError(f"labeling of order {labeling.order} does not fit a {size_i}x{size_q}-QAM")
    is_variant = labeling in _nbc_variants(labeling.order)
    verdict = is_foo(alphabet, labeling)
    if verdict.is_foo != is_variant:
        raise RuntimeError(
            f"QAM verdict mismatch: projection test says {verdict.is_foo}, trivial-variant test says {is_variant}"
        )
    return is_variant
