"""Sylvester-ordered Hadamard matrices and the fast Hadamard transform of alphabet matrices."""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np
import numpy.typing as npt

from bicm.core.labelings import modified_matrix, nbc
from bicm.errors import DomainError

FloatArray = npt.NDArray[np.float64]


def _log2_exact(size: int, what: str) -> int:
    if size < 1 or size & (size - 1):
        raise DomainError(f"{what} must be a power of two, got {size}")
    return size.bit_length() - 1


def hadamard_entry(i: int, j: int) -> int:
    return -1 if (i & j).bit_count() & 1 else 1


def hadamard_matrix(size: int) -> npt.NDArray[np.int64]:
    """H with h[i, j] = (-1)^popcount(i AND j); satisfies H = H^T and H H = M I."""
    _log2_exact(size, "Hadamard size M")
    idx = np.arange(size, dtype=np.int64)
    parity = np.bitwise_count(idx[:, None] & idx[None, :]) & 1
    return (1 - 2 * parity).astype(np.int64)


def _butterfly(values: FloatArray) -> FloatArray:
    size = values.shape[0]
    out = np.array(values, dtype=np.float64, copy=True)
    h = 1
    while h < size:
        blocks = out.reshape(size // (2 * h), 2, h, -1)
        top = blocks[:, 0] + blocks[:, 1]
        bottom = blocks[:, 0] - blocks[:, 1]
        out = np.stack([top, bottom], axis=1).reshape(size, -1)
        h *= 2
    return out


@dataclass(frozen=True)
class HadamardSpectrum:
    """Rows x~_j of (1/M) H X."""

    coefficients: FloatArray

    @property
    def size(self) -> int:
        return int(self.coefficients.shape[0])

    def energies(self) -> FloatArray:
        return np.sum(self.coefficients**2, axis=1)

    def power_of_two_energy(self) -> float:
        """Sum of ||x~_{2^k}||^2 over k = 0..m-1."""
        m = self.size.bit_length() - 1
        return float(sum(self.energies()[1 << k] for k in range(m)))


def ht(alphabet: npt.ArrayLike) -> HadamardSpectrum:
    x = np.asarray(alphabet, dtype=np.float64)
    if x.ndim == 1:
        x = x[:, None]
    size = x.shape[0]
    _log2_exact(size, "alphabet row count")
    return HadamardSpectrum(_butterfly(x) / size)


def inverse_ht(spectrum: HadamardSpectrum | npt.ArrayLike) -> FloatArray:
    coeffs = spectrum.coefficients if isinstance(spectrum, HadamardSpectrum) else np.asarray(spectrum, dtype=float)
    if coeffs.ndim == 1:
        coeffs = coeffs[:, None]
    _log2_exact(coeffs.shape[0], "spectrum row count")
    return _butterfly(coeffs)


def nbc_column_identity_check(m: int) -> bool:
    """Column k of Q(NBC_m) equals column 2^k of H_{2^m} for every k."""
    if m < 1:
        raise DomainError(f"order must satisfy m >= 1, got m={m}")
    q = modified_matrix(nbc(m)).astype(np.int64)
    h = hadamard_matrix(1 << m)
    return all(np.array_equal(q[:, k], h[:, 1 << k]) for k in range(m))
