"""Truncated integer q-series and the theta functions phi, psi."""
from __future__ import annotations

import math
from typing import Dict, List

import numpy as np

MIN_CONJ12_LIMIT = 2578


class QSeries:
    """Coefficients of q^0..q^N, exact int64."""

    __slots__ = ("coeffs",)

    def __init__(self, coeffs):
        c = np.array(coeffs, dtype=np.int64)
        if c.ndim != 1 or c.size == 0:
            raise ValueError("need a nonempty 1-d coefficient vector")
        c.flags.writeable = False
        self.coeffs = c

    @property
    def N(self) -> int:
        return self.coeffs.size - 1

    def __getitem__(self, n: int) -> int:
        return int(self.coeffs[n])

    def __len__(self) -> int:
        return self.coeffs.size

    def __repr__(self) -> str:
        head = ", ".join(str(v) for v in self.coeffs[:8].tolist())
        return f"QSeries(N={self.N}, [{head}{', ...' if self.N >= 8 else ''}])"

    def __eq__(self, other) -> bool:
        return isinstance(other, QSeries) and np.array_equal(self.coeffs, other.coeffs)

    def _same_truncation(self, other: "QSeries") -> None:
        if self.N != other.N:
            raise ValueError(f"truncation mismatch: {self.N} vs {other.N}")

    def __add__(self, other: "QSeries") -> "QSeries":
        self._same_truncation(other)
        return QSeries(self.coeffs + other.coeffs)

    def __mul__(self, other: "QSeries") -> "QSeries":
        return multiply(self, other)

    def shift(self, k: int) -> "QSeries":
        """Multiply by q^k, keeping the truncation."""
        out = np.zeros_like(self.coeffs)
        if k <= self.N:
            out[k:] = self.coeffs[: self.N + 1 - k]
        return QSeries(out)

    def support(self) -> np.ndarray:
        return np.flatnonzero(self.coeffs)


def one(N: int) -> QSeries:
    c = np.zeros(N + 1, dtype=np.int64)
    c[0] = 1
    return QSeries(c)


def phi(N: int) -> QSeries:
    """sum over all integers n of q^(n^2)."""
    if N < 0:
        raise ValueError(f"negative truncation {N}")
    c = np.zeros(N + 1, dtype=np.int64)
    k = np.arange(1, math.isqrt(N) + 1)
    c[k * k] = 2
    c[0] = 1
    return QSeries(c)


def psi(N: int) -> QSeries:
    """sum over n >= 0 of q^(n(n+1)/2)."""
    if N < 0:
        raise ValueError(f"negative truncation {N}")
    c = np.zeros(N + 1, dtype=np.int64)
    k = np.arange(0, (math.isqrt(8 * N + 1) - 1) // 2 + 1)
    c[k * (k + 1) // 2] = 1
    return QSeries(c)


def dilate(s: QSeries, k: int) -> QSeries:
    """Substitute q -> q^k."""
    if k < 1:
        raise ValueError(f"dilation factor must be positive, got {k}")
    out = np.zeros_like(s.coeffs)
    out[::k] = s.coeffs[: s.N // k + 1]
    return QSeries(out)


def multiply(a: QSeries, b: QSeries) -> QSeries:
    """Truncated Cauchy product, looping over the sparser factor's support."""
    a._same_truncation(b)
    if np.count_nonzero(a.coeffs) < np.count_nonzero(b.coeffs):
        a, b = b, a
    N = a.N
    out = np.zeros(N + 1, dtype=np.int64)
    for j in b.support().tolist():
        out[j:] += b.coeffs[j] * a.coeffs[: N + 1 - j]
    return QSeries(out)


def zero_coefficient_set(s: QSeries, start: int = 0) -> List[int]:
    if not 0 <= start <= s.N:
        raise ValueError(f"start {start} outside [0, {s.N}]")
    if (s.coeffs < 0).any():
        raise ValueError("series has negative coefficients; positivity is not a count")
    return (np.flatnonzero(s.coeffs[start:] <= 0) + start).tolist()


def conj12_series(N: int) -> Dict[str, QSeries]:
    p, ps = phi(N), psi(N)
    return {
        "two_even_squares_plus_T": dilate(p, 4) * dilate(p, 4) * ps,
        "mult4_square_plus_even_square_plus_T": dilate(p, 4) * dilate(p, 16) * ps,
        "two_odd_squares_plus_T_or_triangular": (one(N) + (dilate(ps, 8) * dilate(ps, 8)).shift(2)) * ps,
    }


def conj12_check(N: int) -> Dict[str, List[int]]:
    """Zero-coefficient sets of the three generating functions, keyed by the
    matching direct-search variant name."""
    if N < MIN_CONJ12_LIMIT:
        raise ValueError(f"N must be at least {MIN_CONJ12_LIMIT}, got {N}")
    return {name: zero_coefficient_set(s) for name, s in conj12_series(N).items()}
