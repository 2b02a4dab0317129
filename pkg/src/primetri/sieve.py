"""Odd-only, bit-packed sieve of Eratosthenes backed by numpy."""
from __future__ import annotations

import math
from functools import cached_property

import numpy as np

DEFAULT_CEILING = 2**31


class SieveLimitError(ValueError):
    """Requested bound exceeds the sieve (or the configured memory ceiling)."""


class PrimeSieve:
    """Primality table for 0..limit.

    Bit i of ``bits`` (little-endian within each byte) records whether
    2*i + 1 is prime; 2 is handled separately.
    """

    def __init__(self, limit: int, bits: np.ndarray):
        self.limit = limit
        self.bits = bits
        self.bits.flags.writeable = False

    def __repr__(self) -> str:
        return f"PrimeSieve(limit={self.limit})"

    def _check(self, n: int) -> None:
        if n > self.limit:
            raise SieveLimitError(f"{n} exceeds sieve limit {self.limit}")

    def is_prime(self, n: int) -> bool:
        self._check(n)
        if n < 2:
            return False
        if n % 2 == 0:
            return n == 2
        i = (n - 1) >> 1
        return bool((self.bits[i >> 3] >> (i & 7)) & 1)

    __contains__ = is_prime

    @cached_property
    def odd_flags(self) -> np.ndarray:
        """Unpacked boolean array: flags[i] <=> 2i+1 prime."""
        n_odd = (self.limit + 1) // 2
        flags = np.unpackbits(self.bits, count=n_odd, bitorder="little").astype(bool)
        flags.flags.writeable = False
        return flags

    @cached_property
    def primes(self) -> np.ndarray:
        odd = np.flatnonzero(self.odd_flags).astype(np.int64) * 2 + 1
        head = np.array([2], dtype=np.int64) if self.limit >= 2 else np.empty(0, np.int64)
        out = np.concatenate([head, odd])
        out.flags.writeable = False
        return out

    def count(self) -> int:
        return int(self.primes.size)

    def primes_upto(self, limit: int) -> np.ndarray:
        self._check(limit)
        return self.primes[: np.searchsorted(self.primes, limit, side="right")]


def build_sieve(limit: int, ceiling: int = DEFAULT_CEILING) -> PrimeSieve:
    if limit < 0:
        raise ValueError(f"negative sieve limit {limit}")
    if limit > ceiling:
        raise SieveLimitError(f"sieve limit {limit} exceeds memory ceiling {ceiling}")
    n_odd = (limit + 1) // 2
    flags = np.ones(n_odd, dtype=bool)
    if n_odd:
        flags[0] = False  # 1 is not prime
    for p in range(3, math.isqrt(limit) + 1, 2):
        if flags[p >> 1]:
            flags[(p * p) >> 1 :: p] = False
    return PrimeSieve(limit, np.packbits(flags, bitorder="little"))


def is_prime(s: PrimeSieve, n: int) -> bool:
    return s.is_prime(n)


def primes_in_class(s: PrimeSieve, r: int, d: int, limit: int | None = None) -> np.ndarray:
    """Ascending primes p <= limit with p = r (mod d)."""
    if d < 1:
        raise ValueError(f"modulus must be positive, got {d}")
    ps = s.primes_upto(s.limit if limit is None else limit)
    if d == 1:
        return ps
    return ps[ps % d == r % d]
