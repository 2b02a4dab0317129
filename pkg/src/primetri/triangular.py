"""Triangular numbers T_x = x(x+1)/2 and their residues."""
from __future__ import annotations

import math
from typing import Iterator, Set, Tuple

import numpy as np

from .sieve import PrimeSieve, build_sieve

MAX_INDEX = 2**31
MAX_POW2_EXPONENT = 24


def triangular(x: int) -> int:
    if abs(x) > MAX_INDEX:
        raise OverflowError(f"|x| = {abs(x)} exceeds {MAX_INDEX}")
    return x * (x + 1) // 2


def is_triangular(n: int) -> bool:
    if n < 0:
        return False
    s = 8 * n + 1
    return math.isqrt(s) ** 2 == s


def triangular_iter(start: int = 0) -> Iterator[int]:
    x = start
    t = triangular(x)
    while True:
        yield t
        x += 1
        t += x


def triangular_values(limit: int, positive: bool = False) -> np.ndarray:
    """Ascending T_x <= limit for x >= 0 (x >= 1 if ``positive``)."""
    if limit < 0:
        return np.empty(0, dtype=np.int64)
    top = (math.isqrt(8 * limit + 1) - 1) // 2
    x = np.arange(1 if positive else 0, top + 1, dtype=np.int64)
    return x * (x + 1) // 2


def count_triangular_upto(limit: int) -> int:
    return (math.isqrt(8 * limit + 1) - 1) // 2 + 1 if limit >= 0 else 0


def _residues_one_period(m: int) -> np.ndarray:
    # T_x mod m has period 2m (T_{x+m} = T_x + m*x + m(m+1)/2), and the reflection
    # T_{-x-1} = T_x maps [m, 2m) onto [0, m), so x in [0, m) sees every residue.
    x = np.arange(m, dtype=np.int64)
    return (x * (x + 1) // 2) % m


def triangular_residues(m: int) -> Set[int]:
    if m < 1:
        raise ValueError(f"modulus must be positive, got {m}")
    return set(np.unique(_residues_one_period(m)).tolist())


def lemma21_check(p: int, sieve: PrimeSieve | None = None) -> Tuple[int, bool]:
    """Number of triangular residues mod the odd prime p, and whether it is (p+1)/2."""
    if p < 3 or p % 2 == 0:
        raise ValueError(f"{p} is not an odd prime")
    if sieve is None or sieve.limit < p:
        sieve = build_sieve(p)
    if not sieve.is_prime(p):
        raise ValueError(f"{p} is not an odd prime")
    count = len(triangular_residues(p))
    return count, count == (p + 1) // 2


def covers_mod_power_of_two(a: int) -> bool:
    if a < 0 or a > MAX_POW2_EXPONENT:
        raise ValueError(f"exponent must be in [0, {MAX_POW2_EXPONENT}], got {a}")
    m = 1 << a
    hit = np.zeros(m, dtype=bool)
    hit[_residues_one_period(m)] = True
    return bool(hit.all())
