"""Marking engine for representations n = c*p + m*T_x.

A table is built by looping over the (few) scaled triangular values m*T_x <= N
and, for each, marking every admissible c*p that still fits.  All exceptional
sets are read off such tables.
"""
from __future__ import annotations

import logging
import math
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from enum import Enum
from typing import List, Optional, Tuple, Union

import numpy as np

from .sieve import PrimeSieve, SieveLimitError, primes_in_class
from .triangular import triangular_residues, triangular_values

log = logging.getLogger(__name__)


class XDomain(str, Enum):
    ALL = "all"
    NONNEGATIVE = "nonnegative"
    POSITIVE = "positive"


@dataclass(frozen=True)
class NFilter:
    """Which n an exception report keeps.  The conditions compose (logical and)."""

    odd_only: bool = False
    coprime_to: Optional[int] = None
    greater_than: Optional[int] = None

    def mask(self, n: np.ndarray) -> np.ndarray:
        keep = np.ones(n.shape, dtype=bool)
        if self.odd_only:
            keep &= (n & 1) == 1
        if self.coprime_to is not None:
            keep &= np.gcd(n, self.coprime_to) == 1
        if self.greater_than is not None:
            keep &= n > self.greater_than
        return keep

    def accepts(self, n: int) -> bool:
        return bool(self.mask(np.array([n], dtype=np.int64))[0])


@dataclass(frozen=True)
class FormSpec:
    """Shape n = c*p + m*T_x, p zero (if allowed) or a prime = r (mod d)."""

    c: int = 1
    m: int = 1
    r: int = 0
    d: int = 1
    allow_zero_prime: bool = True
    x_domain: XDomain = XDomain.ALL
    n_filter: NFilter = field(default_factory=NFilter)

    def __post_init__(self):
        if self.c < 1 or self.m < 1 or self.d < 1:
            raise ValueError(f"c, m, d must all be positive: {self}")
        object.__setattr__(self, "x_domain", XDomain(self.x_domain))

    @property
    def positive_x(self) -> bool:
        # T_{-x} = T_{x-1}: the integer and nonnegative domains give the same values
        return self.x_domain is XDomain.POSITIVE

    def prime_admissible(self, p: int) -> bool:
        return p % self.d == self.r % self.d

    def describe(self) -> dict:
        return {
            "c": self.c,
            "m": self.m,
            "prime_class": [self.r % self.d, self.d],
            "allow_zero_prime": self.allow_zero_prime,
            "x_domain": self.x_domain.value,
            "odd_only": self.n_filter.odd_only,
            "coprime_to": self.n_filter.coprime_to,
            "greater_than": self.n_filter.greater_than,
        }


class RepTable:
    """Packed representability bitmap for 0..limit under ``spec``."""

    def __init__(self, spec: FormSpec, limit: int, bits: np.ndarray):
        self.spec = spec
        self.limit = limit
        self.bits = bits
        self.bits.flags.writeable = False

    def __repr__(self) -> str:
        return f"RepTable(limit={self.limit}, spec={self.spec})"

    def __contains__(self, n: int) -> bool:
        if not 0 <= n <= self.limit:
            raise IndexError(f"{n} outside table [0, {self.limit}]")
        return bool((self.bits[n >> 3] >> (n & 7)) & 1)

    def flags(self) -> np.ndarray:
        return np.unpackbits(self.bits, count=self.limit + 1, bitorder="little").astype(bool)

    def clear_positions(self, start: int = 0) -> np.ndarray:
        return np.flatnonzero(~self.flags()[start:]).astype(np.int64) + start


@dataclass
class ExceptionReport:
    spec: Union[FormSpec, str]
    limit: int
    exceptions: List[int]
    complete_below: int

    def __len__(self) -> int:
        return len(self.exceptions)

    def __iter__(self):
        return iter(self.exceptions)

    def __contains__(self, n: int) -> bool:
        return n in set(self.exceptions)


def _mark(N: int, shifts: np.ndarray, steps: np.ndarray, zero: bool) -> np.ndarray:
    flags = np.zeros(N + 1, dtype=bool)
    for t in shifts.tolist():
        view = flags[t:]
        view[steps[: np.searchsorted(steps, N - t, side="right")]] = True
        if zero:
            flags[t] = True
    return flags


def build_table(spec: FormSpec, N: int, s: PrimeSieve, workers: int = 1) -> RepTable:
    if N < 0:
        raise ValueError(f"negative bound {N}")
    need = N // spec.c
    if s.limit < need:
        raise SieveLimitError(f"sieve limit {s.limit} too small; need primes up to {need}")
    steps = primes_in_class(s, spec.r, spec.d, need) * spec.c
    shifts = triangular_values(N // spec.m, positive=spec.positive_x) * spec.m
    log.debug("marking N=%d: %d shifts x %d primes", N, shifts.size, steps.size)
    if workers <= 1 or shifts.size < 2 * workers:
        flags = _mark(N, shifts, steps, spec.allow_zero_prime)
    else:
        chunks = np.array_split(shifts, workers)
        with ThreadPoolExecutor(workers) as pool:
            shards = list(pool.map(lambda ch: _mark(N, ch, steps, spec.allow_zero_prime), chunks))
        flags = np.logical_or.reduce(shards)
    return RepTable(spec, N, np.packbits(flags, bitorder="little"))


def find_witness(spec: FormSpec, n: int, s: PrimeSieve) -> Optional[Tuple[int, int]]:
    """Some (p, x) with n = c*p + m*T_x under ``spec``, by direct search."""
    x = 1 if spec.positive_x else 0
    while True:
        t = spec.m * x * (x + 1) // 2
        if t > n:
            return None
        rest = n - t
        if rest == 0:
            if spec.allow_zero_prime:
                return 0, x
        elif rest % spec.c == 0:
            p = rest // spec.c
            if s.is_prime(p) and spec.prime_admissible(p):
                return p, x
        x += 1


def exceptions(spec: FormSpec, N: int, s: PrimeSieve, workers: int = 1) -> ExceptionReport:
    """Positive n <= N that have no representation and pass the spec's n-filter."""
    table = build_table(spec, N, s, workers)
    clear = table.clear_positions(start=1)
    clear = clear[spec.n_filter.mask(clear)]
    return ExceptionReport(spec, N, clear.tolist(), N)


def _check_sets_args(m: int, a: int) -> None:
    if m <= 1:
        raise ValueError(f"m must exceed 1, got {m}")
    if a < 0:
        raise ValueError(f"a must be nonnegative, got {a}")
    if math.gcd(1 << a, m) != 1:
        raise ValueError(f"gcd(2^{a}, {m}) != 1")


def sets_table(m: int, a: int, N: int, s: PrimeSieve, workers: int = 1) -> RepTable:
    """Table of 2^a*p + m*T_x (p prime, never zero) up to N."""
    return build_table(FormSpec(c=1 << a, m=m, allow_zero_prime=False), N, s, workers)


def smar_from_table(table: RepTable, m: int, r: int, N: int) -> List[int]:
    top = m * N + r
    if table.limit < top:
        raise SieveLimitError(f"table reaches {table.limit}, need {top}")
    flags = table.flags()
    n = np.arange(1, N + 1, dtype=np.int64)
    return n[~flags[m * n + r]].tolist()


def exceptional_set_Smar(m: int, a: int, r: int, N: int, s: PrimeSieve, workers: int = 1) -> List[int]:
    """n in [1, N] for which m*n + r is never 2^a*p + m*T_x."""
    _check_sets_args(m, a)
    if r < 1:
        raise ValueError(f"r must be positive, got {r}")
    if math.gcd(r, m) != 1:
        raise ValueError(f"gcd({r}, {m}) != 1")
    top = m * N + r
    if s.limit < top >> a:
        raise SieveLimitError(f"sieve limit {s.limit} too small; need {top >> a}")
    return smar_from_table(sets_table(m, a, top, s, workers), m, r, N)


def exceptional_set_Sma(m: int, a: int, N: int, s: PrimeSieve, workers: int = 1) -> List[int]:
    """n in (m, N] coprime to m that are never 2^a*p + m*T_x."""
    _check_sets_args(m, a)
    table = sets_table(m, a, N, s, workers)
    clear = table.clear_positions(start=m + 1)
    return clear[np.gcd(clear, m) == 1].tolist()


def largest_exception(a: int, N: int, s: PrimeSieve, workers: int = 1) -> Optional[int]:
    """Largest n <= N not of the form 2^a*p + T_x (p zero or prime)."""
    table = build_table(FormSpec(c=1 << a), N, s, workers)
    clear = table.clear_positions()
    return int(clear[-1]) if clear.size else None


def _odd_prime_factors(n: int) -> List[int]:
    out = []
    p = 3
    while n % 2 == 0:
        n //= 2
    while p * p <= n:
        if n % p == 0:
            out.append(p)
            while n % p == 0:
                n //= p
        p += 2
    if n > 1:
        out.append(n)
    return out


def find_obstruction(c: int, d: int, r: int) -> Optional[Tuple[int, int]]:
    """A residue class y (mod q) that c*p + T_x can only reach with p = 0.

    q is the smallest odd prime dividing c*d; None when c*d is a power of two.
    """
    if c < 1 or d < 1:
        raise ValueError("c and d must be positive")
    odd = _odd_prime_factors(c * d)
    if not odd:
        return None
    q = odd[0]
    hit = {(c * r + t) % q for t in triangular_residues(q)}
    y = next(y for y in range(q) if y not in hit)
    return q, y


# -- mixed sums of squares and triangular numbers, by direct set addition --

MIXED_VARIANTS = (
    "two_even_squares_plus_T",
    "mult4_square_plus_even_square_plus_T",
    "two_odd_squares_plus_T_or_triangular",
    "x2_8y2_T",
    "even_square_plus_2T",
    "odd_square_plus_2T_unless_twice_triangular",
    "three_triangular",
    "three_squares",
)


def _values(N: int, f) -> np.ndarray:
    """Indicator of {f(k) : k >= 0} within [0, N] for increasing f."""
    out = np.zeros(N + 1, dtype=bool)
    k = 0
    while (v := f(k)) <= N:
        out[v] = True
        k += 1
    return out


def _sumset(A: np.ndarray, B: np.ndarray) -> np.ndarray:
    if np.count_nonzero(A) < np.count_nonzero(B):
        A, B = B, A
    N = A.size - 1
    out = np.zeros_like(A)
    for b in np.flatnonzero(B).tolist():
        out[b:] |= A[: N + 1 - b]
    return out


def _mixed_reachable(variant: str, N: int) -> np.ndarray:
    sq = _values(N, lambda k: k * k)
    even_sq = _values(N, lambda k: 4 * k * k)
    odd_sq = _values(N, lambda k: (2 * k + 1) ** 2)
    tri = _values(N, lambda k: k * (k + 1) // 2)
    if variant == "two_even_squares_plus_T":
        return _sumset(_sumset(even_sq, even_sq), tri)
    if variant == "mult4_square_plus_even_square_plus_T":
        return _sumset(_sumset(_values(N, lambda k: 16 * k * k), even_sq), tri)
    if variant == "two_odd_squares_plus_T_or_triangular":
        return _sumset(_sumset(odd_sq, odd_sq), tri) | tri
    if variant == "x2_8y2_T":
        return _sumset(_sumset(sq, _values(N, lambda k: 8 * k * k)), tri)
    if variant == "even_square_plus_2T":
        return _sumset(_sumset(even_sq, tri), tri)
    if variant == "odd_square_plus_2T_unless_twice_triangular":
        return _sumset(_sumset(odd_sq, tri), tri) | _values(N, lambda k: k * (k + 1))
    if variant == "three_triangular":
        return _sumset(_sumset(tri, tri), tri)
    if variant == "three_squares":
        return _sumset(_sumset(sq, sq), sq)
    raise ValueError(f"unknown variant {variant!r}; choose from {', '.join(MIXED_VARIANTS)}")


def mixed_check(variant: str, N: int) -> ExceptionReport:
    """Natural numbers n <= N with no representation of the given shape."""
    if variant not in MIXED_VARIANTS:
        raise ValueError(f"unknown variant {variant!r}; choose from {', '.join(MIXED_VARIANTS)}")
    if N < 0:
        raise ValueError(f"negative bound {N}")
    reach = _mixed_reachable(variant, N)
    return ExceptionReport(variant, N, np.flatnonzero(~reach).tolist(), N)


def gauss_legendre_exceptions(N: int) -> List[int]:
    """{4^k (8l + 7) <= N}, the integers that are not sums of three squares."""
    out = []
    for n in range(1, N + 1):
        v = n
        while v % 4 == 0:
            v //= 4
        if v % 8 == 7:
            out.append(n)
    return out
