"""Exact modular arithmetic on Python ints.

Everything here is desk-scale: factorization is trial division and modular
square roots are found by exhaustive search.
"""
from __future__ import annotations

import math
from typing import Iterable, List, Optional, Tuple

Factorization = List[Tuple[int, int]]


def gcd(a: int, b: int) -> int:
    return math.gcd(a, b)


def mod_pow(base: int, exp: int, modulus: int) -> int:
    if modulus < 1:
        raise ValueError(f"modulus must be >= 1, got {modulus}")
    if exp < 0:
        raise ValueError("negative exponent")
    return pow(base, exp, modulus)


def factorize(n: int) -> Factorization:
    """Trial-division factorization, ascending by prime."""
    if n < 1:
        raise ValueError(f"cannot factor {n}")
    out: Factorization = []
    p = 2
    while p * p <= n:
        if n % p == 0:
            e = 0
            while n % p == 0:
                n //= p
                e += 1
            out.append((p, e))
        p += 1 if p == 2 else 2
    if n > 1:
        out.append((n, 1))
    return out


def jacobi(a: int, n: int) -> int:
    if n < 1 or n % 2 == 0:
        raise ValueError(f"Jacobi symbol needs an odd positive modulus, got {n}")
    a %= n
    result = 1
    while a:
        while a % 2 == 0:
            a //= 2
            if n % 8 in (3, 5):
                result = -result
        a, n = n, a
        if a % 4 == 3 and n % 4 == 3:
            result = -result
        a %= n
    return result if n == 1 else 0


def legendre(a: int, p: int) -> int:
    return jacobi(a, p)


def is_quadratic_residue(r: int, m: int) -> bool:
    """True iff x^2 = r (mod m) is solvable, for r coprime to m.

    Odd prime-power parts are decided by the Legendre symbol at the prime;
    the power of two needs nothing (2), r = 1 mod 4 (4), or r = 1 mod 8 (8 and up).
    """
    if m < 1:
        raise ValueError(f"modulus must be >= 1, got {m}")
    if math.gcd(r, m) != 1:
        raise ValueError(f"gcd({r}, {m}) != 1")
    for p, e in factorize(m):
        if p == 2:
            if e == 2 and r % 4 != 1:
                return False
            if e >= 3 and r % 8 != 1:
                return False
        elif jacobi(r, p) != 1:
            return False
    return True


def sqrt_mod(r: int, m: int) -> Optional[int]:
    """Smallest x in [0, m) with x^2 = r (mod m), or None."""
    if m < 1:
        raise ValueError(f"modulus must be >= 1, got {m}")
    r %= m
    for x in range(m):
        if x * x % m == r:
            return x
    return None


def sqrt_mod_all(r: int, m: int) -> List[int]:
    if m < 1:
        raise ValueError(f"modulus must be >= 1, got {m}")
    r %= m
    return [x for x in range(m) if x * x % m == r]


def inverse_mod(a: int, m: int) -> int:
    return pow(a, -1, m)


def crt(congruences: Iterable[Tuple[int, int]]) -> Optional[Tuple[int, int]]:
    """Combine (residue, modulus) pairs; moduli need not be coprime.

    Returns (x, lcm) with x the least nonnegative solution, or None when the
    system is inconsistent.
    """
    x, mod = 0, 1
    for res, m in congruences:
        if m < 1:
            raise ValueError(f"modulus must be >= 1, got {m}")
        g = math.gcd(mod, m)
        diff = res - x
        if diff % g:
            return None
        # x + mod*t = res (mod m)  =>  t = diff/g * (mod/g)^-1 (mod m/g)
        m_g = m // g
        t = (diff // g) * pow(mod // g, -1, m_g) % m_g if m_g > 1 else 0
        x += mod * t
        mod = mod * m_g
        x %= mod
    return x, mod
