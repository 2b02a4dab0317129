"""Explicit infinite families of non-representable integers.

Odd branch: for odd m > 1 and 2r a quadratic residue mod m, the integers
n_k satisfy (8 n_k + 1) m^2 + 8r = (2x + b_k m)^2, which forces any
representation m^2 n_k + r = 2^a p + m^2 T_z into a difference-of-squares
factorization of 2^(a+3) p.  Even branch is the analogue for modulus 2m^2:
(8 n_k + 1)(m/2)^2 + r = ((m/2) b_k + x)^2.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Dict, List, Optional, Union

from .arith import crt, is_quadratic_residue, sqrt_mod_all
from .representation import FormSpec, find_witness
from .sieve import PrimeSieve, SieveLimitError


class WitnessConditionError(ValueError):
    """The hypotheses needed for the construction do not hold."""


@dataclass(frozen=True)
class WitnessOdd:
    m: int
    a: int
    r: int
    x: int
    q: int
    b: int

    @property
    def modulus(self) -> int:
        return self.m * self.m

    def invariants(self) -> Dict[str, bool]:
        m, a, x, q, b = self.m, self.a, self.x, self.q, self.b
        return {
            "x^2 = 2r (mod m)": (x * x - 2 * self.r) % m == 0,
            "2r = x^2 + m q": 2 * self.r == x * x + m * q,
            "x odd, q odd": x % 2 == 1 and q % 2 == 1,
            "b x = q (mod m)": (b * x - q) % m == 0,
            "2x + b m = -1 (mod 2^(a+1))": (2 * x + b * m + 1) % (1 << (a + 1)) == 0,
            "b odd, b >= |q|": b % 2 == 1 and b >= abs(q),
        }


@dataclass(frozen=True)
class WitnessEven:
    m: int
    alpha: int
    r: int
    x: int
    q: int
    delta: int
    b: int

    @property
    def m0(self) -> int:
        return self.m >> self.alpha

    @property
    def modulus(self) -> int:
        return 2 * self.m * self.m

    @property
    def a(self) -> int:
        return 0

    @property
    def shift(self) -> int:
        # m*delta/4; delta != 0 only when 8 | m
        return self.m // 4 * self.delta if self.delta else 0

    def invariants(self) -> Dict[str, bool]:
        m, x, q, b = self.m, self.x, self.q, self.b
        expected_delta = 0 if q % 2 else (1 if (q - m // 4) % 4 == 0 else 5)
        return {
            "x^2 = r (mod m)": (x * x - self.r) % m == 0,
            "0 < x <= m/2": 0 < x <= m // 2,
            "r = x^2 + m q": self.r == x * x + m * q,
            "delta per case table": self.delta == expected_delta and (self.delta == 0 or m % 8 == 0),
            "b x = q + (m/4) delta (1 - x) (mod 2m)": (b * x - q - self.shift * (1 - x)) % (2 * m) == 0,
            "(b + m delta/4)^2 = 1 - delta (mod 8)": ((b + self.shift) ** 2 - (1 - self.delta)) % 8 == 0,
            "b > |q|": b > abs(q),
        }


Witness = Union[WitnessOdd, WitnessEven]


def _least_at_least(residue: int, modulus: int, floor: int) -> int:
    return floor + (residue - floor) % modulus


def construct_odd(m: int, a: int, r: int) -> WitnessOdd:
    if m <= 1 or m % 2 == 0:
        raise WitnessConditionError(f"m must be an odd integer > 1, got {m}")
    if a < 0 or r < 1:
        raise WitnessConditionError(f"need a >= 0 and r >= 1, got a={a}, r={r}")
    if math.gcd(2 * r, m) != 1:
        raise WitnessConditionError(f"gcd(2r, m) = gcd({2 * r}, {m}) != 1")
    if not is_quadratic_residue(2 * r % m, m):
        raise WitnessConditionError(f"2r = {2 * r} is not a quadratic residue mod {m}")
    x = min(x0 if x0 % 2 else x0 + m for x0 in sqrt_mod_all(2 * r, m))
    q, rem = divmod(2 * r - x * x, m)
    assert rem == 0 and q % 2 == 1
    mod2 = 1 << (a + 1)
    solved = crt([
        (q * pow(x, -1, m) % m, m),
        ((-1 - 2 * x) * pow(m, -1, mod2) % mod2, mod2),
    ])
    assert solved is not None
    b = _least_at_least(solved[0], solved[1], abs(q))
    return WitnessOdd(m, a, r, x, q, b)


def terms_odd(w: WitnessOdd, k: int) -> tuple[int, int]:
    if k < 1:
        raise ValueError(f"k must be positive, got {k}")
    bk = w.b + (1 << (w.a + 1)) * k * w.m
    num1 = bk * w.x - w.q
    num2 = bk * bk - 1
    assert num1 % (2 * w.m) == 0 and num2 % 8 == 0
    return bk, num1 // (2 * w.m) + num2 // 8


def _two_adic(m: int) -> tuple[int, int]:
    alpha = (m & -m).bit_length() - 1
    return alpha, m >> alpha


def even_congruence(m: int) -> tuple[int, int]:
    """(residue, modulus) that r must satisfy for the even construction."""
    alpha, _ = _two_adic(m)
    mod = 1 << min(alpha + 1, 3)
    return ((1 << alpha) + 1) % mod, mod


def construct_even(m: int, r: int) -> WitnessEven:
    if m < 2 or m % 2:
        raise WitnessConditionError(f"m must be a positive even integer, got {m}")
    if r < 1:
        raise WitnessConditionError(f"r must be positive, got {r}")
    alpha, m0 = _two_adic(m)
    if math.gcd(r, m0) != 1 or not is_quadratic_residue(r % m0, m0):
        raise WitnessConditionError(f"r = {r} is not a quadratic residue mod m0 = {m0}")
    res, mod = even_congruence(m)
    if r % mod != res:
        raise WitnessConditionError(f"r = {r} violates r ≡ {res} (mod {mod})")
    x = min(x for x in sqrt_mod_all(r, m) if 0 < x <= m // 2)
    q, rem = divmod(r - x * x, m)
    assert rem == 0
    if q % 2:
        delta = 0
    else:
        assert m % 8 == 0, "q is odd whenever 8 does not divide m"
        delta = 1 if (q - m // 4) % 4 == 0 else 5
    shift = m // 4 * delta if delta else 0
    b0 = (q + shift * (1 - x)) * pow(x, -1, 2 * m) % (2 * m)
    b = _least_at_least(b0, 2 * m, abs(q) + 1)
    return WitnessEven(m, alpha, r, x, q, delta, b)


def terms_even(w: WitnessEven, k: int) -> tuple[int, int]:
    if k < 1:
        raise ValueError(f"k must be positive, got {k}")
    bk = w.b + w.shift + 2 * k * w.m
    num1 = bk * bk + w.delta - 1
    num2 = bk * w.x - w.q - w.shift
    assert num1 % 8 == 0 and num2 % (2 * w.m) == 0
    return bk, num1 // 8 + num2 // (2 * w.m)


def terms(w: Witness, k: int) -> tuple[int, int]:
    return terms_odd(w, k) if isinstance(w, WitnessOdd) else terms_even(w, k)


def square_identity(w: Witness, k: int) -> tuple[int, int]:
    """(lhs, root) of the family's identity lhs = root^2 at index k."""
    bk, nk = terms(w, k)
    if isinstance(w, WitnessOdd):
        return (8 * nk + 1) * w.m**2 + 8 * w.r, 2 * w.x + bk * w.m
    half = w.m // 2
    return (8 * nk + 1) * half * half + w.r, half * bk + w.x


@dataclass(frozen=True)
class FamilyRow:
    k: int
    b_k: int
    n_k: int
    lhs: int
    rhs: int
    in_S: bool
    prime: Optional[int]
    form: Optional[str]

    def as_dict(self) -> dict:
        return {
            "k": self.k, "b_k": self.b_k, "n_k": self.n_k, "lhs": self.lhs,
            "rhs": self.rhs, "in_S": self.in_S, "prime": self.prime, "form": self.form,
        }


def target(w: Witness, nk: int) -> int:
    """The integer m'*n_k + r whose representability decides membership."""
    return w.modulus * nk + w.r


def required_sieve_limit(w: Witness, k_max: int) -> int:
    _, nk = terms(w, k_max)
    return target(w, nk) >> w.a


def _classify(w: Witness, bk: int, p: int) -> str:
    if isinstance(w, WitnessOdd):
        root, pw = 2 * w.x + bk * w.m, 1 << (w.a + 1)
        if root == p + pw:
            return f"p+{pw}"
        if root == pw * p + 1:
            return f"{pw}p+1"
        return "none"
    return "b_k*m+1" if bk * w.m + 1 == p else "none"


def family_members_in_S(w: Witness, k_max: int, s: PrimeSieve) -> List[FamilyRow]:
    """Decide for k = 1..k_max whether n_k lies in the exceptional set.

    The set is S_{m^2}^{(a)}(r) for odd witnesses and S_{2m^2}(r) for even ones.
    For members outside it, the representing prime and the shape it takes
    relative to the square root of the family identity are recorded.
    """
    need = required_sieve_limit(w, k_max)
    if s.limit < need:
        raise SieveLimitError(f"sieve limit {s.limit} too small; family needs {need}")
    spec = FormSpec(c=1 << w.a, m=w.modulus, allow_zero_prime=False)
    rows = []
    for k in range(1, k_max + 1):
        bk, nk = terms(w, k)
        lhs, root = square_identity(w, k)
        found = find_witness(spec, target(w, nk), s)
        p = found[0] if found else None
        rows.append(FamilyRow(k, bk, nk, lhs, root * root, found is None, p,
                              None if p is None else _classify(w, bk, p)))
    return rows
