"""Exit criteria.  Every comparison is exact; each prints a PASS/FAIL line in the
terminal summary (see conftest)."""
import math
import random
import time

import pytest

from primetri import fixtures
from primetri.qseries import conj12_check
from primetri.representation import (
    FormSpec,
    NFilter,
    XDomain,
    build_table,
    exceptional_set_Sma,
    exceptions,
    gauss_legendre_exceptions,
    largest_exception,
    mixed_check,
    sets_table,
    smar_from_table,
)
from primetri.sieve import build_sieve
from primetri.triangular import covers_mod_power_of_two, lemma21_check
from primetri.witness import (
    construct_even,
    construct_odd,
    family_members_in_S,
    required_sieve_limit,
    square_identity,
)
from oracles import prime_set, representable

acceptance = pytest.mark.acceptance

ODD_PARAMS = [(3, 0, 2), (3, 0, 5), (3, 1, 2), (3, 2, 2), (5, 0, 2), (5, 0, 3), (5, 1, 3),
              (7, 0, 1), (7, 0, 4), (9, 0, 2), (15, 0, 8)]
EVEN_PARAMS = [(2, 3), (2, 7), (4, 5), (4, 13), (6, 7), (6, 19), (8, 1), (8, 17),
               (10, 11), (10, 19), (12, 13)]
MOD8_THRESHOLDS = {1: 1004160, 3: 1142625, 5: 779646, 7: 893250}


class Timer:
    def __enter__(self):
        self.start = time.perf_counter()
        return self

    def __exit__(self, *exc):
        self.seconds = time.perf_counter() - self.start


@acceptance(1, "p + T_x misses only 216; odd p, x > 0 misses {2,5,7,61,211,216} (n <= 10^6)")
def test_criterion_1_base_form():
    with Timer() as t:
        s = build_sieve(10**6)
        base = exceptions(FormSpec(), 10**6, s).exceptions
        odd_pos = exceptions(FormSpec(r=1, d=2, x_domain=XDomain.POSITIVE), 10**6, s).exceptions
    assert base == fixtures.load("conj1_1_base") == [216]
    assert odd_pos == fixtures.load("conj1_1_odd_positive") == [2, 5, 7, 61, 211, 216]
    assert t.seconds < 10


@acceptance(2, "printed lists for p = 1, 3 (mod 4) and 2p + T_x; mod-8 thresholds N_r to 2*10^6")
def test_criterion_2_golden_lists():
    with Timer() as t:
        s = build_sieve(2 * 10**6)
        assert exceptions(FormSpec(r=1, d=4), 88956, s).exceptions == fixtures.load("conj3_1_r1mod4")
        assert exceptions(FormSpec(r=3, d=4), 90441, s).exceptions == fixtures.load("conj3_1_r3mod4")
        assert exceptions(FormSpec(c=2), 43473, s).exceptions == fixtures.load("conj3_2")
        for r, threshold in MOD8_THRESHOLDS.items():
            found = exceptions(FormSpec(r=r, d=8), 2 * 10**6, s).exceptions
            assert found[-1] == threshold, (r, found[-3:])
    assert t.seconds < 120


@acceptance(3, "f(0) = 216, f(1) = 43473, f(2) = 849591")
def test_criterion_3_f_values():
    with Timer() as t:
        s = build_sieve(3 * 10**6)
        assert largest_exception(0, 10**5, s) == 216
        assert largest_exception(1, 10**5, s) == 43473
        assert largest_exception(2, 3 * 10**6, s) == 849591
    assert t.seconds < 60


@acceptance(4, "fifteen exceptional sets S_m, S_3^(1), S_m(r) at scan bound 10^6")
def test_criterion_4_exceptional_sets(sieve_big):
    N = 10**6
    with Timer() as t:
        for m in (3, 4, 10, 15, 18, 24, 36, 48, 60):
            assert exceptional_set_Sma(m, 0, N, sieve_big) == fixtures.load(f"sets_S{m}"), m
        assert exceptional_set_Sma(3, 1, N, sieve_big) == fixtures.load("sets_S3_a1")
        for m, residues in ((8, (1, 5)), (9, (1, 4, 7))):
            table = sets_table(m, 0, m * N + m, sieve_big)
            for r in residues:
                assert smar_from_table(table, m, r, N) == fixtures.load(f"sets_S{m}_r{r}"), (m, r)
    assert t.seconds < 300


@acceptance(5, "sums of squares and T: direct search and theta coefficients agree at 10^4")
def test_criterion_5_dual_path():
    N = 10**4
    with Timer() as t:
        theta = conj12_check(N)
        search = {name: mixed_check(name, N).exceptions for name in theta}
    assert theta == search
    assert theta["two_even_squares_plus_T"] == fixtures.load("conj1_2_i")
    assert max(theta["two_even_squares_plus_T"]) == 864
    assert max(theta["mult4_square_plus_even_square_plus_T"]) == 2577
    assert theta["two_odd_squares_plus_T_or_triangular"] == fixtures.load("conj1_2_ii")
    assert max(theta["two_odd_squares_plus_T_or_triangular"]) == 1029
    assert t.seconds < 10


@acceptance(6, "witness families: identities for k <= 100, a member of S for some k <= 50")
def test_criterion_6_witnesses():
    witnesses = [construct_odd(*p) for p in ODD_PARAMS] + [construct_even(*p) for p in EVEN_PARAMS]
    assert len(ODD_PARAMS) >= 10 and len(EVEN_PARAMS) >= 10
    assert (3, 0, 2) in ODD_PARAMS and (8, 1) in EVEN_PARAMS
    with Timer() as t:
        for w in witnesses:
            for k in range(1, 101):
                lhs, root = square_identity(w, k)
                assert lhs == root * root, (w, k)
        s = build_sieve(max(required_sieve_limit(w, 50) for w in witnesses))
        for w in witnesses:
            rows = family_members_in_S(w, 50, s)
            assert any(row.in_S for row in rows), w
    assert t.seconds < 30


@acceptance(7, "property suites: triangular residues, engine vs brute force, union, three squares")
def test_criterion_7_properties():
    with Timer() as t:
        small = build_sieve(10**4)
        for p in small.primes.tolist()[1:]:
            assert lemma21_check(p, small)[1], p
        for a in range(17):
            assert covers_mod_power_of_two(a), a

        N = 5000
        primes = prime_set(N)
        rng = random.Random(20080409)
        for _ in range(8):
            spec = FormSpec(c=rng.choice([1, 2, 4]), m=rng.choice([1, 2, 3]), r=rng.randrange(8),
                            d=rng.choice([1, 4, 8]), allow_zero_prime=rng.random() < 0.5,
                            x_domain=rng.choice(list(XDomain)))
            flags = build_table(spec, N, small).flags()
            positive = spec.x_domain is XDomain.POSITIVE
            for n in range(N + 1):
                assert flags[n] == representable(n, spec.c, spec.m, spec.r, spec.d,
                                                 spec.allow_zero_prime, positive, primes), (spec, n)

        s = build_sieve(9 * 2000 + 9)
        for m in (3, 8, 9):
            whole = exceptional_set_Sma(m, 0, m * 2000, s)
            table = sets_table(m, 0, m * 2000 + m, s)
            parts = {r + m * n for r in range(1, m + 1) if math.gcd(r, m) == 1
                     for n in smar_from_table(table, m, r, 2000)}
            assert whole == sorted(v for v in parts if m < v <= m * 2000), m

        assert mixed_check("three_triangular", 10**4).exceptions == []
        assert mixed_check("three_squares", 10**5).exceptions == gauss_legendre_exceptions(10**5)
    assert t.seconds < 60


@acceptance(8, "odd n = p + x(x+1), p = 1 or 3 (mod 4): the 30 and 15 printed exceptions")
def test_criterion_8_pronic_lists():
    s = build_sieve(10**5)
    odd = NFilter(odd_only=True, greater_than=1)
    with Timer() as t:
        one = exceptions(FormSpec(m=2, r=1, d=4, allow_zero_prime=False, n_filter=odd), 10**5, s).exceptions
        three = exceptions(FormSpec(m=2, r=3, d=4, allow_zero_prime=False, n_filter=odd), 10**5, s).exceptions
    assert one == fixtures.load("conj3_4_r1mod4") and len(one) == 30
    assert three == fixtures.load("conj3_4_r3mod4") and len(three) == 15
    assert all(n % 3 == 0 for n in fixtures.load("conj3_4_r1mod4") + fixtures.load("conj3_4_r3mod4"))
    assert t.seconds < 10


# -- optional long runs --

@pytest.mark.extended
@acceptance("3x", "4p + T_x with p = 1, 3 (mod 4): thresholds 7718511 and 6276705 (scan to 3*10^7)")
def test_extended_four_p_thresholds():
    N = 3 * 10**7
    s = build_sieve(N // 4)
    assert exceptions(FormSpec(c=4, r=1, d=4), N, s).exceptions[-1] == 7718511
    assert exceptions(FormSpec(c=4, r=3, d=4), N, s).exceptions[-1] == 6276705


@pytest.mark.extended
@acceptance("1x", "odd p, x > 0: no exceptions beyond 216 up to 1.7*10^7")
def test_extended_odd_positive_to_17_million():
    N = 17 * 10**6
    s = build_sieve(N)
    spec = FormSpec(r=1, d=2, x_domain=XDomain.POSITIVE)
    assert exceptions(spec, N, s).exceptions == [2, 5, 7, 61, 211, 216]
