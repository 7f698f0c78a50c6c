from fractions import Fraction as F

import pytest
import sympy
from hypothesis import given, settings, strategies as st

from heron_somos.modp import (BAD_PRIMES, FieldElem, f_orbit_mod, gauge_constants, lstar, orbit_period,
                              period_record, ratio_orbit, reduce_sequence, residues, somos_period, well_balanced,
                              zero_profile)
from heron_somos.qrt import ProjValue
from heron_somos.somos import canonical_S, canonical_T

SMALL_PRIMES = list(sympy.primerange(2, 100))


def exact_mod(which, p, N):
    X = canonical_S() if which == "S" else canonical_T()
    return [X[n] % p for n in range(N + 1)]


def brute_period(values):
    """Least P with values[i] == values[i + P] over the whole sampled range."""
    for P in range(1, len(values) // 2 + 1):
        if all(values[i] == values[i + P] for i in range(len(values) - P)):
            return P
    raise AssertionError("no period in range")


@settings(max_examples=200, deadline=None)
@given(st.sampled_from(SMALL_PRIMES), st.integers(-500, 500), st.integers(-500, 500))
def test_field_arithmetic(p, x, y):
    a, b = FieldElem.of(x, p), FieldElem.of(y, p)
    assert int(a + b) == (x + y) % p
    assert int(a * b) == (x * y) % p
    assert int(a - b) == (x - y) % p
    if y % p:
        assert b * b.inverse() == 1
        assert int(a / b) == x * pow(y, -1, p) % p
        assert b ** -2 == (b * b).inverse()


@pytest.mark.parametrize("p", [5, 7, 23, 61, 97])
def test_field_order_and_sqrt(p):
    for x in range(1, p):
        e = FieldElem.of(x, p)
        assert e.order() == sympy.n_order(x, p)
        roots = [r for r in range(p) if r * r % p == x]
        root = e.sqrt()
        if roots:
            assert int(root) == min(roots)
        else:
            assert root is None


def test_field_coercions():
    assert FieldElem.of(F(1, 3), 7) == 5
    assert FieldElem.of(-1, 7) == 6
    assert FieldElem.of(3, 7) == F(10, 1)
    with pytest.raises(ZeroDivisionError):
        FieldElem.of(0, 7).inverse()


def test_well_balanced_examples():
    assert all(well_balanced((1, -1, 1, 1, -7), p) for p in SMALL_PRIMES)
    assert not well_balanced((1, -1, 1, 8, 49), 2)
    assert not well_balanced((1, -1, 1, 8, 49), 7)


def test_reduce_sequence_examples():
    assert [int(x) for x in reduce_sequence("S", 2, 5)] == [1, 1, 1, 0, 1, 1]
    s2 = [int(x) for x in reduce_sequence("S", 2, 120)]
    assert [n for n, x in enumerate(s2) if x == 0] == list(range(3, 121, 6))
    t3 = [int(x) for x in reduce_sequence("T", 3, 120)]
    assert [n for n, x in enumerate(t3) if x == 0] == list(range(0, 121, 8))
    t7 = [int(x) for x in reduce_sequence("T", 7, 120)]
    assert all(t7[n] == 0 for n in range(0, 121, 5))


def test_reduction_matches_exact_then_reduce():
    for p in SMALL_PRIMES:
        for which in ("S", "T"):
            assert [int(x) for x in reduce_sequence(which, p, 500)] == exact_mod(which, p, 500), (which, p)


def test_negative_indices_reduce_too():
    S, T = canonical_S(), canonical_T()
    for p in (2, 3, 7, 23):
        assert residues("S", p, -6, 20) == [S[n] % p for n in range(-6, 20)]
        assert residues("T", p, -6, 20) == [T[n] % p for n in range(-6, 20)]


@pytest.mark.parametrize("p,t", [(2, 6), (3, 8), (17, 9), (23, 9), (61, 22)])
def test_orbit_periods(p, t):
    assert orbit_period(p, "S") == t
    assert orbit_period(p, "T") == t


def test_orbit_period_against_direct_ratios():
    for p in (5, 7, 11, 13, 29):
        us = ratio_orbit("S", p, 400)
        pairs = list(zip(us, us[1:]))
        assert brute_period(pairs) == orbit_period(p)


def test_orbit_23_pattern():
    us = ratio_orbit("S", 23, 18)
    assert [int(u.num / u.den) for u in us[0:9]] == [1, 1, 2, 13, 20, 3, 20, 13, 2]


def test_table_mod_17():
    inf = None
    u = [1, 1, 2, 10, 15, 6, 15, 10, 2, 1]
    v = [inf, inf, 0, 16, 7, 11, 7, 16, 0, inf]
    f = [inf, 1, 16, 2, 3, 9, 12, 14, 6, inf]

    def cells(xs):
        return [None if x.is_inf else int(x.num / x.den) for x in xs]

    assert cells(ratio_orbit("S", 17, 10)) == u
    assert cells(ratio_orbit("T", 17, 10)) == v
    assert cells(f_orbit_mod(17, 10)) == f
    assert brute_period(cells(f_orbit_mod(17, 200))) == 18


def test_gauge_constants_examples():
    g = gauge_constants(23, "S")
    assert (g.t, g.A_plus, g.A_minus, g.B_star, g.B_squared) == (9, 21, 15, 6, 13)
    g = gauge_constants(61, "T")
    assert (g.A_minus, g.A_plus, g.B_star) == (13, 48, 14)


@pytest.mark.parametrize("p,which", [(23, "S"), (61, "T"), (29, "S"), (97, "T")])
def test_gauge_defining_property(p, which):
    g = gauge_constants(p, which)
    X = canonical_S() if which == "S" else canonical_T()
    for n in range(2 * g.t):
        assert FieldElem.of(X[n + g.t], p) == g.ratio(n) * X[n]


def test_gauge_rejects_bad_primes():
    for p in BAD_PRIMES:
        with pytest.raises(ValueError, match="bad prime"):
            gauge_constants(p)


def test_non_residue_gauge_has_no_square_root():
    g = gauge_constants(7, "S")
    assert g.B_star is None and g.B_squared.sqrt() is None
    assert somos_period("S", 7, "quasi") == somos_period("S", 7, "brute")


def test_somos_period_examples():
    assert somos_period("S", 23) == 198 == 9 * 22
    assert somos_period("T", 61) == 132 == 22 * 6
    assert somos_period("S", 2, "brute") == 6
    assert somos_period("S", 3, "brute") == 16
    assert lstar(gauge_constants(23, "S")) == 22


def test_quasi_matches_brute_and_bounds():
    for p in sympy.primerange(2, 200):
        for which in ("S", "T"):
            brute = somos_period(which, p, "brute")
            t = orbit_period(p, which)
            assert brute % t == 0
            assert brute <= 2 * (p - 1) * t
            if p >= 5 and p != 17:
                assert somos_period(which, p, "quasi") == brute, (which, p)


def test_brute_period_against_exact_terms():
    for p in (5, 11, 23):
        for which in ("S", "T"):
            per = somos_period(which, p, "brute")
            assert brute_period(exact_mod(which, p, 3 * per)) == per


@pytest.mark.parametrize("which,p,expected", [
    ("S", 2, (6, [3])), ("T", 2, (6, [0])),
    ("S", 3, (16, [4, 12])), ("T", 3, (16, [0, 8])),
    ("T", 7, (20, [0, 5, 10, 15])),
])
def test_zero_profiles(which, p, expected):
    assert zero_profile(which, p) == expected


def test_T_always_vanishes_somewhere():
    for p in SMALL_PRIMES:
        assert zero_profile("T", p)[1]


def test_period_record_fields():
    rec = period_record("S", 23)
    assert rec == {"p": 23, "t": 9, "A_plus": 21, "A_minus": 15, "B_star": 6, "lstar": 22, "period": 198,
                   "zero_residues": [], "method": "quasi"}
    assert period_record("S", 17)["method"] == "brute"


def test_projective_values_over_fp():
    x = ProjValue.of(FieldElem.of(3, 7), FieldElem.of(0, 7))
    assert x.is_inf
