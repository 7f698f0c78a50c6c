import math
from fractions import Fraction as F

import pytest

from heron_somos.heron import (LENGTH_SIGNS, MEDIAN_SIGNS, SINGULAR, BrahmaguptaParams, main_sequence,
                               schubert_from_triangle, schubert_parameters, sides_from_theta_phi, sin_psi_a,
                               sin_psi_b, sporadic_fixtures, surface_residual, theta_phi_of, triangle_from_sides)
from heron_somos.somos import canonical_S, canonical_T

MS = main_sequence()

TABLE1 = {
    1: (73, 51, 26, F(35, 2), F(97, 2), 420),
    2: (626, 875, 291, 572, F(433, 2), 55440),
    3: (28779, 13816, 15155, F(3589, 2), 21937, 23931600),
    4: (1823675, 185629, 1930456, F(2048523, 2), F(3751059, 2), 142334216640),
    5: (2442655864, 2396426547, 46263061, 1175099279, F(2488886435, 2), 2137147184560080),
}

TABLE2 = {
    1: (4, F(2, 3), F(8, 3), F(35, 6), F(84, 5), F(7, 40)),
    2: (18, F(-6, 35), F(63, 10), F(-176, 105), F(360, 77), F(32, 99)),
    3: (F(-75, 98), F(105, 176), F(800, 539), F(111, 3080), F(275, 14504), F(-147, 1850)),
    4: (F(605, 1344), F(-3080, 111), F(-363, 4736), F(-165585, 3256), F(-255189, 5312), F(36480, 70301)),
    5: (F(105413, 40), F(3256, 165585), F(780330, 581), F(9427792, 175047), F(44428157, 15618), F(4301, 6001696)),
}

TABLE6 = {
    0: (0, 1, -2, 1),
    1: (75, 2, 24, 49),
    2: (-605, 21, 270, -896),
    3: (-15059, 13720, -28875, 96),
    4: (1784251, -39424, 1969880, -146205),
    5: (-2442672736, -16872, -46246189, -2396409675),
    6: (25972376704, -6010068429, -330416266542, 362398711675),
    7: (2633103021849, -424782960455490, 812450885698024, -385034822220685),
}


def direct_signed_lengths(n):
    S, T = canonical_S(), canonical_T()
    sbar = -S[n + 3] * S[n + 4] ** 2 * T[n] ** 2 * T[n + 1]
    abar = -S[n + 2] * T[n + 1] * T[n + 2] ** 3 * T[n + 3]
    bbar = S[n + 1] * S[n + 2] ** 3 * S[n + 3] * T[n + 2]
    cbar = S[n] ** 2 * S[n + 1] * T[n + 3] * T[n + 4] ** 2
    return sbar, abar, bbar, cbar


@pytest.mark.parametrize("n", range(0, 8))
def test_signed_lengths_table(n):
    L = MS.signed_lengths(n)
    assert (L.sbar, L.abar, L.bbar, L.cbar) == TABLE6[n] == direct_signed_lengths(n)


def test_signed_medians_first_row():
    L, M = MS.signed_data(1)
    assert (M.kbar, M.lbar, M.deltabar) == (F(35, 2), F(97, 2), 420)


def test_signed_lengths_linear_and_primitive():
    for n in range(-300, 301):
        s, a, b, c = direct_signed_lengths(n)
        L = MS.signed_lengths(n)
        assert (L.sbar, L.abar, L.bbar, L.cbar) == (s, a, b, c)
        assert s == a + b + c
        assert math.gcd(a, b, c) == 1


def test_signed_lengths_reflection():
    for n in range(1, 201):
        L, R = MS.signed_lengths(n), MS.signed_lengths(-n - 4)
        assert (R.sbar, R.abar, R.bbar, R.cbar) == (L.cbar, -L.abar, -L.bbar, L.sbar)


def test_schubert_reflection():
    for n in range(1, 201):
        A, _ = MS.schubert_signed(-n - 4)
        _, B = MS.schubert_signed(n)
        assert A.M == B.P and A.P == -1 / B.M and A.X == 1 / B.X


@pytest.mark.parametrize("n", range(1, 6))
def test_schubert_table(n):
    A, B = MS.schubert_signed(n)
    assert (*A, *B) == TABLE2[n]


def test_schubert_singular_row():
    assert [str(x) for x in MS.schubert_row(0)] == ["0", "inf", "inf", "-3/2", "-2/3", "2/3"]
    for n in SINGULAR:
        with pytest.raises(ValueError, match="singular"):
            MS.schubert_signed(n)


def test_schubert_monomials_match_ratio_forms():
    for n in list(range(-60, -4)) + list(range(1, 60)):
        assert MS.schubert_signed(n) == MS.schubert_from_ratios(n)


def test_surface_residual_examples():
    assert surface_residual((4, F(2, 3), F(8, 3))) == 0
    assert surface_residual((1, 1, 1)) == 0
    assert surface_residual((2, 2, 2)) == -3
    with pytest.raises(ZeroDivisionError):
        surface_residual((0, 1, 1))


def test_surface_and_compatibility_wide_range():
    for n in range(-300, 301):
        if n in SINGULAR:
            continue
        A, B = MS.schubert_signed(n)
        assert surface_residual(A) == 0 and surface_residual(B) == 0
        assert MS.compatibility_residuals(n) == (0, 0)


def test_compatibility_ratios():
    assert MS.compatibility_ratios(1) == (F(73, 26), F(51, 26))
    r1, r2 = MS.compatibility_ratios(2)
    assert (abs(r1), abs(r2)) == (F(626, 291), F(875, 291))
    assert MS.compatibility_residuals(7) == (0, 0)


def test_positivize_examples():
    A, B, flips = MS.positivize(1)
    assert (*A, *B) == TABLE2[1] and flips == ("", "")
    A, B, _ = MS.positivize(2)
    assert A.P == F(35, 6) and B.M == F(105, 176)
    A, _, flips = MS.positivize(3)
    # M flipped to 98/75, then the whole triple inverted since 98/75 * 105/176 < 1
    assert flips[0] == "MR"
    assert A.as_tuple() == (F(75, 98), F(176, 105), F(539, 800))


def test_positivize_matches_triangle():
    for n in range(1, 101):
        A, B, _ = MS.positivize(n)
        for t in (A, B):
            assert min(t) > 0 and t.M * t.P > 1 and surface_residual(t) == 0
        tri = MS.triangle(n)
        assert A == schubert_from_triangle(tri, "k")
        assert B == schubert_from_triangle(tri, "l")
        # M from the area formula, computed independently
        a, b, c, k = tri.a, tri.b, tri.c, tri.k
        assert A.M == 4 * tri.area / (4 * b * k + a * a - 3 * b * b - c * c)


@pytest.mark.parametrize("n", range(1, 6))
def test_triangle_table(n):
    t = MS.triangle(n)
    assert (t.a, t.b, t.c, t.k, t.l, t.area) == TABLE1[n]


def test_triangle_invariants():
    for n in range(1, 61):
        t = MS.triangle(n)
        a, b, c = t.a, t.b, t.c
        s = F(a + b + c, 2)
        assert math.gcd(a, b, c) == 1
        assert 4 * t.k**2 == 2 * b * b + 2 * c * c - a * a
        assert 4 * t.l**2 == 2 * c * c + 2 * a * a - b * b
        assert t.area**2 == s * (s - a) * (s - b) * (s - c)
        assert min(s - a, s - b, s - c) > 0
        assert t.check() == []


def test_triangle_sides_are_absolute_signed_sums():
    for n in range(1, 30):
        s, a, b, c = direct_signed_lengths(n)
        t = MS.triangle(n)
        assert t.a == abs(b + c)
        assert sorted((abs(s), abs(a), abs(b), abs(c))) == sorted(
            (t.semiperimeter, t.semiperimeter - t.a, t.semiperimeter - t.b, t.semiperimeter - t.c))


def test_schubert_from_triangle_examples():
    t = triangle_from_sides(73, 51, 26)
    assert schubert_from_triangle(t, "k").as_tuple() == (4, F(2, 3), F(8, 3))
    assert schubert_from_triangle(t, "l").as_tuple() == (F(35, 6), F(84, 5), F(7, 40))
    # isosceles b = c: the two base-side parameters agree
    iso = schubert_parameters(6, 5, 5, 4, 12)
    assert iso.M == iso.P


def test_theta_phi_examples():
    assert MS.theta_phi(3) == (F(11, 21), F(3, 77))
    th, ph = F(11, 21), F(3, 77)
    assert th * th * ph - th * ph * ph + th * ph + 2 * th - 2 * ph - 1 == 0
    # direct from the n = 1 row: (c - a + 2l)/(2s), (b - c + 2k)/(2s)
    assert MS.theta_phi(1) == (F(26 - 73 + 97, 150), F(51 - 26 + 35, 150)) == (F(1, 3), F(2, 5))


def test_sides_from_theta_phi_roundtrip():
    for n in range(1, 15):
        t = MS.triangle(n)
        a, b, c = sides_from_theta_phi(*theta_phi_of(t))
        assert a * t.b == b * t.a and a * t.c == c * t.a


def test_brahmagupta_examples():
    params = MS.brahmagupta(1)
    assert (params.p, params.q, params.r) == (F(49, 13), F(588, 13), F(210, 13))
    assert (params.p**2 + params.r**2) / params.p == F(46501, 637) == 73
    assert params.reconstruct() == (73, 51, 26, 420)
    assert BrahmaguptaParams(3, 4, 6).reconstruct() == (15, 13, 14, 84)


def test_brahmagupta_reconstruction_range():
    for n in range(1, 101):
        t = MS.triangle(n)
        assert MS.brahmagupta(n).reconstruct() == (t.a, t.b, t.c, t.area)


def test_brahmagupta_identity():
    A, B = MS.schubert_signed(1)
    assert 73 * sin_psi_a(A) == 51 * sin_psi_b(B) == F(210, 13)
    for n in range(1, 201):
        assert MS.brahmagupta_identity_residual(n) == 0
    for n in range(-200, -4):
        assert MS.brahmagupta_identity_residual(n) == 0


def test_vsq_examples():
    assert MS.vsq_residuals(2) == (0, 0)
    assert MS.vsq_residuals(1) == (0, 0)
    assert MS.vsq_residuals(3) == (0, 0)
    # first identity at n = 2 from Table 5 values: v_4^2 = (875/8)/(125/56)
    f = {2: F(-1), 3: F(2), 4: F(3), 5: F(-5, 7), 6: F(11, 8)}
    lhs = (f[3] ** 2 * f[4] ** 3 + f[6]) / (f[5] * (f[2] ** 2 - f[4] * f[6]))
    assert lhs == 49


def test_vsq_range():
    for n in range(1, 201):
        assert MS.vsq_residuals(n) == (0, 0)


def test_printed_second_vsq_form_fails():
    # the form with the signs as printed does not hold; the corrected one does
    def f(n):
        return F(canonical_S()[n], canonical_T()[n])

    def v(n):
        T = canonical_T()
        return F(T[n - 2] * T[n + 1], T[n - 1] * T[n])

    for n in (1, 2, 3):
        printed = (f(n + 2) ** 3 * f(n + 3) ** 2 - f(n)) / (f(n + 1) * (f(n + 4) ** 2 + f(n) * f(n + 2)))
        corrected = (f(n + 2) ** 3 * f(n + 3) ** 2 + f(n)) / (f(n + 1) * (f(n + 4) ** 2 - f(n) * f(n + 2)))
        assert printed != v(n + 3) ** 2
        assert corrected == v(n + 3) ** 2


def _signs(values):
    return "".join("+" if x > 0 else "-" for x in values)


def test_length_and_median_signs_initial_range():
    for n in range(1, 126):
        L, M = MS.signed_data(n)
        i = (n - 1) % 14
        got = _signs((L.sbar, L.abar, L.bbar, L.cbar, M.kbar, M.lbar))
        want = "".join(LENGTH_SIGNS[k][i] for k in ("sbar", "abar", "bbar", "cbar")) + \
            "".join(MEDIAN_SIGNS[k][i] for k in ("kbar", "lbar"))
        assert got == want, n


def test_length_and_median_signs_first_departures():
    first = {}
    for n in range(1, 281):
        L, M = MS.signed_data(n)
        i = (n - 1) % 14
        values = {"sbar": L.sbar, "abar": L.abar, "bbar": L.bbar, "cbar": L.cbar, "kbar": M.kbar, "lbar": M.lbar}
        for key, x in values.items():
            table = LENGTH_SIGNS if key in LENGTH_SIGNS else MEDIAN_SIGNS
            if _signs((x,)) != table[key][i]:
                first.setdefault(key, n)
    assert first == {"kbar": 126, "abar": 127, "cbar": 127, "bbar": 128, "sbar": 129, "lbar": 130}


def test_sporadic_fixtures_are_valid():
    fixtures = sporadic_fixtures()
    assert [fx["label"] for fx in fixtures] == ["*", "**", "***", "****"]
    for fx in fixtures:
        t = fx["triangle"]
        assert t.check() == []
        for triple in (fx["A"], fx["B"]):
            assert surface_residual(triple) == 0
