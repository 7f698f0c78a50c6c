"""Bounded search for triangles with two rational medians over (theta, phi) by height.

The sides from the rational parametrization are quadratic in phi, so for a
fixed theta = t/u and phi = r/w the scaled sides u^2 w^2 (a, b, c) are integer
dot products of precomputed coefficient rows with (w^2, r w, r^2). Only the
area needs a perfect-square test; the medians are rational by construction and
are rechecked on every hit.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction

from .heron import (HeronTriangle, distinct_curves, normalized_sides, sporadic_fixtures, theta_phi_of,
                    triangle_from_sides)

MAIN = "main-sequence"
SPORADIC = "sporadic"
NEW = "new"


@dataclass(frozen=True)
class SearchHit:
    theta: Fraction
    phi: Fraction
    triangle: HeronTriangle
    classification: str


def height_ordered(max_height: int) -> list[Fraction]:
    """Reduced rationals with |num|, den <= max_height, by height then value."""
    vals = {Fraction(n, d) for d in range(1, max_height + 1) for n in range(-max_height, max_height + 1)}
    return sorted(vals, key=lambda x: (max(abs(x.numerator), x.denominator), x))


def _height(x: Fraction) -> int:
    return max(abs(x.numerator), x.denominator)


def _theta_rows(t: int, u: int):
    """Coefficients of u^2 * side in powers (1, phi, phi^2) for theta = t/u."""
    t2, u2, tu = t * t, u * u, t * u
    # a = -2 th^2 ph - th ph^2 + 2 th ph - ph^2 + th + 1
    a = (tu + u2, -2 * t2 + 2 * tu, -tu - u2)
    # b = th^2 ph + 2 th ph^2 - th^2 + 2 th ph - ph + 1
    b = (-t2 + u2, t2 + 2 * tu - u2, 2 * tu)
    # c = th^2 ph - th ph^2 + th^2 + 2 th ph + ph^2 + th - ph
    c = (t2 + tu, t2 + 2 * tu - u2, -tu + u2)
    return a, b, c


def _classifier():
    curves = {}
    for flavor in ("plain", "tilde"):
        curves.update({str(c): c for c in distinct_curves(flavor).values()})
    sporadic = {normalized_sides(*fx["triangle"].sides()) for fx in sporadic_fixtures()}

    def classify(tri: HeronTriangle) -> str:
        if normalized_sides(*tri.sides()) in sporadic:
            return SPORADIC
        mirror = HeronTriangle(tri.b, tri.a, tri.c, tri.l, tri.k, tri.area)
        for t in (tri, mirror):
            for flavor in ("plain", "tilde"):
                pt = theta_phi_of(t, flavor)
                if any(c.contains(*pt) for c in curves.values()):
                    return MAIN
        return NEW

    return classify


def run_search(max_height: int) -> list[SearchHit]:
    """All distinct triangles reachable from parameters of height <= max_height.

    Hits are listed in the order their first parameter pair is reached, pairs
    being ordered by the larger of the two heights, then theta, then phi.
    """
    if max_height < 2:
        raise ValueError("max_height must be at least 2")
    values = height_ordered(max_height)
    phis = [(x.numerator, x.denominator, x) for x in values]
    phi_monos = [(w * w, r * w, r * r) for r, w, _ in phis]
    found: dict[tuple[int, int, int], tuple[tuple[int, int], Fraction, Fraction, HeronTriangle]] = {}
    for ti, th in enumerate(values):
        A, B, C = _theta_rows(th.numerator, th.denominator)
        for pj, (m0, m1, m2) in enumerate(phi_monos):
            a = A[0] * m0 + A[1] * m1 + A[2] * m2
            b = B[0] * m0 + B[1] * m1 + B[2] * m2
            c = C[0] * m0 + C[1] * m1 + C[2] * m2
            if a < 0:
                a, b, c = -a, -b, -c
            if a <= 0 or b <= 0 or c <= 0:
                continue
            x, y, z = b + c - a, a - b + c, a + b - c
            if x <= 0 or y <= 0 or z <= 0:
                continue
            prod = (a + b + c) * x * y * z
            r = math.isqrt(prod)
            if r * r != prod:
                continue
            g = math.gcd(a, b, c)
            key = normalized_sides(a // g, b // g, c // g)
            ph = phis[pj][2]
            order = (max(_height(th), _height(ph)), ti, pj)
            if key in found and found[key][0] <= order:
                continue
            tri = triangle_from_sides(a // g, b // g, c // g)
            if tri is None or tri.check():
                raise ArithmeticError(f"parametrized triangle {(a, b, c)} failed validation")
            found[key] = (order, th, ph, tri)
    classify = _classifier()
    hits = sorted(found.values(), key=lambda v: v[0])
    return [SearchHit(th, ph, tri, classify(tri)) for _, th, ph, tri in hits]
