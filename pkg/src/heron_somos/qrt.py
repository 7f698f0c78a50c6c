"""Projective-line values, biquadratic curves and the QRT maps of the Somos ratios.

The ratios

    u_n = S_{n-2} S_{n+1} / (S_{n-1} S_n),   v_n likewise with T,   f_n = S_n / T_n

are orbits of birational maps preserving biquadratic curves. Points are kept
in homogeneous coordinates so that orbits pass through infinity exactly.
"""

from __future__ import annotations

import csv
import io
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Iterator

from .exact import int_text
from .somos import canonical_S, canonical_T


def _is_field_elem(x) -> bool:
    return hasattr(x, "modulus")


@dataclass(frozen=True)
class ProjValue:
    """A point (num : den) of the projective line over Q or a prime field.

    Over Q the pair is reduced with den >= 0; over F_p finite points have den = 1.
    Infinity is (1 : 0).
    """

    num: object
    den: object

    @classmethod
    def of(cls, num, den=1) -> "ProjValue":
        if _is_field_elem(num) or _is_field_elem(den):
            one = (num if _is_field_elem(num) else den).one()
            num, den = one * num, one * den
            if not den:
                if not num:
                    raise ZeroDivisionError("indeterminate ratio 0/0")
                return cls(one, one * 0)
            return cls(num / den, one)
        if isinstance(num, Fraction) or isinstance(den, Fraction):
            if den == 0:
                if num == 0:
                    raise ZeroDivisionError("indeterminate ratio 0/0")
                return cls(1, 0)
            q = Fraction(num) / Fraction(den)
            return cls(q.numerator, q.denominator)
        num, den = int(num), int(den)
        if den == 0:
            if num == 0:
                raise ZeroDivisionError("indeterminate ratio 0/0")
            return cls(1, 0)
        q = Fraction(num, den)
        return cls(q.numerator, q.denominator)

    @classmethod
    def inf(cls) -> "ProjValue":
        return cls(1, 0)

    @property
    def is_inf(self) -> bool:
        return not self.den

    def value(self):
        """The finite value as a Fraction (or field element)."""
        if self.is_inf:
            raise ZeroDivisionError("infinite point has no finite value")
        if _is_field_elem(self.num):
            return self.num
        return Fraction(self.num, self.den)

    def __str__(self):
        if self.is_inf:
            return "inf"
        if _is_field_elem(self.num):
            return str(self.num.residue)
        return int_text(self.num) if self.den == 1 else f"{int_text(self.num)}/{int_text(self.den)}"


INF = ProjValue.inf()


def as_proj(x) -> ProjValue:
    if isinstance(x, ProjValue):
        return x
    if _is_field_elem(x):
        return ProjValue.of(x)
    return ProjValue.of(Fraction(x))


@dataclass(frozen=True)
class BiquadraticCurve:
    """The curve sum c[i][j] U^i V^j = 0 with i, j <= 2."""

    coeffs: tuple

    def __post_init__(self):
        rows = tuple(tuple(Fraction(x) for x in row) for row in self.coeffs)
        if len(rows) != 3 or any(len(r) != 3 for r in rows):
            raise ValueError("a biquadratic curve needs a 3x3 coefficient matrix")
        if not any(x for r in rows for x in r):
            raise ValueError("coefficient matrix is identically zero")
        object.__setattr__(self, "coeffs", rows)

    @classmethod
    def somos(cls, J=5) -> "BiquadraticCurve":
        """U^2 V + U V^2 - J U V + U + V + 1 = 0."""
        return cls(((1, 1, 0), (1, -Fraction(J), 1), (0, 1, 0)))

    @classmethod
    def f_curve(cls, jhat=3) -> "BiquadraticCurve":
        """(1 - W^2) Z^2 + jhat W Z + 2 W^2 + 1 = 0."""
        return cls(((1, 0, 1), (0, Fraction(jhat), 0), (2, 0, -1)))

    @property
    def symmetric(self) -> bool:
        c = self.coeffs
        return all(c[i][j] == c[j][i] for i in range(3) for j in range(3))

    def normalized(self) -> "BiquadraticCurve":
        """Scale so the first nonzero coefficient (row-major) equals 1."""
        lead = next(x for r in self.coeffs for x in r if x)
        return BiquadraticCurve(tuple(tuple(x / lead for x in r) for r in self.coeffs))

    def as_vector(self) -> list[Fraction]:
        return [x for r in self.coeffs for x in r]

    def __str__(self):
        parts = []
        for i in range(3):
            for j in range(3):
                c = self.coeffs[i][j]
                if c:
                    mono = "*".join(m for m in (("U" if i == 1 else f"U^{i}") if i else "",
                                                ("V" if j == 1 else f"V^{j}") if j else "") if m)
                    parts.append(f"{c}*{mono}" if mono else str(c))
        return " + ".join(parts) + " = 0"


def _homog(P):
    P = as_proj(P)
    return P.num, P.den


def curve_residual(curve: BiquadraticCurve, P, Q):
    """Homogeneous residual sum c[i][j] a^i b^(2-i) c^j d^(2-j) at P=(a:b), Q=(c:d)."""
    a, b = _homog(P)
    c, d = _homog(Q)
    us = (b * b, a * b, a * a)
    vs = (d * d, c * d, c * c)
    total = 0
    for i in range(3):
        for j in range(3):
            coef = curve.coeffs[i][j]
            if coef:
                total = total + coef * us[i] * vs[j]
    return total


def _fiber_coeffs(curve: BiquadraticCurve, V, transpose=False):
    """Coefficients (A, B, C) of the quadratic A x^2 + B x y + C y^2 in the free coordinate."""
    c, d = _homog(V)
    vs = (d * d, c * d, c * c)
    coeffs = curve.coeffs
    out = []
    for i in (2, 1, 0):
        acc = 0
        for j in range(3):
            coef = coeffs[j][i] if transpose else coeffs[i][j]
            if coef:
                acc = acc + coef * vs[j]
        out.append(acc)
    return out


def _other_root(A, B, C, root: ProjValue) -> ProjValue:
    """Second root of A x^2 + B x y + C y^2 given one root, by Vieta."""
    if not A and not B and not C:
        raise ValueError("degenerate fiber: line contained in curve")
    a, b = root.num, root.den
    if not b:
        return ProjValue.of(-C, B)
    if not a:
        return ProjValue.of(-B, A)
    return ProjValue.of(C * b, A * a)


def switch(curve: BiquadraticCurve, P, Q, along: str = "U"):
    """Replace one coordinate of a curve point by the other intersection with its fiber.

    ``along="U"`` keeps V=Q fixed and swaps P; ``along="V"`` keeps U=P fixed and swaps Q.
    """
    P, Q = as_proj(P), as_proj(Q)
    if along == "U":
        return _other_root(*_fiber_coeffs(curve, Q), P), Q
    return P, _other_root(*_fiber_coeffs(curve, P, transpose=True), Q)


def qrt_step(curve: BiquadraticCurve, point):
    """(P, Q) -> (Q, R) where R is the other root in U on the line V = Q."""
    if not curve.symmetric:
        raise ValueError("qrt_step expects a symmetric curve")
    P, Q = point
    R, _ = switch(curve, P, Q, "U")
    return as_proj(Q), R


def qrt_unstep(curve: BiquadraticCurve, point):
    """Inverse of qrt_step: (P, Q) -> (O, P)."""
    if not curve.symmetric:
        raise ValueError("qrt_unstep expects a symmetric curve")
    P, Q = point
    O, _ = switch(curve, Q, P, "U")
    return O, as_proj(P)


def j_from_point(P, Q) -> Fraction:
    """Pencil parameter J = u + u' + 1/u + 1/u' + 1/(u u') of a finite point."""
    u, w = as_proj(P), as_proj(Q)
    if u.is_inf or w.is_inf or not u.num or not w.num:
        raise ValueError("j_from_point needs finite nonzero coordinates")
    u, w = u.value(), w.value()
    return u + w + 1 / u + 1 / w + 1 / (u * w)


F_CURVE = BiquadraticCurve.f_curve()
SOMOS_CURVE = BiquadraticCurve.somos()


def f_step(f_prev, f_cur, n_parity: str):
    """f_{n+1} from f_{n-1} and f_n, where n_parity is the parity of n.

    f_{n+1} f_{n-1} = (1 + f_n^2)/(2 - f_n^2) for even n, (1 + 2 f_n^2)/(1 - f_n^2) for odd n.
    When the homogeneous product is 0:0 the other root of the f-curve fiber is used.
    """
    if n_parity not in ("even", "odd"):
        raise ValueError("n_parity must be 'even' or 'odd'")
    prev, cur = as_proj(f_prev), as_proj(f_cur)
    x, y = cur.num, cur.den
    if n_parity == "even":
        num, den = y * y + x * x, 2 * y * y - x * x
    else:
        num, den = y * y + 2 * x * x, y * y - x * x
    a, b = prev.num, prev.den
    top, bottom = num * b, den * a
    if top or bottom:
        return ProjValue.of(top, bottom)
    # center even: f_n = Z, neighbours are W-roots; center odd: f_n = W, neighbours are Z-roots
    if n_parity == "even":
        W, _ = switch(F_CURVE, prev, cur, "U")
        return W
    _, Z = switch(F_CURVE, cur, prev, "V")
    return Z


def f_curve_residual(W, Z):
    """Homogeneous residual of (1 - W^2) Z^2 + 3 W Z + 2 W^2 + 1."""
    return curve_residual(F_CURVE, W, Z)


@dataclass(frozen=True)
class IsogenyImage:
    xstar: Fraction
    ystar: Fraction
    quartic_residual: Fraction
    cubic_residual: Fraction


def isogeny_image(W, Z) -> IsogenyImage:
    """Image of an f-curve point on 4y^2 = 8x^3 + 5x^2 - 4x and on the quartic model."""
    W, Z = Fraction(W), Fraction(Z)
    x = W * W
    y = (1 - x) * W * Z + Fraction(3, 2) * x
    ybar = 2 * (1 - x) * Z + 3 * W
    return IsogenyImage(
        xstar=x,
        ystar=y,
        quartic_residual=ybar * ybar - (8 * x * x + 5 * x - 4),
        cubic_residual=4 * y * y - (8 * x**3 + 5 * x * x - 4 * x),
    )


def ratio_point(kind: str, n: int, S=None, T=None) -> ProjValue:
    """u_n, v_n or f_n as a projective value."""
    S = S or canonical_S()
    T = T or canonical_T()
    if kind == "u":
        return ProjValue.of(S[n - 2] * S[n + 1], S[n - 1] * S[n])
    if kind == "v":
        return ProjValue.of(T[n - 2] * T[n + 1], T[n - 1] * T[n])
    if kind == "f":
        return ProjValue.of(S[n], T[n])
    raise ValueError(f"unknown ratio kind {kind!r}; expected u, v or f")


def orbit(curve: BiquadraticCurve, start, count: int) -> Iterator[ProjValue]:
    """First coordinates of successive orbit points, starting with start[0]."""
    point = (as_proj(start[0]), as_proj(start[1]))
    for _ in range(count):
        yield point[0]
        point = qrt_step(curve, point)


def f_orbit(count: int, start=(INF, ProjValue.of(1)), first_index: int = 0) -> Iterator[ProjValue]:
    """f_n for n = first_index, first_index+1, ... generated by f_step."""
    prev, cur = as_proj(start[0]), as_proj(start[1])
    n = first_index + 1
    if count >= 1:
        yield prev
    for _ in range(count - 1):
        yield cur
        prev, cur = cur, f_step(prev, cur, "even" if n % 2 == 0 else "odd")
        n += 1


def _sign_char(x) -> str:
    if isinstance(x, ProjValue):
        if x.is_inf:
            return "∞"
        x = x.value()
    return "+" if x > 0 else "-" if x < 0 else "0"


def sign_pattern(kind: str, start: int, length: int) -> str:
    """Signs of S_n, T_n, v_n or f_n for start <= n < start + length, as '+', '-', '0', '∞'."""
    if length < 1:
        raise ValueError("length must be positive")
    if kind in ("S", "T"):
        seq = canonical_S() if kind == "S" else canonical_T()
        return "".join(_sign_char(seq.raw(n)) for n in range(start, start + length))
    if kind in ("u", "v", "f"):
        if kind == "f":
            S, T = canonical_S(), canonical_T()
            out = []
            for n in range(start, start + length):
                t = T.raw(n)
                out.append("∞" if not t else _sign_char(S.raw(n) * t))
            return "".join(out)
        seq = canonical_S() if kind == "u" else canonical_T()
        out = []
        for n in range(start, start + length):
            num = seq.raw(n - 2) * seq.raw(n + 1)
            den = seq.raw(n - 1) * seq.raw(n)
            out.append("∞" if not den else _sign_char(num * den))
        return "".join(out)
    raise ValueError(f"unknown sign-pattern kind {kind!r}")


def proj_cells(x: ProjValue) -> tuple[str, str]:
    """CSV cells (num, den) for a rational projective value; infinity is ('inf', '0')."""
    if x.is_inf:
        return "inf", "0"
    return int_text(x.num), int_text(x.den)


def orbit_rows(kind: str, count: int) -> list[list[ProjValue]]:
    """Sequence values for the exported orbits: ``uv``, ``v`` or ``f``, indexed from n = 0."""
    if kind == "uv":
        us = orbit(SOMOS_CURVE, (ratio_point("u", 0), ratio_point("u", 1)), count)
        vs = orbit(SOMOS_CURVE, (INF, INF), count)
        return [[u, v] for u, v in zip(us, vs)]
    if kind == "v":
        return [[v] for v in orbit(SOMOS_CURVE, (INF, INF), count)]
    if kind == "f":
        return [[f] for f in f_orbit(count)]
    raise ValueError(f"unknown orbit {kind!r}")


def write_orbit_csv(rows: Iterable[list[ProjValue]], names: list[str], out=None, approx: bool = False,
                    first_index: int = 0) -> str:
    """Write rows of projective values as exact CSV; returns the CSV text."""
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    header = ["n"]
    for name in names:
        header += [f"{name}_num", f"{name}_den"] + ([f"{name}_approx"] if approx else [])
    writer.writerow(header)
    for n, row in enumerate(rows, start=first_index):
        cells = [str(n)]
        for x in row:
            x = as_proj(x)
            cells += proj_cells(x)
            if approx:
                cells.append("inf" if x.is_inf else repr(float(x.value())))
        writer.writerow(cells)
    text = buf.getvalue()
    if out is not None:
        with open(out, "w", newline="") as fh:
            fh.write(text)
    return text
