"""Somos-5 sequences and their QRT orbits reduced modulo a prime.

Reduction is intrinsic: terms are generated in F_p directly, and when the
divisor of the recurrence vanishes the sequence is continued with the closed
form obtained from the Laurent property,

    tau_{n+10} = tau_{n+1}^-3 tau_{n+2}^-2 tau_{n+3}^3 tau_{n+4}^2 tau_n   (tau_{n+5} = 0).

Periods are found either by brute force (first repeat of an 11-term window,
which fixes the whole future) or from the QRT period t together with the
gauge constants relating S_{n+t} to S_n.
"""

from __future__ import annotations

import math
from collections import deque
from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

from sympy.ntheory import sqrt_mod

from .exact import factorize, is_prime, padic_val
from .qrt import ProjValue
from .somos import canonical_S, canonical_T

BAD_PRIMES = (2, 3, 17)
WINDOW = 11
FIRST_INDEX = -6


@dataclass(frozen=True)
class FieldElem:
    """An element of the prime field F_p."""

    residue: int
    modulus: int

    def __post_init__(self):
        object.__setattr__(self, "residue", self.residue % self.modulus)

    @classmethod
    def of(cls, x, p: int) -> "FieldElem":
        if isinstance(x, FieldElem):
            if x.modulus != p:
                raise ValueError("mixed moduli")
            return x
        x = Fraction(x)
        if x.denominator % p == 0:
            raise ZeroDivisionError(f"{x} has no reduction mod {p}")
        return cls(x.numerator * pow(x.denominator, -1, p), p)

    def one(self) -> "FieldElem":
        return FieldElem(1, self.modulus)

    def _coerce(self, other) -> "FieldElem":
        return FieldElem.of(other, self.modulus)

    def __add__(self, other):
        return FieldElem(self.residue + self._coerce(other).residue, self.modulus)

    __radd__ = __add__

    def __sub__(self, other):
        return FieldElem(self.residue - self._coerce(other).residue, self.modulus)

    def __rsub__(self, other):
        return FieldElem(self._coerce(other).residue - self.residue, self.modulus)

    def __neg__(self):
        return FieldElem(-self.residue, self.modulus)

    def __mul__(self, other):
        return FieldElem(self.residue * self._coerce(other).residue, self.modulus)

    __rmul__ = __mul__

    def inverse(self) -> "FieldElem":
        if not self.residue:
            raise ZeroDivisionError(f"0 is not invertible mod {self.modulus}")
        return FieldElem(pow(self.residue, -1, self.modulus), self.modulus)

    def __truediv__(self, other):
        return self * self._coerce(other).inverse()

    def __rtruediv__(self, other):
        return self._coerce(other) * self.inverse()

    def __pow__(self, k: int):
        if k < 0:
            return self.inverse() ** (-k)
        return FieldElem(pow(self.residue, k, self.modulus), self.modulus)

    def __bool__(self):
        return self.residue != 0

    def __int__(self):
        return self.residue

    def __eq__(self, other):
        if isinstance(other, FieldElem):
            return (self.residue, self.modulus) == (other.residue, other.modulus)
        if isinstance(other, (int, Fraction)):
            try:
                return self.residue == self._coerce(other).residue
            except ZeroDivisionError:
                return False
        return NotImplemented

    def __hash__(self):
        return hash((self.residue, self.modulus))

    def __repr__(self):
        return f"FieldElem({self.residue}, {self.modulus})"

    def __str__(self):
        return str(self.residue)

    def order(self) -> int:
        """Multiplicative order, by descending through the divisors of p - 1."""
        if not self.residue:
            raise ZeroDivisionError("0 has no multiplicative order")
        p = self.modulus
        order = p - 1
        for q, _ in factorize(p - 1) if p > 2 else []:
            while order % q == 0 and pow(self.residue, order // q, p) == 1:
                order //= q
        return order

    def sqrt(self) -> "FieldElem | None":
        """The smaller square root, or None for a non-residue."""
        roots = sqrt_mod(self.residue, self.modulus, all_roots=True)
        return FieldElem(min(roots), self.modulus) if roots else None


def _check_prime(p: int) -> None:
    if not is_prime(p):
        raise ValueError(f"{p} is not prime")


class ModSeqState:
    """Forward iteration of a Somos-5 sequence (alpha = beta = 1) over F_p.

    Keeps the last ``WINDOW`` residues as plain ints; ``index`` is the absolute
    index of the newest term.
    """

    def __init__(self, p: int, window: Sequence, last_index: int):
        if len(window) < WINDOW:
            raise ValueError(f"need at least {WINDOW} terms of history")
        self.p = p
        self.buf: deque[int] = deque((int(FieldElem.of(x, p)) for x in window[-WINDOW:]), maxlen=WINDOW)
        self.index = last_index

    def step(self) -> int:
        """Append and return the next residue."""
        p, b = self.p, self.buf
        # b[-1] = tau_m, ..., b[-10] = tau_{m-9}; the divisor of tau_{m+1} is tau_{m-4}
        if b[-5]:
            nxt = (b[-1] * b[-4] + b[-2] * b[-3]) * pow(b[-5], -1, p) % p
        else:
            # tau_{m-4} = tau_{n+5} = 0 with n = m - 9
            t0, t1, t2, t3, t4 = b[-10], b[-9], b[-8], b[-7], b[-6]
            if not (t1 and t2 and t3 and t4):
                raise ArithmeticError(f"two zeros too close together near index {self.index - 4} mod {p}")
            nxt = pow(t1, -3, p) * pow(t2, -2, p) * pow(t3, 3, p) * pow(t4, 2, p) * t0 % p
        b.append(nxt)
        self.index += 1
        return nxt


def _sequence(which: str):
    if which == "S":
        return canonical_S()
    if which == "T":
        return canonical_T()
    raise ValueError(f"unknown sequence {which!r}; expected 'S' or 'T'")


def _initial_state(which: str, p: int) -> ModSeqState:
    seq = _sequence(which)
    window = [seq[n] for n in range(FIRST_INDEX, FIRST_INDEX + WINDOW)]
    return ModSeqState(p, window, FIRST_INDEX + WINDOW - 1)


def residues(which: str, p: int, start: int, stop: int) -> list[int]:
    """Residues of the sequence for start <= n < stop (start >= -6), as ints."""
    _check_prime(p)
    if start < FIRST_INDEX:
        raise ValueError(f"start must be >= {FIRST_INDEX}")
    state = _initial_state(which, p)
    out = list(state.buf)
    while len(out) < stop - FIRST_INDEX:
        out.append(state.step())
    return out[start - FIRST_INDEX: stop - FIRST_INDEX]


def reduce_sequence(which: str, p: int, N: int) -> list[FieldElem]:
    """Terms 0..N of S or T mod p, generated intrinsically in F_p."""
    return [FieldElem(r, p) for r in residues(which, p, 0, N + 1)]


def well_balanced(init: Sequence, p: int, position: str = "last") -> bool:
    """Whether five initial values are well-balanced mod p.

    ``position`` says which end holds the distinguished value tau_*: ``"first"``
    for (tau_0, ..., tau_4), ``"last"`` for (tau_1, ..., tau_5).
    """
    _check_prime(p)
    if len(init) != 5:
        raise ValueError("need five initial values")
    vals = [Fraction(x) for x in init]
    if position == "first":
        star, units = vals[0], vals[1:]
    elif position == "last":
        star, units = vals[4], vals[:4]
    else:
        raise ValueError("position must be 'first' or 'last'")
    if star == 0:
        raise ValueError("the distinguished value must be nonzero")
    if any(u == 0 or padic_val(u, p) != 0 for u in units):
        return False
    t1, t2, t3, t4 = units
    combo = t4 * t1 + t3 * t2
    v_star = padic_val(star, p)
    v_combo = math.inf if combo == 0 else padic_val(combo, p)
    return v_combo >= v_star >= 0


def _ratio(num: int, den: int, p: int) -> ProjValue:
    return ProjValue.of(FieldElem(num, p), FieldElem(den, p))


def ratio_orbit(which: str, p: int, count: int) -> list[ProjValue]:
    """u_n (for S) or v_n (for T) mod p for n = 0..count-1."""
    r = residues(which, p, -2, count + 1)
    return [_ratio(r[k] * r[k + 3], r[k + 1] * r[k + 2], p) for k in range(count)]


def f_orbit_mod(p: int, count: int) -> list[ProjValue]:
    """f_n = S_n / T_n mod p for n = 0..count-1."""
    s, t = residues("S", p, 0, count), residues("T", p, 0, count)
    return [_ratio(a, b, p) for a, b in zip(s, t)]


def orbit_period(p: int, which: str = "S") -> int:
    """Least t > 0 with (u_t, u_{t+1}) = (u_0, u_1) over F_p (v_n when which is 'T')."""
    _check_prime(p)
    count = 64
    while True:
        us = ratio_orbit(which, p, count)
        for t in range(1, count - 1):
            if us[t] == us[0] and us[t + 1] == us[1]:
                return t
        count *= 2


@dataclass(frozen=True)
class GaugeConstants:
    """S_{n+t} = A_plus B_star^n S_n for even n, A_minus B_star^n S_n for odd n.

    B_star itself may lie outside F_p (its square is a non-residue for some
    primes); then ``B_star`` and ``A_minus`` are None, and only the F_p
    quantities ``B_squared`` and ``A_minus_B`` = A_minus * B_star are known.
    With them S_{n+t} = A_plus B_squared^(n/2) S_n for even n and
    A_minus_B B_squared^((n-1)/2) S_n for odd n.
    """

    t: int
    A_plus: FieldElem
    A_minus: FieldElem | None
    B_star: FieldElem | None
    B_squared: FieldElem
    A_minus_B: FieldElem

    def ratio(self, n: int) -> FieldElem:
        """S_{n+t} / S_n."""
        lead = self.A_plus if n % 2 == 0 else self.A_minus_B
        return lead * self.B_squared ** (n // 2)


def gauge_constants(p: int, which: str = "S") -> GaugeConstants:
    _check_prime(p)
    if p in BAD_PRIMES:
        raise ValueError(f"p={p} is a bad prime; use method='brute'")
    t = orbit_period(p, which)
    span = 2 * t + 2
    seq = residues(which, p, FIRST_INDEX, span + t)

    def term(n):
        return FieldElem(seq[n - FIRST_INDEX], p)

    def ratio(n):
        a, b = term(n), term(n + t)
        return b / a if a and b else None

    # (B*)^2 = r_{n+2} / r_n wherever both ratios are defined
    C = None
    for n in range(-2, span - 2):
        r0, r2 = ratio(n), ratio(n + 2)
        if r0 is not None and r2 is not None:
            C = r2 / r0
            break
    if C is None:
        raise ArithmeticError(f"zero pattern mod {p} blocks every ratio; use method='brute'")
    lead = {}
    for n in range(-2, span):
        r = ratio(n)
        if r is not None and n % 2 not in lead:
            lead[n % 2] = r / C ** (n // 2)
        if len(lead) == 2:
            break
    if len(lead) < 2:
        raise ArithmeticError(f"zero pattern mod {p} blocks a parity class; use method='brute'")
    B = C.sqrt()
    gauge = GaugeConstants(t, lead[0], lead[1] / B if B else None, B, C, lead[1])
    for n in range(0, 2 * t):
        if term(n + t) != gauge.ratio(n) * term(n):
            raise ArithmeticError(f"gauge relation fails at n={n} mod {p}; use method='brute'")
    return gauge


def _shift_multiplier(g: GaugeConstants, j: int, n: int) -> FieldElem:
    """S_{n+jt} / S_n implied by iterating the gauge relation j times."""
    out = g.A_plus.one()
    for i in range(j):
        out = out * g.ratio(n + i * g.t)
    return out


def lstar(g: GaugeConstants) -> int:
    """Least j with S_{n+jt} = S_n for all n.

    The j-fold multiplier at n + 2 is (B*)^(2j) times the one at n, so j works
    iff ord((B*)^2) divides j and the multipliers at n = 0, 1 are 1. Only
    multiples of that order are tried, up to the bound 2(p - 1).
    """
    step = g.B_squared.order()
    p = g.B_squared.modulus
    for j in range(step, 2 * (p - 1) + 1, step):
        if _shift_multiplier(g, j, 0) == 1 and _shift_multiplier(g, j, 1) == 1:
            return j
    raise ArithmeticError("no shift within the Fermat bound returns the sequence to itself")


def _brute_period(which: str, p: int) -> int:
    state = _initial_state(which, p)
    head = tuple(state.buf)
    # generous multiple of the bound 2(p-1) * #C(F_p)
    limit = 4 * (p - 1) * (p + 3 + 2 * math.isqrt(p)) + WINDOW
    for k in range(1, limit):
        state.step()
        if tuple(state.buf) == head:
            return k
    raise ArithmeticError(f"no period found mod {p} within {limit} terms")


def somos_period(which: str, p: int, method: str = "quasi") -> int:
    """Period of S or T mod p, from the gauge constants or by direct scan."""
    _check_prime(p)
    if method == "brute":
        return _brute_period(which, p)
    if method == "quasi":
        g = gauge_constants(p, which)
        return lstar(g) * g.t
    raise ValueError("method must be 'quasi' or 'brute'")


def zero_profile(which: str, p: int) -> tuple[int, list[int]]:
    """Period and the residues n mod period with a zero term."""
    _check_prime(p)
    period = _brute_period(which, p)
    full = residues(which, p, 0, period)
    return period, [n for n, r in enumerate(full) if r == 0]


def period_record(which: str, p: int) -> dict:
    """JSON-ready summary of the period computation for one prime."""
    period, zeros = zero_profile(which, p)
    t = orbit_period(p, which)
    rec = {"p": p, "t": t, "A_plus": None, "A_minus": None, "B_star": None,
           "lstar": period // t, "period": period, "zero_residues": zeros, "method": "brute"}
    if p not in BAD_PRIMES:
        try:
            g = gauge_constants(p, which)
        except ArithmeticError:
            return rec
        quasi = lstar(g) * g.t
        if quasi != period:
            raise ArithmeticError(f"quasi period {quasi} disagrees with direct scan {period} mod {p}")
        rec.update(A_plus=int(g.A_plus), A_minus=g.A_minus and int(g.A_minus),
                   B_star=g.B_star and int(g.B_star), lstar=lstar(g), method="quasi")
    return rec
