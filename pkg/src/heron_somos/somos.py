"""Somos-5 sequences, their conserved quantities and the companion EDS.

The two sequences of interest are

    S: 1, 1, 1, 2, 3, 5, 11, 37, 83, 274, ...   (S_{-n} = S_n)
    T: 0, 1, -1, 1, 1, -7, 8, -1, -57, 391, ... (T_{-n} = -T_n)

both satisfying tau_{n+5} tau_n = alpha tau_{n+4} tau_{n+1} + beta tau_{n+3} tau_{n+2}
with alpha = beta = 1.

Terms are generated with gmpy2 integers: exact division of ~10^5-bit numbers
is quadratic in pure Python and dominates everything else at n ~ 1000.
"""

from __future__ import annotations

import math
import threading
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from typing import Sequence

import gmpy2
from gmpy2 import mpq, mpz

from .exact import determinant, solve_linear

SYMMETRIC = "symmetric"
ANTISYMMETRIC = "antisymmetric"

S_SEEDS = (1, 1, 1, 2, 3)
T_SEEDS = (1, -1, 1, 1, -7)


def _to_gmp(x):
    x = Fraction(x)
    return mpz(x.numerator) if x.denominator == 1 else mpq(x.numerator, x.denominator)


def _from_gmp(x):
    if isinstance(x, type(mpz(0))):
        return int(x)
    return Fraction(int(x.numerator), int(x.denominator))


def _divide(num, den):
    if isinstance(num, type(mpz(0))) and isinstance(den, type(mpz(0))):
        q, r = gmpy2.f_divmod(num, den)
        if not r:
            return q
    q = mpq(num) / den
    return mpz(q.numerator) if q.denominator == 1 else q


@dataclass(frozen=True)
class Somos5Spec:
    """Coefficients and five consecutive starting terms tau_origin .. tau_origin+4."""

    alpha: Fraction
    beta: Fraction
    origin: int
    init: tuple

    def __post_init__(self):
        if len(self.init) != 5:
            raise ValueError("a Somos-5 spec needs exactly five initial terms")
        object.__setattr__(self, "alpha", Fraction(self.alpha))
        object.__setattr__(self, "beta", Fraction(self.beta))
        object.__setattr__(self, "init", tuple(Fraction(x) for x in self.init))


class SequenceCache:
    """Lazily extended, bidirectional memo of a Somos-5 sequence.

    Extension is guarded by a lock, so one cache can be shared between threads.
    With ``symmetry`` set, negative indices are answered by reflection instead
    of running the recurrence backwards.
    """

    def __init__(self, spec: Somos5Spec, symmetry: str | None = None, *, name: str = ""):
        if symmetry not in (None, SYMMETRIC, ANTISYMMETRIC):
            raise ValueError(f"unknown symmetry {symmetry!r}")
        self.spec = spec
        self.symmetry = symmetry
        self.name = name
        self._alpha = _to_gmp(spec.alpha)
        self._beta = _to_gmp(spec.beta)
        self._memo: dict[int, object] = {spec.origin + i: _to_gmp(x) for i, x in enumerate(spec.init)}
        if symmetry == ANTISYMMETRIC:
            self._memo[0] = mpz(0)
        self._lo = min(self._memo)
        self._hi = max(self._memo)
        self._lock = threading.RLock()
        self._preset = symmetry is not None

    def __repr__(self):
        label = self.name or "Somos5"
        return f"<SequenceCache {label} [{self._lo}, {self._hi}]>"

    def _bypass_allowed(self) -> bool:
        if self.spec.alpha != 1 or self.spec.beta != 1:
            return False
        try:
            inv = invariants(self.spec.init, self.spec.alpha, self.spec.beta)
        except ZeroDivisionError:
            return False
        return inv.J == 5

    def _forward(self, m: int):
        memo = self._memo
        d = memo[m - 5]
        if d:
            return _divide(self._alpha * memo[m - 1] * memo[m - 4] + self._beta * memo[m - 2] * memo[m - 3], d)
        # Somos-7 relation: tau_{m} tau_{m-7} = -tau_{m-2} tau_{m-5} + 7 tau_{m-3} tau_{m-4}
        far = memo.get(m - 7)
        if far and self._bypass_allowed():
            return _divide(-memo[m - 2] * memo[m - 5] + 7 * memo[m - 3] * memo[m - 4], far)
        raise ZeroDivisionError(f"singular continuation at index {m}")

    def _backward(self, m: int):
        memo = self._memo
        d = memo[m + 5]
        if d:
            return _divide(self._alpha * memo[m + 4] * memo[m + 1] + self._beta * memo[m + 3] * memo[m + 2], d)
        far = memo.get(m + 7)
        if far and self._bypass_allowed():
            return _divide(-memo[m + 5] * memo[m + 2] + 7 * memo[m + 4] * memo[m + 3], far)
        raise ZeroDivisionError(f"singular continuation at index {m}")

    def _raw(self, n: int):
        if self.symmetry is not None and n < 0:
            v = self._raw(-n)
            return -v if self.symmetry == ANTISYMMETRIC else v
        memo = self._memo
        if n in memo:
            return memo[n]
        with self._lock:
            while self._hi < n:
                self._memo[self._hi + 1] = self._forward(self._hi + 1)
                self._hi += 1
            while self._lo > n:
                self._memo[self._lo - 1] = self._backward(self._lo - 1)
                self._lo -= 1
        return memo[n]

    def __getitem__(self, n: int):
        return _from_gmp(self._raw(n))

    def term(self, n: int):
        return self[n]

    def terms(self, start: int, stop: int) -> list:
        """Terms with start <= n < stop."""
        return [self[n] for n in range(start, stop)]

    def raw(self, n: int):
        """The gmpy2 value of a term, for callers doing heavy arithmetic."""
        return self._raw(n)

    def corrupted(self, index: int, value, upto: int) -> "SequenceCache":
        """Copy with every term up to ``upto`` precomputed and one term replaced.

        Used for fault injection: later terms are not recomputed from the bad value.
        """
        self._raw(upto)
        if self.symmetry is None:
            self._raw(-upto)
        clone = SequenceCache(self.spec, self.symmetry, name=f"{self.name}*")
        with self._lock:
            clone._memo = dict(self._memo)
            clone._lo, clone._hi = self._lo, self._hi
        key = abs(index) if self.symmetry is not None else index
        value = _to_gmp(value)
        if self.symmetry == ANTISYMMETRIC and index < 0:
            value = -value
        clone._memo[key] = value
        return clone


@lru_cache(maxsize=None)
def canonical_S() -> SequenceCache:
    """The symmetric integer sequence with S_0..S_4 = 1, 1, 1, 2, 3."""
    return SequenceCache(Somos5Spec(1, 1, 0, S_SEEDS), SYMMETRIC, name="S")


@lru_cache(maxsize=None)
def canonical_T() -> SequenceCache:
    """The antisymmetric integer sequence with T_1..T_5 = 1, -1, 1, 1, -7."""
    return SequenceCache(Somos5Spec(1, 1, 1, T_SEEDS), ANTISYMMETRIC, name="T")


def sequence(which: str) -> SequenceCache:
    if which == "S":
        return canonical_S()
    if which == "T":
        return canonical_T()
    raise ValueError(f"unknown sequence {which!r}; expected 'S' or 'T'")


def term(cache: SequenceCache, n: int):
    return cache[n]


@dataclass(frozen=True)
class InvariantSet:
    I: Fraction
    J: Fraction
    K_even: Fraction
    K_odd: Fraction


def invariants(window: Sequence, alpha=1, beta=1, start: int = 0) -> InvariantSet:
    """Conserved quantities of a Somos-5 sequence from five consecutive terms.

    ``start`` is the index of the first term; it only decides which of the two
    values of the period-2 invariant K is reported as even and which as odd.
    """
    t0, t1, t2, t3, t4 = (Fraction(x) for x in window)
    if 0 in (t0, t1, t2, t3, t4):
        raise ZeroDivisionError("invariants need five nonzero terms")
    alpha, beta = Fraction(alpha), Fraction(beta)
    I = (t0 * t4 / (t1 * t3)
         + alpha * (t1**2 / (t0 * t2) + t2**2 / (t1 * t3) + t3**2 / (t2 * t4))
         + beta * t1 * t3 / (t0 * t4))
    J = (t0 * t3 / (t1 * t2) + t1 * t4 / (t2 * t3)
         + alpha * (t1 * t2 / (t0 * t3) + t2 * t3 / (t1 * t4))
         + beta * t2**2 / (t0 * t4))
    k_here = (t0 * t4 + alpha * t2**2) / (t1 * t3)
    k_next = alpha * (t1**2 / (t0 * t2) + t3**2 / (t2 * t4)) + beta * t1 * t3 / (t0 * t4)
    if start % 2:
        k_here, k_next = k_next, k_here
    return InvariantSet(I, J, k_here, k_next)


@dataclass(frozen=True)
class QuarticRingElem:
    """Element c0 + c1 mu + c2 mu^2 + c3 mu^3 of Q[mu]/(mu^4 - m)."""

    coeffs: tuple
    m: Fraction

    def __post_init__(self):
        object.__setattr__(self, "coeffs", tuple(Fraction(c) for c in self.coeffs))
        object.__setattr__(self, "m", Fraction(self.m))
        if len(self.coeffs) != 4:
            raise ValueError("quartic ring elements have four coefficients")

    @classmethod
    def scalar(cls, x, m) -> "QuarticRingElem":
        return cls((x, 0, 0, 0), m)

    @classmethod
    def generator(cls, m) -> "QuarticRingElem":
        return cls((0, 1, 0, 0), m)

    def _coerce(self, other) -> "QuarticRingElem":
        if isinstance(other, QuarticRingElem):
            if other.m != self.m:
                raise ValueError("mismatched quartic rings")
            return other
        return QuarticRingElem.scalar(other, self.m)

    def __add__(self, other):
        other = self._coerce(other)
        return QuarticRingElem(tuple(a + b for a, b in zip(self.coeffs, other.coeffs)), self.m)

    __radd__ = __add__

    def __neg__(self):
        return QuarticRingElem(tuple(-a for a in self.coeffs), self.m)

    def __sub__(self, other):
        return self + (-self._coerce(other))

    def __rsub__(self, other):
        return self._coerce(other) - self

    def __mul__(self, other):
        other = self._coerce(other)
        prod = [Fraction(0)] * 7
        for i, a in enumerate(self.coeffs):
            if a:
                for j, b in enumerate(other.coeffs):
                    prod[i + j] += a * b
        return QuarticRingElem(tuple(prod[i] + self.m * prod[i + 4] if i < 3 else prod[i] for i in range(4)), self.m)

    __rmul__ = __mul__

    def _matrix(self) -> list[list[Fraction]]:
        # column j holds the coefficients of self * mu^j
        cols = []
        basis = QuarticRingElem.generator(self.m)
        power = QuarticRingElem.scalar(1, self.m)
        for _ in range(4):
            cols.append((self * power).coeffs)
            power = power * basis
        return [[cols[j][i] for j in range(4)] for i in range(4)]

    def inverse(self) -> "QuarticRingElem":
        try:
            sol = solve_linear(self._matrix(), (1, 0, 0, 0))
        except ZeroDivisionError:
            raise ZeroDivisionError(f"{self} is not invertible") from None
        return QuarticRingElem(tuple(sol), self.m)

    def __truediv__(self, other):
        return self * self._coerce(other).inverse()

    def __rtruediv__(self, other):
        return self._coerce(other) * self.inverse()

    def __pow__(self, k: int):
        out = QuarticRingElem.scalar(1, self.m)
        for _ in range(k):
            out = out * self
        return out

    def __eq__(self, other):
        if isinstance(other, QuarticRingElem):
            return self.m == other.m and self.coeffs == other.coeffs
        try:
            return self.coeffs == self._coerce(other).coeffs
        except (TypeError, ValueError):
            return NotImplemented

    def __hash__(self):
        return hash((self.coeffs, self.m))

    def __str__(self):
        terms = [f"{c}" + ("" if i == 0 else "*mu" if i == 1 else f"*mu^{i}")
                 for i, c in enumerate(self.coeffs) if c]
        return " + ".join(terms) or "0"


def companion_eds(alpha, beta, J, N: int) -> list[QuarticRingElem]:
    """First N terms a_0.. of the companion elliptic divisibility sequence.

    a_0..a_4 = 0, 1, -mu, alpha, mu*beta and a_{n+4} a_n = mu^2 a_{n+3} a_{n+1} - alpha a_{n+2}^2,
    in the ring where mu^4 = beta + alpha*J.
    """
    alpha, beta, J = Fraction(alpha), Fraction(beta), Fraction(J)
    m = beta + alpha * J
    if m == 0:
        raise ValueError("beta + alpha*J must be nonzero")
    mu = QuarticRingElem.generator(m)
    mu2 = mu * mu
    seq = [mu * 0, mu**0, -mu, mu**0 * alpha, mu * beta]
    while len(seq) < N:
        n = len(seq) - 4
        seq.append((mu2 * seq[n + 3] * seq[n + 1] - alpha * seq[n + 2] * seq[n + 2]) / seq[n])
    return seq[:N]


def higher_relation_residual(j: int, n: int, which: str = "S") -> int:
    """LHS - RHS of T1 T2 X_{n+2j+1} X_n = T_j T_{j+1} X_{n+j+2} X_{n+j-1} - T_{j-1} T_{j+2} X_{n+j+1} X_{n+j}.

    ``which`` selects X = S or X = T; the coefficients always come from T.
    """
    T = canonical_T()
    X = sequence(which)
    lhs = T[1] * T[2] * X[n + 2 * j + 1] * X[n]
    rhs = T[j] * T[j + 1] * X[n + j + 2] * X[n + j - 1] - T[j - 1] * T[j + 2] * X[n + j + 1] * X[n + j]
    return lhs - rhs


def minor_determinant(variant: str, n: int, rows: Sequence[int], cols: Sequence[int]) -> int:
    """3x3 minor of the matrix with entries X_{n+2i+j} T_{-2i+j}, X = S ("ST") or T ("TT")."""
    if variant not in ("ST", "TT"):
        raise ValueError(f"unknown variant {variant!r}; expected 'ST' or 'TT'")
    if len(set(rows)) != len(rows) or len(set(cols)) != len(cols):
        raise ValueError("rows and columns must be distinct")
    X = sequence(variant[0])
    T = canonical_T()
    entries = [[X[n + 2 * i + j] * T[-2 * i + j] for j in cols] for i in rows]
    return determinant(entries)


@dataclass
class CoprimalityReport:
    which: str
    bound: int
    failures: list = field(default_factory=list)
    diagnostics: list = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return not self.failures


def coprimality_scan(which: str, N: int) -> CoprimalityReport:
    """Check pairwise coprimality of nearby terms up to index N.

    For ``S`` and ``T``: every pair at distance < 5 must be coprime; pairs at
    distance exactly 5 with a common factor are recorded as diagnostics.
    For ``cross``: gcd(S_n, T_n) = 1 for 0 <= n <= N.
    """
    if N < 5:
        raise ValueError("bound must be at least 5")
    report = CoprimalityReport(which, N)
    if which == "cross":
        S, T = canonical_S(), canonical_T()
        for n in range(N + 1):
            g = math.gcd(S[n], T[n])
            if g != 1:
                report.failures.append((n, n, g))
        return report
    X = sequence(which)
    for i in range(N + 1):
        for j in range(i + 1, min(i + 5, N) + 1):
            g = int(gmpy2.gcd(X.raw(i), X.raw(j)))
            if g == 1:
                continue
            if j - i < 5:
                report.failures.append((i, j, g))
            else:
                report.diagnostics.append((i, j, g))
    return report
