"""Exact arithmetic helpers: factorization, square roots, valuations, kernels.

Rationals are ``fractions.Fraction`` throughout; integers are plain ``int``.
"""

from __future__ import annotations

import math
import random
from fractions import Fraction
from functools import lru_cache
from typing import Iterable, Sequence

import gmpy2

Factorization = list[tuple[int, int]]

TRIAL_LIMIT = 10**6
# Miller-Rabin with these bases is deterministic below this bound.
_MR_BASES = (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41)
_MR_DETERMINISTIC_BOUND = 3_317_044_064_679_887_385_961_981


@lru_cache(maxsize=1)
def _small_primes() -> tuple[int, ...]:
    sieve = bytearray([1]) * (TRIAL_LIMIT + 1)
    sieve[0] = sieve[1] = 0
    for i in range(2, math.isqrt(TRIAL_LIMIT) + 1):
        if sieve[i]:
            sieve[i * i :: i] = bytes(len(range(i * i, TRIAL_LIMIT + 1, i)))
    return tuple(i for i, flag in enumerate(sieve) if flag)


def is_prime(n: int) -> bool:
    """Primality test, deterministic below 3.3e24 and BPSW-backed above."""
    if n < 2:
        return False
    for p in _MR_BASES:
        if n % p == 0:
            return n == p
    d, s = n - 1, 0
    while d % 2 == 0:
        d //= 2
        s += 1
    for a in _MR_BASES:
        x = pow(a, d, n)
        if x in (1, n - 1):
            continue
        for _ in range(s - 1):
            x = x * x % n
            if x == n - 1:
                break
        else:
            return False
    if n < _MR_DETERMINISTIC_BOUND:
        return True
    return bool(gmpy2.is_strong_bpsw_prp(n))


def _pollard_brent(n: int, rng: random.Random) -> int:
    """Return a nontrivial factor of the composite odd n."""
    while True:
        y, c, m = rng.randrange(1, n), rng.randrange(1, n), 128
        g = r = q = 1
        x = ys = y
        while g == 1:
            x = y
            for _ in range(r):
                y = (y * y + c) % n
            k = 0
            while k < r and g == 1:
                ys = y
                for _ in range(min(m, r - k)):
                    y = (y * y + c) % n
                    q = q * abs(x - y) % n
                g = math.gcd(q, n)
                k += m
            r *= 2
        if g == n:
            g = 1
            while g == 1:
                ys = (ys * ys + c) % n
                g = math.gcd(abs(x - ys), n)
        if g != n:
            return g


def _split_large(n: int, rng: random.Random, out: dict[int, int]) -> None:
    if n == 1:
        return
    if is_prime(n):
        out[n] = out.get(n, 0) + 1
        return
    root = math.isqrt(n)
    if root * root == n:
        _split_large(root, rng, out)
        _split_large(root, rng, out)
        return
    d = _pollard_brent(n, rng)
    _split_large(d, rng, out)
    _split_large(n // d, rng, out)


def factorize(n: int) -> Factorization:
    """Prime factorization of |n| as an increasing list of (prime, exponent)."""
    n = abs(int(n))
    if n == 0:
        raise ValueError("zero has no factorization")
    found: dict[int, int] = {}
    for p in _small_primes():
        if p * p > n:
            break
        if n % p == 0:
            e = 0
            while n % p == 0:
                n //= p
                e += 1
            found[p] = e
    if n > 1:
        if n <= TRIAL_LIMIT**2:
            found[n] = found.get(n, 0) + 1
        else:
            _split_large(n, random.Random(n), found)
    return sorted(found.items())


def format_factorization(fac: Factorization) -> str:
    """Render as ``2^2*3*5*7``; the empty factorization renders as ``1``."""
    if not fac:
        return "1"
    return "*".join(f"{p}^{e}" if e > 1 else str(p) for p, e in fac)


def format_rational_factorization(q: Fraction) -> str:
    """Signed factorization of a nonzero rational, e.g. ``-(3*5)/(2^3*11)``."""
    q = Fraction(q)
    if q == 0:
        raise ValueError("zero has no factorization")
    sign = "-" if q < 0 else ""
    num = format_factorization(factorize(q.numerator))
    if q.denominator == 1:
        return sign + num
    den = format_factorization(factorize(q.denominator))
    wrap = lambda s: f"({s})" if "*" in s else s  # noqa: E731
    return f"{sign}{wrap(num)}/{wrap(den)}"


def int_text(n: int) -> str:
    """Decimal string of an integer of any size (no interpreter digit limit)."""
    return gmpy2.mpz(n).digits()


def int_sqrt_exact(n: int) -> int | None:
    """Return r with r*r == n if n is a perfect square, else None."""
    if n < 0:
        raise ValueError("square root of a negative integer")
    r = math.isqrt(n)
    return r if r * r == n else None


def padic_val(q, p: int) -> int:
    """Exponent of the prime p in the nonzero rational q."""
    q = Fraction(q)
    if q == 0:
        raise ValueError("valuation of zero is infinite")
    v = 0
    num, den = q.numerator, q.denominator
    while num % p == 0:
        num //= p
        v += 1
    while den % p == 0:
        den //= p
        v -= 1
    return v


def _integer_rows(rows: Sequence[Sequence]) -> list[list[int]]:
    out = []
    for row in rows:
        fracs = [Fraction(x) for x in row]
        scale = math.lcm(*(f.denominator for f in fracs)) if fracs else 1
        out.append([int(f * scale) for f in fracs])
    return out


def _primitive(row: list[int]) -> list[int]:
    g = math.gcd(*row)
    return [x // g for x in row] if g > 1 else row


def nullspace(matrix: Sequence[Sequence]) -> list[list[Fraction]]:
    """Basis of the right kernel of a rational matrix.

    Elimination is fraction-free: rows are cleared to integers, combined by
    cross-multiplication and divided by their content. The pivot in each column
    is the entry of smallest bit length. Each basis vector is scaled so its
    first nonzero entry is 1.
    """
    rows = [r for r in _integer_rows(matrix) if any(r)]
    ncols = len(matrix[0]) if len(matrix) else 0
    pivots: list[int] = []
    rank = 0
    for col in range(ncols):
        candidates = [i for i in range(rank, len(rows)) if rows[i][col]]
        if not candidates:
            continue
        best = min(candidates, key=lambda i: abs(rows[i][col]).bit_length())
        rows[rank], rows[best] = rows[best], rows[rank]
        piv = rows[rank]
        for i in range(len(rows)):
            if i != rank and rows[i][col]:
                f, g = piv[col], rows[i][col]
                rows[i] = _primitive([f * x - g * y for x, y in zip(rows[i], piv)])
        pivots.append(col)
        rank += 1
        if rank == len(rows):
            break
    free = [c for c in range(ncols) if c not in pivots]
    basis = []
    for fc in free:
        vec = [Fraction(0)] * ncols
        vec[fc] = Fraction(1)
        for r, pc in enumerate(pivots):
            vec[pc] = Fraction(-rows[r][fc], rows[r][pc])
        lead = next(x for x in vec if x)
        basis.append([x / lead for x in vec])
    return basis


def solve_linear(matrix: Sequence[Sequence], rhs: Sequence) -> list[Fraction]:
    """Solve a square nonsingular rational system exactly."""
    n = len(matrix)
    aug = [[Fraction(x) for x in row] + [Fraction(b)] for row, b in zip(matrix, rhs)]
    for col in range(n):
        piv = next((i for i in range(col, n) if aug[i][col]), None)
        if piv is None:
            raise ZeroDivisionError("singular linear system")
        aug[col], aug[piv] = aug[piv], aug[col]
        inv = 1 / aug[col][col]
        aug[col] = [x * inv for x in aug[col]]
        for i in range(n):
            if i != col and aug[i][col]:
                f = aug[i][col]
                aug[i] = [x - f * y for x, y in zip(aug[i], aug[col])]
    return [row[n] for row in aug]


def mat_vec(matrix: Sequence[Sequence], vec: Iterable) -> list[Fraction]:
    vec = list(vec)
    return [sum((Fraction(a) * b for a, b in zip(row, vec)), Fraction(0)) for row in matrix]


def determinant(matrix: Sequence[Sequence[int]]) -> int:
    """Integer determinant by Bareiss elimination."""
    m = [list(map(int, row)) for row in matrix]
    n = len(m)
    sign, prev = 1, 1
    for k in range(n - 1):
        if m[k][k] == 0:
            swap = next((i for i in range(k + 1, n) if m[i][k]), None)
            if swap is None:
                return 0
            m[k], m[swap] = m[swap], m[k]
            sign = -sign
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                m[i][j] = (m[i][j] * m[k][k] - m[i][k] * m[k][j]) // prev
        prev = m[k][k]
    return sign * m[n - 1][n - 1]


@lru_cache(maxsize=None)
def modular_primes(count: int) -> tuple[int, ...]:
    """The ``count`` largest primes below 2^61, for multimodular computations."""
    out = []
    n = (1 << 61) - 1
    while len(out) < count:
        if is_prime(n):
            out.append(n)
        n -= 2
    return tuple(out)


def kernel_mod_p(rows: Sequence[Sequence[int]], p: int) -> list[list[int]]:
    """Right-kernel basis modulo p, each vector with first nonzero entry 1."""
    m = [[x % p for x in row] for row in rows]
    ncols = len(rows[0])
    pivots = []
    rank = 0
    for col in range(ncols):
        piv = next((i for i in range(rank, len(m)) if m[i][col]), None)
        if piv is None:
            continue
        m[rank], m[piv] = m[piv], m[rank]
        inv = pow(m[rank][col], -1, p)
        m[rank] = [x * inv % p for x in m[rank]]
        for i in range(len(m)):
            if i != rank and m[i][col]:
                f = m[i][col]
                m[i] = [(x - f * y) % p for x, y in zip(m[i], m[rank])]
        pivots.append(col)
        rank += 1
    basis = []
    for fc in (c for c in range(ncols) if c not in pivots):
        vec = [0] * ncols
        vec[fc] = 1
        for r, pc in enumerate(pivots):
            vec[pc] = -m[r][fc] % p
        lead = next(x for x in vec if x)
        inv = pow(lead, -1, p)
        basis.append([x * inv % p for x in vec])
    return basis


def rational_reconstruct(a: int, m: int) -> Fraction | None:
    """The fraction r/s with |r|, s <= sqrt(m/2) and r = a*s mod m, if one exists."""
    bound = math.isqrt(m // 2)
    r0, r1, s0, s1 = m, a % m, 0, 1
    while r1 > bound:
        q = r0 // r1
        r0, r1 = r1, r0 - q * r1
        s0, s1 = s1, s0 - q * s1
    if s1 == 0 or abs(s1) > bound:
        return None
    return Fraction(r1, s1)


def crt_pair(r1: int, m1: int, r2: int, m2: int) -> tuple[int, int]:
    """Combine residues for coprime moduli."""
    t = (r2 - r1) * pow(m1, -1, m2) % m2
    return r1 + m1 * t, m1 * m2
