"""Identity verification suites with a machine-readable report.

Each check scans its range in a fixed order and records the first failure,
so reports are deterministic whatever the number of worker threads.
"""

from __future__ import annotations

from concurrent.futures import ThreadPoolExecutor
from dataclasses import asdict, dataclass
from typing import Callable, Iterable

from .heron import MainSequence, SINGULAR, main_sequence, schubert_from_triangle, surface_residual
from .modp import orbit_period, period_record, reduce_sequence, somos_period, zero_profile
from .qrt import (F_CURVE, INF, SOMOS_CURVE, as_proj, curve_residual, f_orbit, isogeny_image, orbit,
                  ratio_point)
from .exact import is_prime
from .somos import (SYMMETRIC, ANTISYMMETRIC, S_SEEDS, T_SEEDS, SequenceCache, Somos5Spec, coprimality_scan,
                    higher_relation_residual, invariants)

SUITES = ("somos", "qrt", "heron", "modp")


@dataclass
class Check:
    name: str
    passed: bool
    checked: int
    counterexample: str | None = None


def _scan(name: str, items: Iterable, test: Callable, threads: int = 1) -> Check:
    """Run ``test(item)`` (returning None or a failure message) over items in order."""
    items = list(items)
    if threads > 1:
        with ThreadPoolExecutor(threads) as pool:
            results = list(pool.map(test, items))
    else:
        results = [test(x) for x in items]
    for item, msg in zip(items, results):
        if msg is not None:
            return Check(name, False, len(items), f"{item}: {msg}")
    return Check(name, True, len(items))


def _nonzero(msg: str, value) -> str | None:
    return None if value == 0 else f"{msg} = {value}"


# ---- somos -------------------------------------------------------------

def somos_checks(max_n: int, threads: int = 1, ms: MainSequence | None = None) -> list[Check]:
    ms = ms or main_sequence()
    S, T = ms.S, ms.T
    checks = []
    for name, X in (("S", S), ("T", T)):
        checks.append(_scan(
            f"{name} recurrence", range(-max_n, max_n + 1),
            lambda n, X=X: _nonzero("residual", X[n + 5] * X[n] - X[n + 4] * X[n + 1] - X[n + 3] * X[n + 2]),
            threads))
    # negative indices from the plain recurrence, without using the symmetry
    plain = {"S": SequenceCache(Somos5Spec(1, 1, 0, S_SEEDS)), "T": SequenceCache(Somos5Spec(1, 1, 1, T_SEEDS))}
    span = min(max_n, 60)
    checks.append(_scan("S even symmetry", range(1, span + 1),
                        lambda n: None if plain["S"][-n] == S[n] else f"S_-n = {plain['S'][-n]}"))
    checks.append(_scan("T odd symmetry", range(1, span + 1),
                        lambda n: None if plain["T"][-n] == -T[n] else f"T_-n = {plain['T'][-n]}"))

    def inv_check(X, expected):
        def test(n):
            window = [X[n + i] for i in range(5)]
            if 0 in window:
                return None
            inv = invariants(window, start=n)
            got = (inv.I, inv.J, inv.K_even, inv.K_odd)
            return None if got == expected else f"invariants {got}"
        return test

    for name, X in (("S", S), ("T", T)):
        ref = invariants([X[i] for i in range(1, 6)], start=1)
        checks.append(_scan(f"{name} invariants", range(1, max_n + 1),
                            inv_check(X, (ref.I, ref.J, ref.K_even, ref.K_odd)), threads))
    pairs = [(j, n) for j in range(1, 11) for n in range(-min(max_n, 100), min(max_n, 100) + 1)]
    for which in ("S", "T"):
        checks.append(_scan(f"higher relations ({which})", pairs,
                            lambda jn, w=which: _nonzero("residual", higher_relation_residual(*jn, w)), threads))
    for which in ("S", "T", "cross"):
        rep = coprimality_scan(which, max(max_n, 5))
        checks.append(Check(f"coprimality ({which})", rep.passed, rep.bound + 1,
                            None if rep.passed else f"{rep.failures[0]}"))
    return checks


# ---- qrt -------------------------------------------------------------------

def qrt_checks(max_n: int, threads: int = 1, ms: MainSequence | None = None) -> list[Check]:
    ms = ms or main_sequence()
    S, T = ms.S, ms.T
    checks = []
    count = max_n + 1
    u0, u1 = ratio_point("u", 0, S, T), ratio_point("u", 1, S, T)
    for name, start, kind in (("u orbit", (u0, u1), "u"), ("v orbit", (INF, INF), "v")):
        pts = list(orbit(SOMOS_CURVE, start, count + 1))
        checks.append(_scan(f"{name} matches ratios", range(count),
                            lambda n, pts=pts, kind=kind: None if pts[n] == ratio_point(kind, n, S, T)
                            else f"orbit {pts[n]} vs ratio {ratio_point(kind, n, S, T)}"))
        checks.append(_scan(f"{name} on curve", range(count),
                            lambda n, pts=pts: _nonzero("residual", curve_residual(SOMOS_CURVE, pts[n], pts[n + 1]))))
    fs = list(f_orbit(count + 1))
    checks.append(_scan("f orbit matches ratios", range(count),
                        lambda n: None if fs[n] == ratio_point("f", n, S, T) else f"orbit {fs[n]}"))

    def f_pair(n):
        W, Z = (fs[n], fs[n + 1]) if n % 2 else (fs[n + 1], fs[n])
        return _nonzero("residual", curve_residual(F_CURVE, W, Z))

    checks.append(_scan("f pairs on curve", range(count - 1), f_pair))

    def isogeny(n):
        W, Z = (fs[n], fs[n + 1]) if n % 2 else (fs[n + 1], fs[n])
        if as_proj(W).is_inf or as_proj(Z).is_inf:
            return None
        img = isogeny_image(W.value(), Z.value())
        return _nonzero("cubic residual", img.cubic_residual) or _nonzero("quartic residual", img.quartic_residual)

    checks.append(_scan("isogeny image", range(count - 1), isogeny))
    return checks


# ---- heron -------------------------------------------------------------------

def _heron_item(ms: MainSequence, n: int) -> str | None:
    """All per-n identities in a fixed order; the first failure is reported."""
    if n not in SINGULAR:
        A, B = ms.schubert_signed(n)
        for label, triple in (("A", A), ("B", B)):
            r = surface_residual(triple)
            if r:
                return f"Schubert surface residual ({label}) = {r}"
        r1, r2 = ms.compatibility_residuals(n)
        if r1 or r2:
            return f"compatibility residuals = ({r1}, {r2})"
        r = ms.brahmagupta_identity_residual(n)
        if r:
            return f"Brahmagupta identity residual = {r}"
        v1, v2 = ms.vsq_residuals(n)
        if v1 or v2:
            return f"v^2 residuals = ({v1}, {v2})"
    L = ms.signed_lengths(n)
    if L.sbar != L.abar + L.bbar + L.cbar:
        return f"linear relation off by {L.sbar - L.abar - L.bbar - L.cbar}"
    if n >= 1:
        t = ms.triangle(n)
        bad = t.check()
        if bad:
            return f"triangle invariants failed: {', '.join(bad)}"
        A, B, _ = ms.positivize(n)
        if (A, B) != (schubert_from_triangle(t, "k"), schubert_from_triangle(t, "l")):
            return "positive Schubert triples disagree with the triangle"
        p = ms.brahmagupta(n)
        if p.reconstruct() != (t.a, t.b, t.c, t.area):
            return "Brahmagupta reconstruction mismatch"
    return None


def heron_checks(max_n: int, threads: int = 1, ms: MainSequence | None = None) -> list[Check]:
    ms = ms or main_sequence()
    return [_scan("heron identities", range(-max_n, max_n + 1), lambda n: _heron_item(ms, n), threads)]


# ---- modp --------------------------------------------------------------

def _primes(lo: int, hi: int) -> list[int]:
    return [p for p in range(lo, hi) if is_prime(p)]


def modp_checks(max_n: int, prime_bound: int, threads: int = 1,
                ms: MainSequence | None = None) -> tuple[list[Check], list[dict]]:
    ms = ms or main_sequence()
    primes = _primes(2, prime_bound)
    checks = []

    def oracle(p):
        for which, X in (("S", ms.S), ("T", ms.T)):
            red = reduce_sequence(which, p, max_n)
            for n, r in enumerate(red):
                if int(r) != X[n] % p:
                    return f"{which}_{n} mod p: intrinsic {r}, exact {X[n] % p}"
        return None

    checks.append(_scan("intrinsic reduction", primes, oracle, threads))

    def periods(p):
        for which in ("S", "T"):
            brute = somos_period(which, p, "brute")
            t = orbit_period(p, which)
            if brute % t:
                return f"orbit period {t} does not divide {brute} ({which})"
            if brute > 2 * (p - 1) * t:
                return f"period {brute} exceeds 2(p-1)t ({which})"
            if p >= 5 and p != 17:
                quasi = somos_period(which, p, "quasi")
                if quasi != brute:
                    return f"quasi {quasi} != brute {brute} ({which})"
        return None

    checks.append(_scan("periods", primes, periods, threads))
    checks.append(_scan("T has zeros", primes, lambda p: None if zero_profile("T", p)[1] else "no zero"))
    records = []
    for which in ("S", "T"):
        recs = list(ThreadPoolExecutor(threads).map(lambda p: period_record(which, p), primes)) if threads > 1 \
            else [period_record(which, p) for p in primes]
        records += [{"seq": which, **r} for r in recs]
    return checks, records


def run_verify(suite: str = "all", max_n: int = 100, prime_bound: int = 50, threads: int = 1,
               ms: MainSequence | None = None) -> dict:
    """Run one suite (or all) and return a JSON-ready report."""
    if suite != "all" and suite not in SUITES:
        raise ValueError(f"unknown suite {suite!r}")
    if max_n < 1 or prime_bound < 2 or threads < 1:
        raise ValueError("bounds and thread count must be positive")
    wanted = SUITES if suite == "all" else (suite,)
    checks: list[Check] = []
    report: dict = {"suite": suite, "max_n": max_n, "prime_bound": prime_bound}
    if "somos" in wanted:
        checks += somos_checks(max_n, threads, ms)
    if "qrt" in wanted:
        checks += qrt_checks(max_n, threads, ms)
    if "heron" in wanted:
        checks += heron_checks(max_n, threads, ms)
    if "modp" in wanted:
        mod_checks, records = modp_checks(max_n, prime_bound, threads, ms)
        checks += mod_checks
        report["periods"] = records
    report["passed"] = all(c.passed for c in checks)
    report["checks"] = [asdict(c) for c in checks]
    failed = next((c for c in checks if not c.passed), None)
    report["first_failure"] = None if failed is None else {"check": failed.name, "at": failed.counterexample}
    return report
