"""Reproduction of the published tables as rows of exact strings."""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction

from .exact import factorize, format_factorization, format_rational_factorization, int_text
from .heron import main_sequence, sporadic_fixtures
from .modp import f_orbit_mod, ratio_orbit
from .qrt import ProjValue, ratio_point

DEFAULT_MAX_N = {1: 5, 2: 5, 3: 5, 4: 5, 5: 9, 6: 7, 7: 9}


@dataclass
class Table:
    number: int
    columns: list[str]
    rows: list[list[str]]
    notes: dict = field(default_factory=dict)

    def as_dict(self) -> dict:
        return {"table": self.number, "columns": self.columns, "rows": self.rows, **self.notes}


def q(x) -> str:
    """Exact rational string: ``num/den``, integers bare, infinity as ``inf``."""
    if isinstance(x, ProjValue):
        return str(x)
    x = Fraction(x)
    return int_text(x.numerator) if x.denominator == 1 else f"{int_text(x.numerator)}/{int_text(x.denominator)}"


def _fac(x) -> str:
    if isinstance(x, ProjValue):
        if x.is_inf:
            return "inf"
        x = x.value()
    x = Fraction(x)
    if x == 0:
        return "0"
    if x.denominator == 1 and x > 0:
        return format_factorization(factorize(x.numerator))
    return format_rational_factorization(x)


# sporadic rows sit after main rows of comparable size
_SPORADIC_AFTER = (2, 2, 4, 4)


def _table1(max_n: int) -> Table:
    ms = main_sequence()
    entries = [(n, str(n), ms.triangle(n)) for n in range(1, max_n + 1)]
    for fx, after in zip(sporadic_fixtures(), _SPORADIC_AFTER):
        entries.append((after + 0.5, fx["label"], fx["triangle"]))
    entries.sort(key=lambda e: e[0])
    rows = [[label, str(t.a), str(t.b), str(t.c), q(t.k), q(t.l), str(t.area)] for _, label, t in entries]
    return Table(1, ["n", "a", "b", "c", "k", "l", "area"], rows,
                 {"sporadic": [fx["label"] for fx in sporadic_fixtures()]})


def _table2(max_n: int) -> Table:
    ms = main_sequence()
    entries = [(n, str(n), [q(x) for x in ms.schubert_row(n)]) for n in range(0, max_n + 1)]
    for fx, after in zip(sporadic_fixtures(), _SPORADIC_AFTER):
        entries.append((after + 0.5, fx["label"], [q(x) for x in (*fx["A"], *fx["B"])]))
    entries.sort(key=lambda e: e[0])
    return Table(2, ["n", "M_a", "P_a", "X_a", "M_b", "P_b", "X_b"],
                 [[label, *cells] for _, label, cells in entries],
                 {"sporadic": [fx["label"] for fx in sporadic_fixtures()]})


def _table3(max_n: int) -> Table:
    ms = main_sequence()
    rows = [[str(n), *(_fac(x) for x in ms.schubert_row(n))] for n in range(0, max_n + 1)]
    return Table(3, ["n", "M_a", "P_a", "X_a", "M_b", "P_b", "X_b"], rows)


def _table4(max_n: int) -> Table:
    # The absolute signed lengths are s, s-a, s-b, s-c up to a permutation
    # that varies with n; the table lists them in signed-length order.
    ms = main_sequence()
    rows = []
    for n in range(1, max_n + 1):
        L = ms.signed_lengths(n)
        area = ms.triangle(n).area
        rows.append([str(n), *(_fac(abs(x)) for x in (L.sbar, L.abar, L.bbar, L.cbar, area))])
    return Table(4, ["n", "|sbar|", "|abar|", "|bbar|", "|cbar|", "area"], rows)


def _table5(max_n: int) -> Table:
    rows = [[str(n), q(ratio_point("u", n)), q(ratio_point("v", n)), q(ratio_point("f", n))]
            for n in range(0, max_n + 1)]
    return Table(5, ["n", "u", "v", "f"], rows)


def _table6(max_n: int) -> Table:
    ms = main_sequence()
    rows = []
    for n in range(0, max_n + 1):
        L = ms.signed_lengths(n)
        rows.append([str(n), str(L.sbar), str(L.abar), str(L.bbar), str(L.cbar)])
    return Table(6, ["n", "sbar", "abar", "bbar", "cbar"], rows)


def _period(values: list) -> int:
    for P in range(1, len(values) // 2 + 1):
        if all(values[i] == values[i + P] for i in range(len(values) - P)):
            return P
    raise ArithmeticError("sequence shows no period within the sampled range")


def _table7(max_n: int, p: int = 17) -> Table:
    span = max(max_n + 1, 8 * p)
    us, vs, fs = ratio_orbit("S", p, span), ratio_orbit("T", p, span), f_orbit_mod(p, span)
    rows = [[str(n), str(us[n]), str(vs[n]), str(fs[n])] for n in range(0, max_n + 1)]
    periods = {"u": _period(us), "v": _period(vs), "f": _period(fs)}
    return Table(7, ["n", "u", "v", "f"], rows, {"prime": p, "periods": periods})


_BUILDERS = {1: _table1, 2: _table2, 3: _table3, 4: _table4, 5: _table5, 6: _table6, 7: _table7}


def build_table(which: int, max_n: int | None = None) -> Table:
    if which not in _BUILDERS:
        raise ValueError("table number must be between 1 and 7")
    if max_n is None:
        max_n = DEFAULT_MAX_N[which]
    if max_n < 1:
        raise ValueError("max_n must be positive")
    return _BUILDERS[which](max_n)
