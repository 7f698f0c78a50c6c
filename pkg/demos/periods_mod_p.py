"""Periods of the two Somos-5 sequences modulo small primes.

For each prime the ratio orbit has period t, and the sequence itself repeats
after t times the order of the gauge multipliers.

    python demos/periods_mod_p.py [prime_bound]
"""

import sys

import sympy

from heron_somos.modp import BAD_PRIMES, gauge_constants, period_record


def main(bound: int = 60) -> None:
    print(f"{'p':>4} {'seq':>3} {'t':>4} {'period':>7}  zeros")
    for p in sympy.primerange(2, bound):
        for which in ("S", "T"):
            rec = period_record(which, p)
            zeros = rec["zero_residues"][:6]
            print(f"{p:>4} {which:>3} {rec['t']:>4} {rec['period']:>7}  {zeros}")

    g = gauge_constants(23, "S")
    print(f"\np=23: A+={g.A_plus} A-={g.A_minus} B*={g.B_star}, so S repeats after 9 * 22 = 198 terms")
    print("primes where only brute force applies:", BAD_PRIMES)


if __name__ == "__main__":
    main(int(sys.argv[1]) if len(sys.argv) > 1 else 60)
