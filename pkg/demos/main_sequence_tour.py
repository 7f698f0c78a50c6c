"""Walk the main sequence: Somos terms, the first triangles and where the periodic signs stop.

    python demos/main_sequence_tour.py [count]
"""

import sys

from heron_somos.heron import cycling_break, main_sequence
from heron_somos.qrt import ratio_point, sign_pattern
from heron_somos.somos import canonical_S, canonical_T


def main(count: int = 5) -> None:
    S, T = canonical_S(), canonical_T()
    print("S:", S.terms(0, 12))
    print("T:", T.terms(0, 12))

    ms = main_sequence()
    print("\nn  sides (a, b, c)  medians k, l  area")
    for n in range(1, count + 1):
        t = ms.triangle(n)
        print(n, (t.a, t.b, t.c), t.k, t.l, t.area)
        A, B = ms.schubert_signed(n)
        theta, phi = ms.theta_phi(n)
        print("   half-angle cotangents", tuple(map(str, A)), tuple(map(str, B)))
        print(f"   (theta, phi) = ({theta}, {phi})")

    # the sign of T repeats with period 14 for a long while, then drifts
    print("\nT signs 1..140:", sign_pattern("T", 1, 140))
    print("v_129 =", float(ratio_point("v", 129).value()))
    print("residue-class cycling of (theta, phi) first breaks at n =", cycling_break())


if __name__ == "__main__":
    main(int(sys.argv[1]) if len(sys.argv) > 1 else 5)
