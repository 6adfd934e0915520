#!/usr/bin/env python3
"""Zero-divisor scans over a handful of ring elements.

Shows the annihilator search alongside the entropy evidence: order-two
torsion produces a witness and a fractional ratio, domain elements
produce integer ratios and no witness.

Usage: python3 scripts/zero_divisor_demo.py [n_max] [radius]
"""

import sys

from entrolen.crossed_product import format_element, parse_element, trivial_cocycle
from entrolen.entropy import zero_divisor_scan
from entrolen.exact_linalg import PrimeField
from entrolen.folner import Boxes, BoxTimesZ2
from entrolen.groups import FreeAbelian, ZCrossZ2

GF3 = PrimeField(3)


def main():
    n_max = int(sys.argv[1]) if len(sys.argv) > 1 else 15
    radius = int(sys.argv[2]) if len(sys.argv) > 2 else 8
    Z, X = FreeAbelian(1), ZCrossZ2()
    cz, cx = trivial_cocycle(GF3, Z), trivial_cocycle(GF3, X)
    cases = [
        ("e + s in GF3[ZxZ2]", parse_element(GF3, X, "1*(0,0) + 1*(0,1)"), cx, BoxTimesZ2(X)),
        ("e - s in GF3[ZxZ2]", parse_element(GF3, X, "1*(0,0) + 2*(0,1)"), cx, BoxTimesZ2(X)),
        ("t - 1 in GF3[Z]", parse_element(GF3, Z, "2*(0) + 1*(1)"), cz, Boxes(Z)),
        ("1 + t + t^2 in GF3[Z]", parse_element(GF3, Z, "1*(0) + 1*(1) + 1*(2)"), cz, Boxes(Z)),
        ("unit 2 in GF3[Z]", parse_element(GF3, Z, "2*(0)"), cz, Boxes(Z)),
    ]
    for name, x, cocycle, scheme in cases:
        rep = zero_divisor_scan(x, cocycle, scheme, n_max, radius)
        witness = format_element(rep.witness) if rep.witness else "-"
        print(f"{name:24s} verdict={rep.verdict:28s} witness={witness}")
        print(
            f"{'':24s} submodule ratio={rep.submodule.estimate} "
            f"quotient ratio={rep.quotient.estimate} "
            f"integrality distance={rep.integrality}"
        )


if __name__ == "__main__":
    main()
