"""For each (a, b), find how much of the 6 / 12 / M / M' factors is actually needed.

Prints the smallest factor that still makes m^3 divide factor * sum for every
m up to --m-max. Purely empirical.
"""

import argparse
from math import lcm

from padbin.mobius import divm_check, factor_M, factor_Mprime, signed_divm_check


def needed(check, a, b, m_max, refined):
    factor = 1
    for m in range(1, m_max + 1):
        rep = check(a, b, m, use_refined=refined)
        f = rep.factor // rep.spare
        factor = lcm(factor, f)
    return factor


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("--a-max", type=int, default=10)
    ap.add_argument("--m-max", type=int, default=40)
    args = ap.parse_args()

    print(" a  b |  M needed | M' needed")
    for a in range(2, args.a_max + 1):
        for b in range(1, a):
            plain = needed(divm_check, a, b, args.m_max, True)
            signed = needed(signed_divm_check, a, b, args.m_max, True)
            print(
                f"{a:2d} {b:2d} | {factor_M(a, b):2d} {plain:4d} | "
                f"{factor_Mprime(a, b):3d} {signed:4d}"
            )


if __name__ == "__main__":
    main()
