"""Residual of the reproducing-kernel identity across root systems and degrees."""

import argparse
from fractions import Fraction as F

from dunklsphere.acceptance import kernel_residuals
from dunklsphere.fundamentality import lambda_kappa
from dunklsphere.roots import dihedral, z2

SYSTEMS = {
    "Z2^2 (1/2,1/2)": z2(2, [F(1, 2), F(1, 2)]),
    "Z2^2 (1/3,2)": z2(2, [F(1, 3), 2]),
    "Z2^3 (1,1,1)": z2(3, [1, 1, 1]),
    "Z2^3 (0,0,0)": z2(3, [0, 0, 0]),
    "I2(3) 1/2": dihedral(3, [F(1, 2)]),
    "I2(4) (1/2,1)": dihedral(4, [F(1, 2), 1]),
    "I2(5) 1/3": dihedral(5, [F(1, 3)]),
    "I2(6) (1,1/3)": dihedral(6, [1, F(1, 3)]),
}


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--nmax", type=int, default=8)
    ap.add_argument("--pairs", type=int, default=200)
    ap.add_argument("--seed", type=int, default=42)
    args = ap.parse_args()
    print("system".ljust(18) + "lambda".rjust(8) + "".join(f"n={n}".rjust(10) for n in range(args.nmax + 1)))
    for name, spec in SYSTEMS.items():
        res = kernel_residuals(spec, args.nmax, args.pairs, args.seed)
        print(name.ljust(18) + str(lambda_kappa(spec)).rjust(8) + "".join(f"{r:10.1e}" for r in res))


if __name__ == "__main__":
    main()
