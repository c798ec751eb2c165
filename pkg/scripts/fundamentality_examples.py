"""Gegenbauer coefficients b_n of a few functions next to the zero threshold.

For exp at lambda = 1, b_n = 2 I_{n+1}(1) is positive for every n, so the
family is fundamental; but b_n decays like 1/(2^n (n+1)!) and drops under
any fixed relative threshold (and under double-precision quadrature noise)
after a dozen terms.  The column "exact" is the Bessel closed form.
"""

import argparse

from scipy import special

from dunklsphere.functions import parse_g
from dunklsphere.fundamentality import check_fundamentality


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--nmax", type=int, default=32)
    ap.add_argument("--threshold", type=float, default=1e-10)
    args = ap.parse_args()
    for name in ("exp", "abs", "runge:4", "gegenbauer:3"):
        rep = check_fundamentality(parse_g(name, 1), 1, n_max=args.nmax, zero_threshold=args.threshold)
        print(f"\ng = {name}: {rep.overall}; cut = {rep.zero_threshold * rep.scale:.3e}; witnesses {rep.witnesses}")
        if name != "exp":
            continue
        print("  n          b_n(quad)       exact 2*I_{n+1}(1)   verdict")
        for n, (b, v) in enumerate(zip(rep.coeffs, rep.verdicts)):
            print(f"  {n:2d}  {b: .6e}   {2 * special.iv(n + 1, 1.0): .6e}   {v}")


if __name__ == "__main__":
    main()
