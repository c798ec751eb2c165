"""Sup-norm error of Cesaro means S_N^delta g against N for a few test functions.

For a polynomial g the error does not decay faster than ~ m*delta/N, m its
degree, because the Cesaro weights A_{N-m}/A_N fall short of 1 by that much.
"""

import argparse

from dunklsphere.functions import gegenbauer_function, parse_g, polynomial
from dunklsphere.gegenbauer import CesaroParams, expand, sup_abs, uniform_error


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--lambda", dest="lam", type=float, default=1.0)
    ap.add_argument("--delta", type=float, default=2.0)
    ap.add_argument("--N", default="8,16,32,64,128,256,512")
    args = ap.parse_args()
    Ns = [int(n) for n in args.N.split(",")]
    cases = [
        ("|t|", parse_g("abs")),
        ("exp", parse_g("exp")),
        ("runge:25", parse_g("runge:25")),
        ("t^8", polynomial([0] * 8 + [1])),
        ("C_8", gegenbauer_function(8, args.lam)),
    ]
    print(f"lambda={args.lam} delta={args.delta}  (relative sup error)")
    print("g".ljust(10) + "".join(f"N={n}".rjust(12) for n in Ns) + "   8*delta/N at max N")
    for name, g in cases:
        series = expand(g, args.lam, max(Ns))
        s = sup_abs(g)
        errs = [uniform_error(g, series, CesaroParams(args.delta, n)) / s for n in Ns]
        print(name.ljust(10) + "".join(f"{e:12.3e}" for e in errs) + f"   {8 * args.delta / Ns[-1]:.3e}")


if __name__ == "__main__":
    main()
