"""Carleson ratio of |h^(k)|^2 dnu_n against kernel test functions across a z grid."""
import argparse

import numpy as np

from halfplane import CarlesonMeasureSpec, carleson_constant_estimate, preset
from halfplane.cli import parse_function


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--preset", default="dirichlet")
    ap.add_argument("--h", default="1,0,1", help="'offset; c,k,a; ...' (default 1/(z+1))")
    ap.add_argument("--n", type=int, default=1)
    ap.add_argument("--k", type=int, default=1)
    args = ap.parse_args()
    sp = preset(args.preset)
    mu = CarlesonMeasureSpec(space=sp, n=args.n, k=args.k, h=parse_function(args.h))
    xs = np.geomspace(0.05, 5, 7)
    ys = [0.0, 1.0, 3.0]
    grid = [complex(x, y) for y in ys for x in xs]
    vals = carleson_constant_estimate(mu, sp, grid, return_all=True)
    for z, v in zip(grid, vals):
        print(f"z = {z.real:<8.3g}{z.imag:+.1f}i   ratio {v:.6e}")
    print(f"lower bound for the Carleson constant: {vals.max():.6e}")


if __name__ == "__main__":
    main()
