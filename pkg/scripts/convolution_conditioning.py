"""How the convolution theorem error grows as two rates approach each other.

The exact convolution of t^j e^{-at} and t^k e^{-bt} has coefficients of size
|a - b|^{-(j+k+1)} that cancel on evaluation; the error stays proportional to
the summed term moduli, which is the double-precision floor.
"""
import argparse
import math

import numpy as np

from halfplane import ExpPoly, convolve, laplace


def term_scale(f, z):
    return sum(abs(c) * math.factorial(k) / abs(z + a) ** (k + 1) for c, k, a in f.terms)


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--power", type=int, default=3)
    ap.add_argument("--z", type=complex, default=1.0 + 0.5j)
    args = ap.parse_args()
    print(f"{'|a-b|':<10}{'abs error':<14}{'term scale':<14}error/scale")
    for d in np.geomspace(1.0, 1e-4, 9):
        f, g = ExpPoly.exp(2.0), ExpPoly.term(1.0, args.power, 2.0 + d)
        h = convolve(f, g)
        err = abs(laplace(h)(args.z) - laplace(f)(args.z) * laplace(g)(args.z))
        s = term_scale(h, args.z)
        print(f"{d:<10.1e}{err:<14.2e}{s:<14.2e}{err / s:.1e}")


if __name__ == "__main__":
    main()
