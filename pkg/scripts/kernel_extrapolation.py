"""||k_z||^2 as Re z -> 0 next to the integral of 1/w it should approach."""
import argparse

import numpy as np

from halfplane import kernel_sup, preset


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--presets", nargs="*",
                    default=["hardy_sobolev", "hardy_sobolev_bergman", "synthetic_algebra"])
    ap.add_argument("--show", type=int, default=6, help="grid values printed per space")
    args = ap.parse_args()
    for name in args.presets:
        ks = kernel_sup(preset(name))
        print(f"{name}: extrapolated {ks.extrapolated:.12f}  direct {ks.direct:.12f}  "
              f"diff {abs(ks.extrapolated - ks.direct):.1e}")
        idx = np.linspace(0, len(ks.a_grid) - 1, args.show).astype(int)
        for i in idx:
            print(f"    a = {ks.a_grid[i]:<10.3g} ||k||^2 = {ks.values[i]:.12f}")


if __name__ == "__main__":
    main()
