"""Worst isometry defect per preset as the quadrature tolerance tightens."""
import argparse
import time

from halfplane import QuadConfig, isometry_check, preset
from halfplane.corpus import random_exppolys


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--presets", nargs="*",
                    default=["hardy", "bergman(0)", "bergman(1)", "dirichlet", "hardy_sobolev",
                             "hardy_sobolev_bergman", "synthetic_algebra"])
    ap.add_argument("--trials", type=int, default=50)
    ap.add_argument("--seed", type=int, default=7)
    ap.add_argument("--tols", type=float, nargs="*", default=[1e-6, 1e-8, 1e-10])
    args = ap.parse_args()
    print(f"{'space':<26}" + "".join(f"rtol={t:<10.0e}" for t in args.tols) + "seconds")
    for name in args.presets:
        sp = preset(name)
        fs = random_exppolys(args.seed, args.trials, space=sp)
        row, t0 = [], time.perf_counter()
        for tol in args.tols:
            cfg = QuadConfig(rel_tol=tol)
            row.append(max(isometry_check(f, sp, cfg).value for f in fs))
        dt = time.perf_counter() - t0
        print(f"{name:<26}" + "".join(f"{v:<15.2e}" for v in row) + f"{dt:.2f}")


if __name__ == "__main__":
    main()
