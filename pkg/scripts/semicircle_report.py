"""Print a three-route semicircle-law report for the unit gaussian ensemble.

Route 1: trace moments vs Catalan numbers.  Route 2: Levy/Kolmogorov
distance of single-trial ESDs.  Route 3: averaged Stieltjes transform at i
vs the closed form, with the recursion residual.
"""
import argparse

import numpy as np

from wignerlab import (
    SemicircleLaw,
    esd,
    eigenvalues_desc,
    kolmogorov_distance,
    levy_distance,
    recursion_residual,
    sample_trial,
    semicircle_moment,
    semicircle_stieltjes,
    stieltjes_atomic,
    wigner_unit_spec,
)


def main() -> None:
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--sizes", type=int, nargs="+", default=[64, 256, 1024])
    ap.add_argument("--trials", type=int, default=10)
    ap.add_argument("--seed", type=int, default=0)
    args = ap.parse_args()

    sc = SemicircleLaw()
    print(f"unit gaussian ensemble, trials={args.trials}, seed={args.seed}\n")

    print("moment route: mean (1/n) tr W^k vs semicircle moments")
    print(f"{'n':>6} " + " ".join(f"k={k:<2}        " for k in (2, 3, 4, 5, 6)))
    for n in args.sizes:
        spec = wigner_unit_spec(n, seed=args.seed)
        eigs = [eigenvalues_desc(sample_trial(spec, t)) for t in range(args.trials)]
        cells = []
        for k in (2, 3, 4, 5, 6):
            emp = float(np.mean([np.mean(lam**k) for lam in eigs]))
            cells.append(f"{emp:7.4f}/{semicircle_moment(k)}")
        print(f"{n:>6} " + " ".join(cells))

    print("\nmetric route: trial-0 distances to the semicircle")
    print(f"{'n':>6} {'levy':>10} {'kolmogorov':>12}")
    for n in args.sizes:
        spec = wigner_unit_spec(n, seed=args.seed)
        dist = esd(eigenvalues_desc(sample_trial(spec, 0)))
        print(f"{n:>6} {levy_distance(dist, sc):>10.5f} {kolmogorov_distance(dist, sc):>12.5f}")

    print("\nstieltjes route at z = i (closed form s(i) = 0.6180i)")
    print(f"{'n':>6} {'Im s_n(i)':>11} {'|s_n - s|':>10} {'residual':>10}")
    for n in args.sizes:
        spec = wigner_unit_spec(n, seed=args.seed)
        vals = [
            stieltjes_atomic(esd(eigenvalues_desc(sample_trial(spec, t))), 1j)
            for t in range(args.trials)
        ]
        s_n = complex(np.mean(vals))
        res = recursion_residual(spec, 1j, args.trials)
        print(f"{n:>6} {s_n.imag:>11.5f} {abs(s_n - semicircle_stieltjes(1j)):>10.5f} {res:>10.5f}")


if __name__ == "__main__":
    main()
