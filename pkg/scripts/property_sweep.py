"""Sweep the operator axiom checks over capacity families and value kinds and print a verdict table."""

import argparse
import time

from choquet_bochner import cb_operator, check_axioms, is_submodular, is_supermodular
from choquet_bochner.generators import make_kind, random_capacity

FAMILIES = ["monotone", "additive", "unanimity", "concave", "convex"]
KINDS = [("scalar", 1), ("vector", 2), ("vector", 4), ("sym", 2), ("sym", 3)]


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--n", type=int, default=4)
    ap.add_argument("--samples", type=int, default=300)
    ap.add_argument("--seed", type=int, default=0)
    args = ap.parse_args()

    names = ["subadditivity", "positive_homogeneity", "comonotonic_additivity", "monotonicity"]
    print(f"{'kind':10} {'family':10} {'sub':4} {'sup':4} " + " ".join(f"{n[:12]:>12}" for n in names))
    t0 = time.perf_counter()
    for k, (kind_name, dim) in enumerate(KINDS):
        kind = make_kind(kind_name, dim)
        for j, family in enumerate(FAMILIES):
            mu = random_capacity(args.seed + 31 * k + j, args.n, kind, family)
            reps = check_axioms(cb_operator(mu), samples=args.samples, seed=args.seed)
            flags = " ".join(f"{reps[n].verdict:>12}" for n in names)
            sub = "yes" if is_submodular(mu).holds else "no"
            sup = "yes" if is_supermodular(mu).holds else "no"
            print(f"{str(kind):10} {family:10} {sub:4} {sup:4} {flags}")
    print(f"done in {time.perf_counter() - t0:.1f}s")


if __name__ == "__main__":
    main()
