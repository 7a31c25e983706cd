"""Evaluate an operator on the Urysohn functions of every subset and show where they reach the indicator."""

import argparse

from choquet_bochner import builtin_operator, cb_operator, extract_capacity, urysohn_sequence
from choquet_bochner.capacity import subset_indices
from choquet_bochner.generators import make_kind, random_capacity
from choquet_bochner.ordered_values import norm


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--operator", default="cb", help="cb (random capacity), min or max")
    ap.add_argument("--n", type=int, default=3)
    ap.add_argument("--kind", default="scalar", choices=["scalar", "vector", "sym"])
    ap.add_argument("--dim", type=int, default=2)
    ap.add_argument("--seed", type=int, default=0)
    args = ap.parse_args()

    if args.operator == "cb":
        I = cb_operator(random_capacity(args.seed, args.n, make_kind(args.kind, args.dim)))
    else:
        I = builtin_operator(args.operator, ground_size=args.n)
    mu = extract_capacity(I)
    for mask in range(1, 1 << args.n):
        res = urysohn_sequence(I, mask)
        gaps = [norm(v - mu.value(mask)) for _, v in res["sequence"]]
        trail = ", ".join(f"n={m}: {g:.3g}" for (m, _), g in zip(res["sequence"], gaps))
        print(f"K={subset_indices(mask, args.n)}  stabilizes at n={res['stabilizes_at']}  |I(u_n) - mu(K)|: {trail}")


if __name__ == "__main__":
    main()
