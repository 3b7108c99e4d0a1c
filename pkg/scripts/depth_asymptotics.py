"""Depth ratio against chi-depth for random wild filtrations.

For each sampled filtration prints the point where the ratio settles into its
1 + a/r tail, and the smallest depth reaching ratio <= 1 + eps for a few eps.

    python scripts/depth_asymptotics.py --count 10 --seed 7
"""
import argparse
import random
from fractions import Fraction

from ramdepth import Ramification, invariant_a, min_depth_for_ratio
from ramdepth.depth import tail_start
from ramdepth.sampling import random_filtration

EPSILONS = (Fraction(1), Fraction(1, 10), Fraction(1, 100))


def main(argv=None):
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--count", type=int, default=10)
    ap.add_argument("--seed", type=int, default=0)
    ap.add_argument("--max-order", type=int, default=2**12)
    args = ap.parse_args(argv)

    rng = random.Random(args.seed)
    print("p  orders" + "".join(f"  r*(eps={e})" for e in EPSILONS) + "  tail_from  a")
    for _ in range(args.count):
        F = random_filtration(rng, max_order=args.max_order, kind=Ramification.WILD)
        rs = [min_depth_for_ratio(F, eps) for eps in EPSILONS]
        orders = " ".join(map(str, F.orders))
        print(f"{F.residue_char}  [{orders}]" + "".join(f"  {r}" for r in rs)
              + f"  {tail_start(F)}  {invariant_a(F)}")


if __name__ == "__main__":
    main()
