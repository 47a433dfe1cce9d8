"""Ratio of greedy worst case to the exact optimum on small random DAGs.

Prints one row per size with the mean and maximum ratio for each picker.
"""

import argparse
import random
import statistics

from regsearch.dag import initial_state
from regsearch.generators import gen_random_binary, gen_random_dag
from regsearch.optimal import optimal_queries
from regsearch.strategies import PICKERS, build_strategy_tree


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--count", type=int, default=50, help="graphs per size")
    ap.add_argument("--n-min", type=int, default=4)
    ap.add_argument("--n-max", type=int, default=16)
    ap.add_argument("--family", choices=("binary", "dag"), default="binary")
    ap.add_argument("--seed", type=int, default=0)
    args = ap.parse_args()

    rng = random.Random(args.seed)
    print(f"{'n':>3}  " + "  ".join(f"{name + ' mean':>11} {name + ' max':>10}" for name in PICKERS))
    for n in range(args.n_min, args.n_max + 1):
        ratios = {name: [] for name in PICKERS}
        for _ in range(args.count):
            seed = rng.randrange(1 << 30)
            dag = gen_random_binary(n, seed) if args.family == "binary" else gen_random_dag(n, seed)
            opt = optimal_queries(dag)
            for name, picker in PICKERS.items():
                ratios[name].append(build_strategy_tree(picker, initial_state(dag)).height / opt)
        cells = [f"{statistics.mean(r):>11.3f} {max(r):>10.3f}" for r in ratios.values()]
        print(f"{n:>3}  " + "  ".join(cells))


if __name__ == "__main__":
    main()
