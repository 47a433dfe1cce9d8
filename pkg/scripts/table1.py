"""Worst case of git and golden bisect on random binary DAGs against the F(n) column.

    python3 scripts/table1.py --per-size 200 --n-max 13
"""

import argparse

from regsearch.claims import random_binary_corpus, table1_bound
from regsearch.dag import initial_state
from regsearch.strategies import PICKERS, build_strategy_tree


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--per-size", type=int, default=200)
    ap.add_argument("--n-max", type=int, default=13)
    ap.add_argument("--seed", type=int, default=0)
    args = ap.parse_args()

    print(f"{'n':>3} {'F(n)':>5} {'git':>4} {'golden':>7}")
    for n in range(1, args.n_max + 1):
        worst = dict.fromkeys(PICKERS, 0)
        for dag in random_binary_corpus(args.per_size, n, n, args.seed + n):
            st = initial_state(dag)
            for name, picker in PICKERS.items():
                worst[name] = max(worst[name], build_strategy_tree(picker, st).height)
        print(f"{n:>3} {table1_bound(n):>5} {worst['git']:>4} {worst['golden']:>7}")


if __name__ == "__main__":
    main()
