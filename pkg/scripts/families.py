"""Worst-case query counts on the adversarial families.

Covers the pathological graphs, J_k with and without its comb, and the
Fibonacci trees, next to the closed forms they are expected to meet.
"""

import argparse

from regsearch.claims import ceil_log2
from regsearch.dag import initial_state
from regsearch.generators import fibonacci_size, gen_comb, gen_pathological, jk_construction
from regsearch.optimal import fibonacci_strategy, log_phi_ceil
from regsearch.strategies import build_strategy_tree, git_bisect_pick, golden_bisect_pick


def git(dag):
    return build_strategy_tree(git_bisect_pick, initial_state(dag)).height


def golden(dag):
    return build_strategy_tree(golden_bisect_pick, initial_state(dag)).height


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--k-max", type=int, default=6)
    ap.add_argument("--i-max", type=int, default=12)
    args = ap.parse_args()

    print("pathological: k, n, git, golden, 2^(k-1)-1")
    for k in range(3, args.k_max + 1):
        d = gen_pathological(k)
        print(f"  {k:>2} {d.n:>4} {git(d):>4} {golden(d):>4} {2 ** (k - 1) - 1:>4}")

    print("J_k: k, n, git, git on comb, k+ceil(log2(k+1))+2")
    for k in range(1, args.k_max + 1):
        con = jk_construction(k)
        comb, _ = gen_comb(con.dag)
        print(f"  {k:>2} {con.dag.n:>4} {git(con.dag):>4} {git(comb):>4} "
              f"{k + ceil_log2(k + 1) + 2:>4}")

    print("Fibonacci: i, |F_i|, strategy height, ceil(log_phi |F_i|) - 2")
    for i in range(1, args.i_max + 1):
        size = fibonacci_size(i)
        sharp = log_phi_ceil(size) - 2 if i >= 4 else "-"
        print(f"  {i:>2} {size:>4} {fibonacci_strategy('F', i).height:>4} {sharp:>4}")


if __name__ == "__main__":
    main()
