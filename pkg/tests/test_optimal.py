from decimal import Decimal, getcontext

import pytest
from hypothesis import given, settings

from regsearch.dag import Dag, DagError
from regsearch.generators import (gen_claw, gen_comb, gen_comb_even_tweak, gen_fibonacci,
                                  gen_fibonacci_prime, gen_octopus, gen_path, gen_random_binary)
from regsearch.optimal import (SolverCapExceeded, brute_force_optimal, comb_strategy,
                               crsp_optimal_queries, crsp_optimal_strategy, fibonacci_strategy,
                               log_phi_ceil, optimal_queries, optimal_strategy, optimum_bounds)
from regsearch.reduction import CrspInstance
from regsearch.strategies import build_strategy_tree, git_bisect_pick
from regsearch.dag import initial_state
from regsearch.tree import NO_FAULT, leaves, verify_crsp_tree, verify_tree

from conftest import binary_dags, dags


class TestOptimalQueries:
    @pytest.mark.parametrize("dag, expected", [
        (gen_path(5), 3),
        (gen_octopus(6), 5),
        (gen_claw(), 3),
        (gen_fibonacci(5), 4),
        (gen_comb(gen_octopus(7))[0], 4),
        (gen_path(1), 0),
        (gen_path(16), 4),
    ])
    def test_examples(self, dag, expected):
        assert optimal_queries(dag) == expected

    @pytest.mark.parametrize("dag, height", [(gen_path(4), 2), (gen_claw(), 3),
                                             (gen_fibonacci(4), 3)])
    def test_strategy(self, dag, height):
        tree = optimal_strategy(dag)
        assert tree.height == height
        assert verify_tree(tree, dag)

    def test_cap(self):
        with pytest.raises(SolverCapExceeded):
            optimal_queries(gen_path(30))
        assert optimal_queries(gen_path(30), cap=32) == 5

    def test_entry_cap(self):
        with pytest.raises(SolverCapExceeded):
            optimal_queries(gen_octopus(12), max_entries=10)

    def test_queries_outside_candidates(self):
        # octopus of 5 plus two non-candidates grouping the sink's parents
        dag = Dag(7, ((0, 4), (1, 4), (2, 4), (3, 4), (0, 5), (1, 5), (0, 6), (2, 6)), 4)
        assert optimal_queries(dag) == 3
        assert optimal_queries(gen_octopus(5)) == 4
        tree = optimal_strategy(dag)
        assert verify_tree(tree, dag) and tree.vertex in (5, 6)

    @settings(max_examples=60, deadline=None)
    @given(dags(max_n=9))
    def test_matches_brute_force(self, dag):
        assert optimal_queries(dag) == brute_force_optimal(dag)

    @settings(max_examples=60, deadline=None)
    @given(dags(max_n=16))
    def test_between_log2_and_n_minus_1(self, dag):
        lo, hi = optimum_bounds(dag.n)
        opt = optimal_queries(dag)
        assert lo <= opt <= hi
        tree = optimal_strategy(dag)
        assert tree.height == opt and verify_tree(tree, dag)

    @settings(max_examples=60, deadline=None)
    @given(binary_dags(max_n=20))
    def test_binary_refinement(self, dag):
        assert optimal_queries(dag) <= log_phi_ceil(dag.n)

    @settings(max_examples=30, deadline=None)
    @given(binary_dags(max_n=20, min_n=2))
    def test_not_worse_than_git(self, dag):
        git = build_strategy_tree(git_bisect_pick, initial_state(dag)).height
        assert optimal_queries(dag) <= git


class TestCrsp:
    def test_isolated_suspect(self):
        assert crsp_optimal_queries(CrspInstance(Dag(2, ()), frozenset({1}), 0)) == 1

    def test_all_innocent(self):
        inst = CrspInstance(gen_path(4), frozenset(range(4)), 0)
        assert crsp_optimal_queries(inst) == 0
        assert crsp_optimal_strategy(inst) == NO_FAULT

    def test_strategy_has_no_fault_leaf(self):
        inst = CrspInstance(gen_claw(), frozenset({3}), 2)
        tree = crsp_optimal_strategy(inst)
        assert verify_crsp_tree(tree, inst.dag, inst.innocent)
        assert leaves(tree).count(None) == 1
        assert tree.height == crsp_optimal_queries(inst)

    def test_cap(self):
        with pytest.raises(SolverCapExceeded):
            crsp_optimal_queries(CrspInstance(gen_path(30), frozenset(), 0))


class TestComb:
    @pytest.mark.parametrize("base, height", [(gen_path(3), 3), (gen_octopus(7), 4), (gen_path(1), 1)])
    def test_examples(self, base, height):
        comb, lab = gen_comb(base)
        tree = comb_strategy(comb, lab)
        assert tree.height == height
        assert verify_tree(tree, comb)
        assert optimal_queries(comb) == height

    @settings(max_examples=40, deadline=None)
    @given(dags(max_n=40))
    def test_meets_lower_bound(self, base):
        comb, lab = gen_comb(base)
        tree = comb_strategy(comb, lab)
        assert tree.height == (2 * base.n - 1).bit_length()
        assert verify_tree(tree, comb)

    def test_rejects_other_graphs(self):
        comb, lab = gen_comb(gen_path(3))
        with pytest.raises(DagError):
            comb_strategy(gen_path(6), lab)

    @pytest.mark.parametrize("n", [2, 4, 6, 8])
    def test_even_tweak(self, n):
        base = gen_octopus(n)
        x = build_strategy_tree(git_bisect_pick, initial_state(base)).height
        tweak = gen_comb_even_tweak(base)
        assert build_strategy_tree(git_bisect_pick, initial_state(tweak)).height == x + 1
        # ceil(log2(2n) + 1) = ceil(log2(2n)) + 1
        assert optimal_queries(tweak) <= (2 * n - 1).bit_length() + 1

    @pytest.mark.parametrize("n", [2, 4, 6, 8, 10])
    def test_even_tweak_paths(self, n):
        tweak = gen_comb_even_tweak(gen_path(n))
        assert optimal_queries(tweak) <= (2 * n - 1).bit_length() + 1


class TestFibonacci:
    @pytest.mark.parametrize("i, height", [(2, 1), (6, 5), (1, 0)])
    def test_heights(self, i, height):
        tree = fibonacci_strategy("F", i)
        assert tree.height == height
        assert verify_tree(tree, gen_fibonacci(i))

    def test_prime_three(self):
        tree = fibonacci_strategy("F'", 3)
        assert tree.height <= 3
        assert verify_tree(tree, gen_fibonacci_prime(3))

    @pytest.mark.parametrize("i", range(1, 13))
    def test_strategies_valid(self, i):
        tree = fibonacci_strategy("F", i)
        assert tree.height == i - 1 and verify_tree(tree, gen_fibonacci(i))
        prime = fibonacci_strategy("F'", i)
        assert prime.height <= i and verify_tree(prime, gen_fibonacci_prime(i))

    @pytest.mark.parametrize("i", range(1, 7))
    def test_optimal(self, i):
        assert optimal_queries(gen_fibonacci(i)) == i - 1

    def test_sharpness_within_cap(self):
        for i in range(4, 7):
            assert optimal_queries(gen_fibonacci(i)) == log_phi_ceil(gen_fibonacci(i).n) - 2

    def test_bad_kind(self):
        with pytest.raises(DagError):
            fibonacci_strategy("G", 3)
        with pytest.raises(DagError):
            fibonacci_strategy("F", 0)


def test_log_phi_ceil_matches_high_precision():
    getcontext().prec = 60
    phi = (1 + Decimal(5).sqrt()) / 2
    for n in range(1, 3000):
        k = log_phi_ceil(n)
        assert phi ** k >= n
        assert k == 0 or phi ** (k - 1) < n


def test_brute_force_small():
    assert brute_force_optimal(gen_octopus(5)) == 4
    assert brute_force_optimal(gen_random_binary(1, 0)) == 0
