from collections import Counter

import pytest
from hypothesis import given, settings, strategies as st

from regsearch.dag import Dag, DagError, is_binary
from regsearch.generators import gen_claw, gen_fig_example, gen_path, gen_random_dag
from regsearch.optimal import crsp_optimal_queries, optimal_queries
from regsearch.reduction import (EXAMPLE_FORMULA, BsatFormula, CrspInstance, FormulaError,
                                 _all_clauses, brute_force_sat, canonical_form, crsp_to_rsp,
                                 enumerate_formulas, find_unsatisfiable, format_crsp,
                                 parse_bsat, parse_crsp, preprocess_pure_literals,
                                 reduce_bsat_to_crsp, rsp_to_crsp,
                                 satisfying_assignment_to_strategy)
from regsearch.tree import NO_FAULT, verify_crsp_tree


@st.composite
def formulas(draw, max_vars, max_clauses, min_vars=0):
    """Valid preprocessed formulas; clauses breaking an occurrence limit are dropped."""
    n = draw(st.integers(min_vars, max_vars))
    pool = _all_clauses(n)
    chosen = draw(st.lists(st.sampled_from(pool), max_size=max_clauses, unique=True)) if pool else []
    vars_, lits = Counter(), Counter()
    kept = []
    for clause in chosen:
        if all(vars_[abs(l)] < 3 and lits[l] < 2 for l in clause):
            kept.append(clause)
            vars_.update(abs(l) for l in clause)
            lits.update(clause)
    return BsatFormula(n, tuple(kept))


EXAMPLE_DIMACS = """\
c the running example
p cnf 3 2
1 -2 0
-1 -2 -3 0
"""


class TestFormulas:
    def test_parse(self):
        assert parse_bsat(EXAMPLE_DIMACS) == EXAMPLE_FORMULA
        assert parse_bsat(EXAMPLE_FORMULA.to_dimacs()) == EXAMPLE_FORMULA

    @pytest.mark.parametrize("text", [
        "p cnf 2 1\n1 0\n",
        "p cnf 1 4\n1 -1 0\n1 -1 0\n1 -1 0\n1 -1 0\n",
        "p cnf 2 1\n1 x 0\n",
        "p cnf 2 2\n1 2 0\n",
        "1 2 0\n",
        "p cnf 2 1\n1 3 0\n",
    ])
    def test_errors(self, text):
        with pytest.raises(FormulaError):
            parse_bsat(text)

    def test_four_occurrences(self):
        with pytest.raises(FormulaError, match="at most 3"):
            BsatFormula(4, ((1, 2), (1, 3), (1, 4), (-1, 2)))

    def test_preprocess(self):
        f = BsatFormula(3, ((1, 2), (1, 3), (1, -2), (-3, 2)))
        g = preprocess_pure_literals(f)
        assert g.clauses == ((-3, 2),)
        assert g.is_preprocessed() and not f.is_preprocessed()

    def test_brute_force_sat(self):
        a = brute_force_sat(EXAMPLE_FORMULA)
        assert a is not None and EXAMPLE_FORMULA.satisfied_by(a)
        assert brute_force_sat(BsatFormula(1, ((1, -1),))) is not None

    def test_canonical_form(self):
        f = BsatFormula(2, ((1, 2),))
        g = BsatFormula(2, ((-2, -1),))
        assert canonical_form(f) == canonical_form(g)
        assert canonical_form(f) != canonical_form(BsatFormula(2, ((1, 2), (1, -2))))

    def test_enumeration_is_deduplicated(self):
        formulas = list(enumerate_formulas(2, 2))
        keys = [canonical_form(f) for f in formulas]
        assert len(keys) == len(set(keys))
        assert all(f.is_preprocessed() for f in formulas)

    def test_smallest_unsatisfiable(self):
        f = find_unsatisfiable()
        assert f.n_vars == 4 and len(f.clauses) == 5
        assert brute_force_sat(f) is None and f.is_preprocessed()


class TestReduction:
    def test_example(self):
        inst, gm = reduce_bsat_to_crsp(EXAMPLE_FORMULA)
        assert (inst.dag.n, len(inst.innocent), inst.budget) == (20, 12, 6)
        assert is_binary(inst.dag)
        assert crsp_optimal_queries(inst) == 6
        assert inst.dag.label(gm.literal_vertex(-2)) == "nx2"
        assert inst.dag.label(gm.t[2]) == "t3"

    def test_empty_formula(self):
        inst, _ = reduce_bsat_to_crsp(BsatFormula(2, ()))
        assert inst.dag.n == 13 and inst.budget == 5

    def test_requires_preprocessing(self):
        with pytest.raises(FormulaError):
            reduce_bsat_to_crsp(BsatFormula(3, ((1, 2), (1, 3), (1, -2))))

    @given(formulas(3, 3))
    def test_shape(self, f):
        inst, gm = reduce_bsat_to_crsp(f)
        assert inst.dag.n == 5 * f.n_vars + len(f.clauses) + 3
        assert is_binary(inst.dag)
        assert inst.innocent_closed()
        suspects = set(gm.c) | set(gm.ct) | set(gm.t)
        assert inst.innocent == frozenset(range(inst.dag.n)) - suspects

    @settings(max_examples=40, deadline=None)
    @given(formulas(4, 5, min_vars=4))
    def test_soundness_four_variables(self, f):
        inst, gm = reduce_bsat_to_crsp(f)
        a = brute_force_sat(f)
        if a is None:
            assert crsp_optimal_queries(inst) > f.n_vars + 3
        else:
            tree = satisfying_assignment_to_strategy(f, a, gm)
            assert tree.height <= f.n_vars + 3
            assert verify_crsp_tree(tree, inst.dag, inst.innocent)

    def test_unsatisfiable_needs_more(self):
        f = find_unsatisfiable()
        inst, _ = reduce_bsat_to_crsp(f)
        assert crsp_optimal_queries(inst) == 8


class TestStrategyFromAssignment:
    def test_paths(self):
        inst, gm = reduce_bsat_to_crsp(EXAMPLE_FORMULA)
        tree = satisfying_assignment_to_strategy(EXAMPLE_FORMULA, (True, False, False), gm)
        assert tree.height <= 6
        assert verify_crsp_tree(tree, inst.dag, inst.innocent)
        # every literal clean: n literal queries then the three terminals
        node, depth = tree, 0
        while node != NO_FAULT:
            node, depth = node.clean, depth + 1
        assert depth == 6
        # x1 bugged: ct1 or the clause c1
        assert tree.vertex == gm.x[0]
        assert tree.bugged.height <= 2

    def test_rejects_bad_assignment(self):
        _, gm = reduce_bsat_to_crsp(EXAMPLE_FORMULA)
        with pytest.raises(FormulaError):
            satisfying_assignment_to_strategy(EXAMPLE_FORMULA, (False, True, True), gm)


class TestTransforms:
    def test_fig14_crsp_to_rsp(self):
        fig = gen_fig_example("fig14")
        inst = CrspInstance(fig, frozenset(fig.vertex(x) for x in "789"), 0)
        dag = crsp_to_rsp(inst)
        assert dag.n == 10 and dag.label(dag.bugged) == "b"
        into_b = {dag.label(u) for u, v in dag.arcs if v == dag.bugged}
        assert into_b == {"1", "2", "3", "4", "5", "6"}
        assert optimal_queries(dag) == crsp_optimal_queries(inst)

    def test_fig14_rsp_to_crsp(self):
        fig = gen_fig_example("fig14")
        inst = rsp_to_crsp(fig, fig.vertex("7"))
        assert inst.dag.n == 6
        assert {inst.dag.label(v) for v in inst.innocent} == {"4", "5"}
        assert inst.budget == 4

    def test_path3(self):
        inst = rsp_to_crsp(gen_path(3))
        assert inst.dag.n == 2 and inst.dag.arcs == ((0, 1),) and not inst.innocent

    def test_innocent_ancestor_breaks_crsp_to_rsp(self):
        # the innocent parent becomes a candidate once the new sink is added
        inst = CrspInstance(Dag(2, ((0, 1),)), frozenset({0}), 0)
        assert not inst.innocent_closed()
        assert crsp_optimal_queries(inst) == 1
        assert optimal_queries(crsp_to_rsp(inst)) == 2

    @settings(max_examples=40, deadline=None)
    @given(st.integers(1, 9), st.integers(0, 10 ** 6), st.data())
    def test_round_trip(self, n, seed, data):
        dag = gen_random_dag(n, seed, p=0.4)
        b = data.draw(st.integers(0, n - 1))
        marked = dag.with_marked(b)
        inst = rsp_to_crsp(marked, b)
        assert inst.innocent_closed()
        opt = optimal_queries(marked)
        assert crsp_optimal_queries(inst) == opt
        assert optimal_queries(crsp_to_rsp(inst)) == opt

    def test_text_round_trip(self):
        inst, _ = reduce_bsat_to_crsp(EXAMPLE_FORMULA)
        assert parse_crsp(format_crsp(inst)) == inst

    def test_budget_required(self):
        with pytest.raises(DagError, match="budget"):
            parse_crsp("dag 2 1\narc 0 1\ninnocent 0\n")

    def test_claw_strategy_with_innocent_sink(self):
        inst = CrspInstance(gen_claw(), frozenset({3}), 2)
        assert inst.innocent_closed()
        assert crsp_optimal_queries(inst) == optimal_queries(crsp_to_rsp(inst))
