"""Regression search in version-control DAGs: git bisect, golden bisect, exact optima."""

from .dag import (AncestorTable, BisectState, Dag, DagError, InconsistentOracleError,
                  ancestor_table, apply_verdict, export_dot, format_dag, initial_state,
                  is_binary, max_indegree, parse_dag, prune_to_ancestors, score)
from .strategies import (build_strategy_tree, git_bisect_pick, golden_bisect_pick,
                         run_session, worst_case_queries)
from .optimal import (SolverCapExceeded, brute_force_optimal, crsp_optimal_queries,
                      optimal_queries, optimal_strategy)
from .reduction import (BsatFormula, CrspInstance, crsp_to_rsp, parse_bsat, reduce_bsat_to_crsp,
                        rsp_to_crsp)
from .tree import NO_FAULT, Leaf, Query, verify_tree

__all__ = [
    "AncestorTable", "BisectState", "Dag", "DagError", "InconsistentOracleError",
    "ancestor_table", "apply_verdict", "export_dot", "format_dag", "initial_state",
    "is_binary", "max_indegree", "parse_dag", "prune_to_ancestors", "score",
    "build_strategy_tree", "git_bisect_pick", "golden_bisect_pick", "run_session",
    "worst_case_queries", "SolverCapExceeded", "brute_force_optimal", "crsp_optimal_queries",
    "optimal_queries", "optimal_strategy", "BsatFormula", "CrspInstance", "crsp_to_rsp",
    "parse_bsat", "reduce_bsat_to_crsp", "rsp_to_crsp", "NO_FAULT", "Leaf", "Query", "verify_tree",
]
