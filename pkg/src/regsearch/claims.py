"""Executable checks of the theorems, each producing one row per checked case.

Every claim is a function returning a list of :class:`ClaimRow`; a claim
holds when all its rows pass. Corpora are seeded so runs are reproducible.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from typing import Callable, Iterator, Optional

from .dag import BisectState, Dag, apply_verdict, ancestor_table, initial_state, score
from .generators import (default_comb_order, gen_claw, gen_comb, gen_fibonacci,
                         gen_fibonacci_prime, gen_fig_example, gen_octopus, gen_path,
                         gen_pathological, gen_random_binary, gen_random_dag, gen_random_delta,
                         fibonacci_size, jk_construction)
from .optimal import (brute_force_optimal, comb_strategy, crsp_optimal_queries,
                      fibonacci_strategy, log_phi_ceil, optimal_queries)
from .reduction import (EXAMPLE_FORMULA, CrspInstance, brute_force_sat, crsp_to_rsp,
                        enumerate_formulas, find_unsatisfiable, reduce_bsat_to_crsp,
                        rsp_to_crsp, satisfying_assignment_to_strategy)
from .strategies import (PICKERS, Picker, boundary_sets, build_strategy_tree, git_bisect_pick,
                         golden_bisect_pick, session_lengths)
from .tree import verify_crsp_tree, verify_tree


@dataclass(frozen=True)
class ClaimRow:
    claim: str
    case: str
    expected: object
    observed: object
    passed: bool

    def to_dict(self) -> dict:
        return {"claim": self.claim, "case": self.case, "expected": self.expected,
                "observed": self.observed, "passed": self.passed}


def _row(claim: str, case: str, expected, observed, passed: Optional[bool] = None) -> ClaimRow:
    return ClaimRow(claim, case, expected, observed,
                    expected == observed if passed is None else bool(passed))


# -- exact arithmetic helpers --------------------------------------------

def ceil_log2(n: int) -> int:
    return (n - 1).bit_length() if n > 1 else 0


def table1_bound(n: int) -> int:
    """F(n): worst-case bound for n <= 13 from n_{k+1} <= floor((2 n_k + 1) / 3)."""
    k = 0
    while n > 1:
        n = (2 * n + 1) // 3
        k += 1
    return k


def within_log_ratio(queries: int, n: int, num: int, den: int) -> bool:
    """``queries <= log(n) / log(num / den)``, i.e. ``num**q <= n * den**q``."""
    return num ** queries <= n * den ** queries


def phi_power_at_most(j: int, n: int) -> bool:
    """``phi**j <= n`` for integers ``j >= 0``, exactly."""
    if j <= 0:
        return n >= 1
    a, b = 1, 0   # phi^1 = 1*phi + 0
    for _ in range(j - 1):
        a, b = a + b, a
    # a*phi + b <= n  <=>  a*sqrt(5) <= 2(n - b) - a
    rhs = 2 * (n - b) - a
    return rhs >= 0 and 5 * a * a <= rhs * rhs


def at_most_n_over_phi(s: int, n: int) -> bool:
    """``s <= n / phi``: ``s*sqrt(5) <= 2n - s``."""
    rhs = 2 * n - s
    return rhs >= 0 and 5 * s * s <= rhs * rhs


def at_most_n_over_phi2(s: int, n: int) -> bool:
    """``s <= n / phi**2``: ``s*sqrt(5) <= 2n - 3s``."""
    rhs = 2 * n - 3 * s
    return rhs >= 0 and 5 * s * s <= rhs * rhs


# -- corpora -------------------------------------------------------------

def random_binary_corpus(count: int, n_min: int, n_max: int, seed: int = 0) -> Iterator[Dag]:
    """``count`` random binary DAGs with sizes drawn uniformly from ``[n_min, n_max]``."""
    rng = random.Random(seed)
    for _ in range(count):
        n = rng.randint(n_min, n_max)
        yield gen_random_binary(n, rng.randrange(1 << 30), extra=rng.randint(0, n // 2))


def random_delta_corpus(count: int, delta: int, n_min: int, n_max: int,
                        seed: int = 0) -> Iterator[Dag]:
    rng = random.Random(seed)
    for _ in range(count):
        n = rng.randint(n_min, n_max)
        yield gen_random_delta(n, delta, rng.randrange(1 << 30), extra=rng.randint(0, n))


def small_corpus() -> list[tuple[str, Dag]]:
    """Fixed corpus of graphs with at most 10 vertices."""
    out = [(f"path{n}", gen_path(n)) for n in range(1, 11)]
    out += [(f"octopus{n}", gen_octopus(n)) for n in range(1, 10)]
    out += [("claw", gen_claw()), ("pathological3", gen_pathological(3))]
    out += [(f"fib{i}", gen_fibonacci(i)) for i in range(1, 5)]
    out += [(f"fibprime{i}", gen_fibonacci_prime(i)) for i in range(1, 4)]
    out += [(f"comb-path{n}", gen_comb(gen_path(n))[0]) for n in range(1, 6)]
    out += [("comb-octopus5", gen_comb(gen_octopus(5))[0])]
    for n in range(2, 11):
        for s in range(3):
            out.append((f"binary{n}-s{s}", gen_random_binary(n, s, extra=s * n // 3)))
            out.append((f"dag{n}-s{s}", gen_random_dag(n, s, p=0.25 + 0.2 * s)))
    return out


def greedy_states(picker: Picker, dag: Dag) -> Iterator[BisectState]:
    """Every state visited by ``picker``'s strategy tree, root first."""
    stack = [initial_state(dag)]
    while stack:
        state = stack.pop()
        yield state
        if state.n_live > 1:
            q = picker(state)
            stack.append(apply_verdict(state, q, True))
            stack.append(apply_verdict(state, q, False))


# -- claims --------------------------------------------------------------

def claim_pathological(ks=(3, 4, 5, 6), exact_ks=(3, 4)) -> list[ClaimRow]:
    rows = []
    for k in ks:
        d = gen_pathological(k)
        rows.append(_row("pathological", f"git worst case, k={k}", 2 ** (k - 1) - 1,
                         build_strategy_tree(git_bisect_pick, initial_state(d)).height))
    for k in exact_ks:
        rows.append(_row("pathological", f"optimum, k={k}", k,
                         optimal_queries(gen_pathological(k))))
    return rows


def comb_corpus(n_max: int = 12, seed: int = 0) -> list[tuple[str, Dag]]:
    """Odd-size bases: paths, octopuses and random binary DAGs."""
    out = []
    for n in range(1, n_max + 1, 2):
        out.append((f"path{n}", gen_path(n)))
        out.append((f"octopus{n}", gen_octopus(n)))
        for s in range(3):
            out.append((f"binary{n}-s{seed + s}", gen_random_binary(n, seed + s, extra=s * n // 3)))
    return out


def claim_comb(n_max: int = 12) -> list[ClaimRow]:
    rows = []
    for name, base in comb_corpus(n_max):
        comb, lab = gen_comb(base, default_comb_order(base))
        tree = comb_strategy(comb, lab)
        bound = ceil_log2(2 * base.n)
        rows.append(_row("comb", f"{name}: strategy height", bound, tree.height,
                         tree.height == bound and verify_tree(tree, comb)))
        git_base = build_strategy_tree(git_bisect_pick, initial_state(base)).height
        git_comb = build_strategy_tree(git_bisect_pick, initial_state(comb)).height
        rows.append(_row("comb", f"{name}: git on comb = git on base + 1", git_base + 1, git_comb))
    return rows


def claim_figures() -> list[ClaimRow]:
    d = gen_fig_example("fig4")
    st = initial_state(d)
    git_tree = build_strategy_tree(git_bisect_pick, st)
    golden_tree = build_strategy_tree(golden_bisect_pick, st)
    pick = golden_tree.vertex
    return [
        _row("figures", "fig4 git worst case", 6, git_tree.height),
        _row("figures", "fig4 git first pick", "18", d.label(git_tree.vertex)),
        _row("figures", "fig4 golden worst case", 5, golden_tree.height),
        _row("figures", "fig4 golden first pick and score", "7 or 14, score 7",
             f"{d.label(pick)}, score {score(st, pick)}",
             d.label(pick) in ("7", "14") and score(st, pick) == 7),
    ]


def claim_table1(per_size: int = 200, n_max: int = 13, seed: int = 0) -> list[ClaimRow]:
    rows = []
    for n in range(1, n_max + 1):
        bound = table1_bound(n)
        worst = {name: 0 for name in PICKERS}
        for dag in random_binary_corpus(per_size, n, n, seed + n):
            for name, picker in PICKERS.items():
                worst[name] = max(worst[name], build_strategy_tree(picker, initial_state(dag)).height)
        for name in PICKERS:
            rows.append(_row("table1", f"{name}, n={n}, {per_size} graphs", f"<= {bound}",
                             worst[name], worst[name] <= bound))
    return rows


def claim_upper_bounds(count: int = 500, n_max: int = 300, delta_count: int = 100,
                       seed: int = 0) -> list[ClaimRow]:
    git_bad = golden_bad = 0
    for dag in random_binary_corpus(count, 2, n_max, seed):
        st = initial_state(dag)
        g = build_strategy_tree(git_bisect_pick, st).height
        h = build_strategy_tree(golden_bisect_pick, st).height
        git_bad += not within_log_ratio(g, st.n_live, 3, 2)
        golden_bad += not phi_power_at_most(h - 1, st.n_live)
    rows = [_row("upper-bounds", f"git <= log_1.5 n, {count} binary graphs", 0, git_bad),
            _row("upper-bounds", f"golden <= log_phi n + 1, {count} binary graphs", 0, golden_bad)]
    for delta in (3, 4):
        bad = 0
        for dag in random_delta_corpus(delta_count, delta, 2, n_max, seed + delta):
            st = initial_state(dag)
            g = build_strategy_tree(git_bisect_pick, st).height
            bad += not within_log_ratio(g, st.n_live, delta + 1, delta)
        rows.append(_row("upper-bounds",
                         f"git <= log n / log({delta + 1}/{delta}), {delta_count} {delta}-ary graphs",
                         0, bad))
    return rows


def lemma_violations(dag: Dag, delta: int = 2) -> dict[str, int]:
    """Count states of the git tree breaking the balanced-vertex lemmas."""
    bad = {"balanced": 0, "boundary": 0}
    for st in greedy_states(git_bisect_pick, dag):
        n = st.n_live
        counts = [st.live_count(v) for v in st.live()]
        # (n-1)/(D+1) < |v| <= (D n + 1)/(D+1); for D=2 equivalent to n/3 <= |v| <= (2n+1)/3
        if not any(n - 1 < (delta + 1) * a <= delta * n + 1 for a in counts):
            bad["balanced"] += 1
        if delta == 2 and n >= 2:
            pool = boundary_sets(st).pool()
            best = max(min(st.live_count(v), n - st.live_count(v)) for v in pool)
            if 3 * best < n - 1:
                bad["boundary"] += 1
    return bad


def claim_lemmas(count: int = 200, n_max: int = 120, seed: int = 1) -> list[ClaimRow]:
    totals = {"balanced": 0, "boundary": 0}
    for dag in random_binary_corpus(count, 1, n_max, seed):
        for key, v in lemma_violations(dag).items():
            totals[key] += v
    rows = [_row("lemmas", f"some n/3 <= |v| <= (2n+1)/3, {count} binary graphs", 0, totals["balanced"]),
            _row("lemmas", f"max score on B>= and B< >= (n-1)/3, {count} binary graphs", 0,
                 totals["boundary"])]
    for delta in (3, 4):
        bad = sum(lemma_violations(d, delta)["balanced"]
                  for d in random_delta_corpus(count // 2, delta, 1, n_max, seed + delta))
        rows.append(_row("lemmas", f"balanced vertex, {count // 2} {delta}-ary graphs", 0, bad))
    return rows


def jk_stage_violations(k: int) -> int:
    """Stages where |z'_d| != 3 l_d or the three backbone scores differ from (n_d - 1)/3."""
    con = jk_construction(k)
    table = ancestor_table(con.dag)
    bad = 0
    for d in range(1, k + 1):
        if table.count(con.z_prime[d - 1]) != 3 * con.ells[d - 1]:
            bad += 1
    for d in range(0, k + 1):
        n_d = con.stage_sizes[d]
        st = initial_state(con.stage(d))
        want = (n_d - 1) // 3 if (n_d - 1) % 3 == 0 else None
        got = {score(st, v) for v in (con.x[0][-1], con.x[1][-1], con.c)}
        # ids below n_d are preserved by the stage relabelling
        if want is None or got != {want}:
            bad += 1
    return bad


def claim_jk(ks=range(1, 7)) -> list[ClaimRow]:
    rows = []
    for k in ks:
        con = jk_construction(k)
        formula = k + ceil_log2(k + 1) + 2
        git_jk = build_strategy_tree(git_bisect_pick, initial_state(con.dag)).height
        comb, _ = gen_comb(con.dag)
        git_comb = build_strategy_tree(git_bisect_pick, initial_state(comb)).height
        rows.append(_row("jk", f"git on J_{k}", formula, git_jk))
        rows.append(_row("jk", f"git on comb(J_{k})", formula + 1, git_comb))
        rows.append(_row("jk", f"J_{k} stage invariants, violations", 0, jk_stage_violations(k)))
    return rows


def claim_fibonacci(exact_max: int = 6, strategy_max: int = 12) -> list[ClaimRow]:
    rows = []
    for i in range(1, exact_max + 1):
        rows.append(_row("fibonacci", f"optimum on F_{i}", i - 1, optimal_queries(gen_fibonacci(i))))
    for i in range(1, strategy_max + 1):
        tree = fibonacci_strategy("F", i)
        rows.append(_row("fibonacci", f"strategy height on F_{i}", i - 1, tree.height,
                         tree.height == i - 1 and verify_tree(tree, gen_fibonacci(i))))
    for i in range(4, strategy_max + 1):
        rows.append(_row("fibonacci", f"ceil(log_phi |F_{i}|) - 2", i - 1,
                         log_phi_ceil(fibonacci_size(i)) - 2))
    return rows


def golden_two_step(state: BisectState) -> tuple[bool, tuple[int, int, int]]:
    """Check the one-or-two-step reduction at ``state``.

    Returns whether every verdict of the first golden query either leaves at
    most n/phi candidates or is followed by a golden query whose worst
    verdict leaves at most n/phi^2, plus the worst-case live sizes.
    """
    n = state.n_live
    q = golden_bisect_pick(state)
    ok = True
    first = second = 0
    for verdict in (True, False):
        s1 = apply_verdict(state, q, verdict)
        first = max(first, s1.n_live)
        if at_most_n_over_phi(s1.n_live, n):
            continue
        if s1.n_live < 2:
            continue
        q2 = golden_bisect_pick(s1)
        worst = max(apply_verdict(s1, q2, v).n_live for v in (True, False))
        second = max(second, worst)
        ok = ok and at_most_n_over_phi2(worst, n)
    return ok, (n, first, second)


def claim_golden_lemma(count: int = 500, n_max: int = 300, seed: int = 2) -> list[ClaimRow]:
    bad = states = 0
    for dag in random_binary_corpus(count, 14, n_max, seed):
        for st in greedy_states(golden_bisect_pick, dag):
            if st.n_live >= 14:
                states += 1
                bad += not golden_two_step(st)[0]
    ok9, sizes = golden_two_step(initial_state(gen_fig_example("fig9")))
    return [_row("golden-lemma", f"violations over {count} binary graphs ({states} states, n >= 14)",
                 0, bad),
            _row("golden-lemma", "fig9 exception, worst-case live sizes", [13, 9, 5], list(sizes),
                 list(sizes) == [13, 9, 5] and not ok9)]


def claim_reduction(max_vars: int = 3, max_clauses: int = 4) -> list[ClaimRow]:
    inst, gm = reduce_bsat_to_crsp(EXAMPLE_FORMULA)
    rows = [_row("reduction", "example formula optimum", 6, crsp_optimal_queries(inst))]
    tree = satisfying_assignment_to_strategy(EXAMPLE_FORMULA, (True, False, False), gm)
    rows.append(_row("reduction", "example formula strategy from assignment", "<= 6", tree.height,
                     tree.height <= 6 and verify_crsp_tree(tree, inst.dag, inst.innocent)))
    sat = bad = 0
    for f in enumerate_formulas(max_vars, max_clauses):
        a = brute_force_sat(f)
        if a is None:
            continue
        sat += 1
        inst, gm = reduce_bsat_to_crsp(f)
        tree = satisfying_assignment_to_strategy(f, a, gm)
        if (crsp_optimal_queries(inst) > f.n_vars + 3 or tree.height > f.n_vars + 3
                or not verify_crsp_tree(tree, inst.dag, inst.innocent)):
            bad += 1
    rows.append(_row("reduction", f"satisfiable formulas ({sat}, <= {max_vars} vars, "
                     f"<= {max_clauses} clauses) exceeding n+3", 0, bad))
    unsat = find_unsatisfiable()
    inst, _ = reduce_bsat_to_crsp(unsat)
    opt = crsp_optimal_queries(inst)
    rows.append(_row("reduction", f"unsatisfiable {unsat.to_dimacs().strip()!r} optimum",
                     f">= {unsat.n_vars + 4}", opt, opt >= unsat.n_vars + 4))
    return rows


def claim_transforms(count: int = 100, max_candidates: int = 12, seed: int = 3) -> list[ClaimRow]:
    rng = random.Random(seed)
    bad_rsp = bad_crsp = 0
    for _ in range(count):
        n = rng.randint(1, max_candidates)
        dag = gen_random_dag(n, rng.randrange(1 << 30), p=rng.uniform(0.1, 0.6))
        b = rng.randrange(n)
        marked = dag.with_marked(b)
        bad_rsp += crsp_optimal_queries(rsp_to_crsp(marked, b)) != optimal_queries(marked)

        m = rng.randint(1, max_candidates)
        dag2 = gen_random_dag(m, rng.randrange(1 << 30), p=rng.uniform(0.1, 0.6))
        inst = CrspInstance(dag2, random_closed_innocent(dag2, rng), 0)
        bad_crsp += optimal_queries(crsp_to_rsp(inst)) != crsp_optimal_queries(inst)
    return [_row("transforms", f"rsp -> crsp optimum preserved, {count} instances", 0, bad_rsp),
            _row("transforms", f"crsp -> rsp optimum preserved, {count} instances", 0, bad_crsp)]


def random_closed_innocent(dag: Dag, rng: random.Random, p: float = 0.3) -> frozenset[int]:
    """Descendants of a random seed set: innocent, yet never an ancestor of a suspect."""
    table = ancestor_table(dag)
    seeds = [v for v in range(dag.n) if rng.random() < p]
    return frozenset(u for u in range(dag.n) if any(table.anc[u] >> s & 1 for s in seeds))


def claim_oracle() -> list[ClaimRow]:
    opt_bad = tree_bad = 0
    corpus = small_corpus()
    for _, dag in corpus:
        if optimal_queries(dag) != brute_force_optimal(dag):
            opt_bad += 1
        for picker in PICKERS.values():
            tree = build_strategy_tree(picker, initial_state(dag))
            lengths = session_lengths(picker, dag)
            if tree.height != max(lengths.values()) or not verify_tree(tree, dag):
                tree_bad += 1
    return [_row("oracle", f"exact solver vs brute force, {len(corpus)} graphs", 0, opt_bad),
            _row("oracle", f"tree height vs session maximum, {len(corpus)} graphs x 2 pickers",
                 0, tree_bad)]


CLAIMS: dict[str, Callable[[], list[ClaimRow]]] = {
    "pathological": claim_pathological,
    "comb": claim_comb,
    "figures": claim_figures,
    "table1": claim_table1,
    "upper-bounds": claim_upper_bounds,
    "jk": claim_jk,
    "fibonacci": claim_fibonacci,
    "golden-lemma": claim_golden_lemma,
    "reduction": claim_reduction,
    "transforms": claim_transforms,
    "oracle": claim_oracle,
    "lemmas": claim_lemmas,
}

# acceptance criteria 1..11 in order; "lemmas" is an extra invariant suite
CRITERIA = tuple(list(CLAIMS)[:11])


def run_claims(names=None) -> list[ClaimRow]:
    names = list(CLAIMS) if names is None else list(names)
    rows = []
    for name in sorted(names):
        rows.extend(CLAIMS[name]())
    return rows


__all__ = ["ClaimRow", "CLAIMS", "CRITERIA", "run_claims", "table1_bound", "ceil_log2",
           "within_log_ratio", "phi_power_at_most", "at_most_n_over_phi", "at_most_n_over_phi2",
           "random_binary_corpus", "random_delta_corpus", "small_corpus", "comb_corpus",
           "greedy_states", "golden_two_step", "lemma_violations", "jk_stage_violations"]
