"""Bounded (2,3)-SAT, the confined search problem and the reductions between them.

Gadget id layout for a formula with ``n`` variables and ``m`` clauses:
variable ``i`` (0-based) owns ids ``5i .. 5i+4`` as x, x̄, b, b̄, ct; clause
``j`` is ``5n + j``; the terminals t1, t2, t3 are ``5n + m .. 5n + m + 2``.
"""

from __future__ import annotations

import itertools
from collections import Counter
from dataclasses import dataclass
from typing import Iterator, Optional, Sequence

from .dag import Dag, DagError, _parse, ancestor_table, bits, format_dag, induced, mask_of
from .tree import NO_FAULT, Leaf, Query, StrategyTree


class FormulaError(ValueError):
    pass


@dataclass(frozen=True)
class BsatFormula:
    """CNF with 2 or 3 literals per clause and each variable in at most 3 clauses.

    Literals are DIMACS-style signed ints: ``i`` is variable ``i`` (1-based),
    ``-i`` its negation. An empty clause list is the trivially satisfiable
    formula.
    """

    n_vars: int
    clauses: tuple[tuple[int, ...], ...]

    def __post_init__(self):
        if self.n_vars < 0:
            raise FormulaError("negative variable count")
        occurrences = Counter()
        for clause in self.clauses:
            if len(clause) not in (2, 3):
                raise FormulaError(f"clause {list(clause)} must have 2 or 3 literals")
            if len(set(clause)) != len(clause):
                raise FormulaError(f"clause {list(clause)} repeats a literal")
            for lit in clause:
                if lit == 0 or abs(lit) > self.n_vars:
                    raise FormulaError(f"literal {lit} out of range")
            for var in {abs(lit) for lit in clause}:
                occurrences[var] += 1
        for var, count in occurrences.items():
            if count > 3:
                raise FormulaError(f"variable {var} occurs in {count} clauses (at most 3)")

    def literal_counts(self) -> Counter:
        return Counter(lit for clause in self.clauses for lit in clause)

    def is_preprocessed(self) -> bool:
        return all(c <= 2 for c in self.literal_counts().values())

    def satisfied_by(self, assignment: Sequence[bool]) -> bool:
        """``assignment[i]`` is the value of variable ``i + 1``."""
        return all(any(assignment[abs(l) - 1] == (l > 0) for l in c) for c in self.clauses)

    def to_dimacs(self) -> str:
        lines = [f"p cnf {self.n_vars} {len(self.clauses)}"]
        lines += [" ".join(map(str, c)) + " 0" for c in self.clauses]
        return "\n".join(lines) + "\n"


def parse_bsat(text: str) -> BsatFormula:
    """Parse DIMACS CNF (``c`` comments, ``p cnf <vars> <clauses>`` header)."""
    header = None
    literals: list[int] = []
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.strip()
        if not line or line.startswith("c") or line.startswith("%"):
            continue
        if line.startswith("p"):
            parts = line.split()
            if header is not None or len(parts) != 4 or parts[1] != "cnf":
                raise FormulaError(f"line {lineno}: malformed header {line!r}")
            try:
                header = (int(parts[2]), int(parts[3]))
            except ValueError:
                raise FormulaError(f"line {lineno}: malformed header {line!r}") from None
            continue
        if header is None:
            raise FormulaError(f"line {lineno}: clause before 'p cnf' header")
        try:
            literals += [int(tok) for tok in line.split()]
        except ValueError:
            raise FormulaError(f"line {lineno}: malformed clause {line!r}") from None
    if header is None:
        raise FormulaError("missing 'p cnf' header")
    if literals and literals[-1] != 0:
        raise FormulaError("last clause is not terminated by 0")
    clauses, current = [], []
    for lit in literals:
        if lit == 0:
            clauses.append(tuple(current))
            current = []
        else:
            current.append(lit)
    if len(clauses) != header[1]:
        raise FormulaError(f"header announces {header[1]} clauses, found {len(clauses)}")
    return BsatFormula(header[0], tuple(clauses))


def preprocess_pure_literals(f: BsatFormula) -> BsatFormula:
    """Drop the clauses of every literal occurring three times.

    Such a literal's negation cannot occur, so setting it true satisfies
    those clauses without touching any other.
    """
    counts = f.literal_counts()
    triple = {lit for lit, c in counts.items() if c >= 3}
    kept = tuple(c for c in f.clauses if not triple.intersection(c))
    return BsatFormula(f.n_vars, kept)


def assignments(n_vars: int) -> Iterator[tuple[bool, ...]]:
    return itertools.product((False, True), repeat=n_vars)


def brute_force_sat(f: BsatFormula) -> Optional[tuple[bool, ...]]:
    """First satisfying assignment in lexicographic order, or None."""
    for a in assignments(f.n_vars):
        if f.satisfied_by(a):
            return a
    return None


# -- confined instances --------------------------------------------------

@dataclass(frozen=True)
class CrspInstance:
    dag: Dag
    innocent: frozenset[int]
    budget: int

    def __post_init__(self):
        if any(not 0 <= v < self.dag.n for v in self.innocent):
            raise DagError("innocent vertex out of range")
        if self.budget < 0:
            raise DagError("budget must be non-negative")

    def suspects(self) -> int:
        return self.dag.all_mask() & ~mask_of(self.innocent)

    def innocent_closed(self) -> bool:
        """No innocent vertex is an ancestor of a suspect.

        Exactly the instances on which :func:`crsp_to_rsp` preserves the
        optimum; every output of :func:`rsp_to_crsp` and of the SAT
        reduction has this property.
        """
        table = ancestor_table(self.dag)
        inn = mask_of(self.innocent)
        return not any(table.anc[v] & inn for v in bits(self.suspects()))


def format_crsp(inst: CrspInstance) -> str:
    extra = [f"innocent {v}" for v in sorted(inst.innocent)] + [f"budget {inst.budget}"]
    return format_dag(inst.dag, extra)


def parse_crsp(text: str) -> CrspInstance:
    """DAG text format plus ``innocent <v>`` lines and one ``budget <k>`` line."""
    dag, innocent, budget = _parse(text, allow_crsp=True)
    if budget is None:
        raise DagError("missing 'budget <k>' line")
    return CrspInstance(dag, frozenset(innocent), budget)


@dataclass(frozen=True)
class GadgetMap:
    x: tuple[int, ...]
    x_bar: tuple[int, ...]
    b: tuple[int, ...]
    b_bar: tuple[int, ...]
    ct: tuple[int, ...]
    c: tuple[int, ...]
    t: tuple[int, int, int]

    def literal_vertex(self, lit: int) -> int:
        return self.x[lit - 1] if lit > 0 else self.x_bar[-lit - 1]

    def branch_vertex(self, lit: int) -> int:
        return self.b[lit - 1] if lit > 0 else self.b_bar[-lit - 1]


def reduce_bsat_to_crsp(f: BsatFormula) -> tuple[CrspInstance, GadgetMap]:
    """Binary confined instance with budget ``n + 3``, solvable iff ``f`` is satisfiable."""
    if not f.is_preprocessed():
        raise FormulaError("a literal occurs 3 times; run preprocess_pure_literals first")
    n, m = f.n_vars, len(f.clauses)
    gm = GadgetMap(
        x=tuple(5 * i for i in range(n)),
        x_bar=tuple(5 * i + 1 for i in range(n)),
        b=tuple(5 * i + 2 for i in range(n)),
        b_bar=tuple(5 * i + 3 for i in range(n)),
        ct=tuple(5 * i + 4 for i in range(n)),
        c=tuple(5 * n + j for j in range(m)),
        t=(5 * n + m, 5 * n + m + 1, 5 * n + m + 2),
    )
    arcs = []
    labels = [""] * (5 * n + m + 3)
    for i in range(n):
        arcs += [(gm.b[i], gm.x[i]), (gm.ct[i], gm.x[i]),
                 (gm.b_bar[i], gm.x_bar[i]), (gm.ct[i], gm.x_bar[i])]
        for name, ids in (("x", gm.x), ("nx", gm.x_bar), ("b", gm.b), ("nb", gm.b_bar), ("ct", gm.ct)):
            labels[ids[i]] = f"{name}{i + 1}"
    for j, clause in enumerate(f.clauses):
        arcs += [(gm.c[j], gm.branch_vertex(lit)) for lit in clause]
        labels[gm.c[j]] = f"c{j + 1}"
    for k, v in enumerate(gm.t):
        labels[v] = f"t{k + 1}"
    dag = Dag(len(labels), tuple(arcs), None, tuple(labels))
    suspects = set(gm.c) | set(gm.ct) | set(gm.t)
    innocent = frozenset(v for v in range(dag.n) if v not in suspects)
    return CrspInstance(dag, innocent, n + 3), gm


def crsp_to_rsp(inst: CrspInstance) -> Dag:
    """Add a marked sink fed by every non-innocent vertex.

    The new vertex takes id ``n``; it is the answer exactly when the
    confined instance has no faulty vertex. Innocent ancestors of suspects
    become candidates of the result, so the optimum is preserved only when
    ``inst.innocent_closed()`` holds.
    """
    n = inst.dag.n
    arcs = inst.dag.arcs + tuple((v, n) for v in range(n) if v not in inst.innocent)
    labels = None if inst.dag.labels is None else inst.dag.labels + ("b",)
    return Dag(n + 1, arcs, n, labels)


def rsp_to_crsp(dag: Dag, b: Optional[int] = None, budget: Optional[int] = None) -> CrspInstance:
    """Delete ``b`` and its descendants; former non-ancestors of ``b`` become innocent.

    Vertices keep their relative order. ``budget`` defaults to the trivial
    ``|anc(b)| - 1`` that any instance admits.
    """
    b = dag.bugged if b is None else b
    table = ancestor_table(dag)
    keep = [v for v in range(dag.n) if not (table.anc[v] >> b & 1)]
    sub = induced(dag, keep)
    index = {v: i for i, v in enumerate(keep)}
    innocent = frozenset(index[v] for v in keep if not (table.anc[b] >> v & 1))
    if budget is None:
        budget = table.count(b) - 1
    return CrspInstance(sub, innocent, budget)


def satisfying_assignment_to_strategy(f: BsatFormula, assignment: Sequence[bool],
                                      gm: GadgetMap) -> StrategyTree:
    """Confined strategy of height at most ``n + 3`` built from a satisfying assignment.

    Query the true literal of each variable in turn. A bugged answer leaves
    ``ct_i`` and the still-possible clauses containing that literal, which
    are sources and get queried one by one. If every literal is clean the
    terminals are queried last.
    """
    if len(assignment) != f.n_vars or not f.satisfied_by(assignment):
        raise FormulaError("assignment does not satisfy the formula")
    clauses_of = {}
    for j, clause in enumerate(f.clauses):
        for lit in clause:
            clauses_of.setdefault(lit, []).append(gm.c[j])

    def scan(order: list[int], last: StrategyTree) -> StrategyTree:
        tree = last
        for v in reversed(order):
            tree = Query(v, Leaf(v), tree)
        return tree

    def step(i: int, cleared: frozenset[int]) -> StrategyTree:
        if i == f.n_vars:
            return scan(list(gm.t), NO_FAULT)
        lit = i + 1 if assignment[i] else -(i + 1)
        clauses = [c for c in clauses_of.get(lit, []) if c not in cleared]
        bugged = scan(clauses, Leaf(gm.ct[i]))
        return Query(gm.literal_vertex(lit), bugged, step(i + 1, cleared | set(clauses_of.get(lit, []))))

    return step(0, frozenset())


# -- small-formula enumeration -------------------------------------------

def _all_clauses(n_vars: int) -> list[tuple[int, ...]]:
    out = []
    for size in (2, 3):
        for vars_ in itertools.combinations(range(1, n_vars + 1), size):
            for signs in itertools.product((1, -1), repeat=size):
                out.append(tuple(s * v for s, v in zip(signs, vars_)))
    return out


def canonical_form(f: BsatFormula) -> tuple:
    """Representative of ``f`` under variable renaming and polarity flips.

    The reduction maps equivalent formulas to isomorphic instances.
    """
    best = None
    for perm in itertools.permutations(range(1, f.n_vars + 1)):
        for flips in itertools.product((1, -1), repeat=f.n_vars):
            def image(lit):
                v = abs(lit)
                return (1 if lit > 0 else -1) * flips[v - 1] * perm[v - 1]
            key = tuple(sorted(tuple(sorted(map(image, c))) for c in f.clauses))
            if best is None or key < best:
                best = key
    return (f.n_vars, best)


def enumerate_formulas(max_vars: int, max_clauses: int,
                       preprocessed: bool = True) -> Iterator[BsatFormula]:
    """Valid formulas up to renaming and polarity flips, smallest first.

    Clauses are distinct and non-tautological; with ``preprocessed`` only
    formulas whose literals occur at most twice are produced.
    """
    seen = set()
    for n in range(0, max_vars + 1):
        pool = _all_clauses(n)
        for m in range(0, max_clauses + 1):
            for combo in itertools.combinations(pool, m):
                var_count = Counter(abs(l) for c in combo for l in c)
                if any(v > 3 for v in var_count.values()):
                    continue
                f = BsatFormula(n, combo)
                if preprocessed and not f.is_preprocessed():
                    continue
                key = canonical_form(f)
                if key not in seen:
                    seen.add(key)
                    yield f


def find_unsatisfiable(max_vars: int = 6, max_clauses: int = 8) -> Optional[BsatFormula]:
    """Smallest unsatisfiable preprocessed formula, by depth-first search.

    Clauses are added in pool order under the occurrence limits; the first
    hit for the least ``(n_vars, clauses)`` pair is returned.
    """
    for n in range(1, max_vars + 1):
        pool = _all_clauses(n)
        for m in range(1, max_clauses + 1):
            hit = _dfs_unsat(n, pool, m, 0, [], Counter(), Counter())
            if hit is not None:
                return hit
    return None


def _dfs_unsat(n, pool, m, start, chosen, var_count, lit_count):
    if len(chosen) == m:
        if len(var_count) == n:
            f = BsatFormula(n, tuple(chosen))
            if brute_force_sat(f) is None:
                return f
        return None
    for idx in range(start, len(pool) - (m - len(chosen)) + 1):
        clause = pool[idx]
        if any(var_count[abs(l)] >= 3 or lit_count[l] >= 2 for l in clause):
            continue
        for l in clause:
            var_count[abs(l)] += 1
            lit_count[l] += 1
        chosen.append(clause)
        hit = _dfs_unsat(n, pool, m, idx + 1, chosen, var_count, lit_count)
        chosen.pop()
        for l in clause:
            var_count[abs(l)] -= 1
            lit_count[l] -= 1
            if not var_count[abs(l)]:
                del var_count[abs(l)]
            if not lit_count[l]:
                del lit_count[l]
        if hit is not None:
            return hit
    return None


EXAMPLE_FORMULA = BsatFormula(3, ((1, -2), (-1, -2, -3)))


__all__ = ["FormulaError", "BsatFormula", "parse_bsat", "preprocess_pure_literals",
           "brute_force_sat", "CrspInstance", "format_crsp", "parse_crsp", "GadgetMap",
           "reduce_bsat_to_crsp", "crsp_to_rsp", "rsp_to_crsp",
           "satisfying_assignment_to_strategy", "canonical_form", "enumerate_formulas",
           "find_unsatisfiable", "EXAMPLE_FORMULA"]
