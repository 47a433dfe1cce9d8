"""Exact minimax solvers and the constructive optimal strategies.

Both the unconfined and the confined problem reduce to one search: a set of
possible outcomes (bit-vector) and a family of query masks, a query sending
``S`` to ``S & mask`` (bugged) or ``S & ~mask`` (clean). For the confined
variant the "no faulty commit" outcome is an extra bit that no query mask
contains.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterable, Optional

from .dag import AncestorTable, Dag, DagError, ancestor_table
from .generators import CombLabelling, fibonacci_size
from .tree import NO_FAULT, Leaf, Query, StrategyTree

DEFAULT_CAP = 24
DEFAULT_MAX_ENTRIES = 4_000_000


class SolverCapExceeded(RuntimeError):
    pass


def _ceil_log2(n: int) -> int:
    return (n - 1).bit_length() if n > 1 else 0


@dataclass
class MinimaxSearch:
    """Iterative-deepening feasibility search with memoized bounds.

    ``lower[S]`` is a proven lower bound on the optimum of ``S`` and
    ``upper[S]`` a proven achievable height. Splits are deduplicated as
    unordered pairs and tried most balanced first.
    """

    masks: tuple[int, ...]
    max_entries: int = DEFAULT_MAX_ENTRIES
    lower: dict[int, int] = field(default_factory=dict)
    upper: dict[int, int] = field(default_factory=dict)

    def splits(self, s: int) -> list[tuple[int, int, int]]:
        """Distinct non-trivial ``(bugged side, clean side, query index)``."""
        seen = {}
        for i, m in enumerate(self.masks):
            a = s & m
            if a and a != s:
                key = min(a, s ^ a)
                if key not in seen:
                    seen[key] = (a, s ^ a, i)
        out = list(seen.values())
        out.sort(key=lambda t: max(t[0].bit_count(), t[1].bit_count()))
        return out

    def feasible(self, s: int, k: int) -> bool:
        n = s.bit_count()
        if n <= 1:
            return True
        if k <= 0 or n > 1 << k:
            return False
        if self.lower.get(s, 0) > k:
            return False
        if self.upper.get(s, 1 << 30) <= k:
            return True
        half = 1 << (k - 1)
        for a, b, _ in self.splits(s):
            if a.bit_count() > half or b.bit_count() > half:
                break
            big, small = (a, b) if a.bit_count() >= b.bit_count() else (b, a)
            if self.feasible(big, k - 1) and self.feasible(small, k - 1):
                self._store(self.upper, s, k)
                return True
        self._store(self.lower, s, k + 1)
        return False

    def _store(self, table: dict[int, int], s: int, k: int) -> None:
        if len(self.lower) + len(self.upper) >= self.max_entries:
            raise SolverCapExceeded(f"memo table exceeded {self.max_entries} entries")
        table[s] = k

    def value(self, s: int) -> int:
        k = max(_ceil_log2(s.bit_count()), self.lower.get(s, 0))
        while not self.feasible(s, k):
            k += 1
        return k

    def tree(self, s: int, leaf_of) -> StrategyTree:
        if s.bit_count() == 1:
            return leaf_of(s.bit_length() - 1)
        k = self.value(s)
        for a, b, i in self.splits(s):
            if self.feasible(a, k - 1) and self.feasible(b, k - 1):
                return Query(i, self.tree(a, leaf_of), self.tree(b, leaf_of))
        raise AssertionError("optimal split vanished")


def _rsp_search(dag: Dag, cap: int, max_entries: int) -> tuple[MinimaxSearch, int]:
    table = ancestor_table(dag)
    root = table.anc[dag.bugged]
    if root.bit_count() > cap:
        raise SolverCapExceeded(f"{root.bit_count()} candidates exceed the exact-solve cap {cap}")
    return MinimaxSearch(table.anc, max_entries), root


def optimal_queries(dag: Dag, cap: int = DEFAULT_CAP,
                    max_entries: int = DEFAULT_MAX_ENTRIES) -> int:
    """Minimum worst-case number of queries; any vertex may be queried."""
    search, root = _rsp_search(dag, cap, max_entries)
    return search.value(root)


def optimal_strategy(dag: Dag, cap: int = DEFAULT_CAP,
                     max_entries: int = DEFAULT_MAX_ENTRIES) -> StrategyTree:
    search, root = _rsp_search(dag, cap, max_entries)
    return search.tree(root, Leaf)


# -- confined variant ----------------------------------------------------

def _crsp_search(dag: Dag, innocent: Iterable[int], cap: int, max_entries: int):
    table = ancestor_table(dag)
    cand = dag.all_mask()
    for v in innocent:
        cand &= ~(1 << v)
    if cand.bit_count() + 1 > cap:
        raise SolverCapExceeded(f"{cand.bit_count() + 1} outcomes exceed the exact-solve cap {cap}")
    root = cand | 1 << dag.n
    return MinimaxSearch(table.anc, max_entries), root


def crsp_optimal_queries(instance, cap: int = DEFAULT_CAP,
                         max_entries: int = DEFAULT_MAX_ENTRIES) -> int:
    """Optimum of a confined instance (anything with ``dag`` and ``innocent``)."""
    search, root = _crsp_search(instance.dag, instance.innocent, cap, max_entries)
    return search.value(root)


def crsp_optimal_strategy(instance, cap: int = DEFAULT_CAP,
                          max_entries: int = DEFAULT_MAX_ENTRIES) -> StrategyTree:
    n = instance.dag.n
    search, root = _crsp_search(instance.dag, instance.innocent, cap, max_entries)
    return search.tree(root, lambda v: NO_FAULT if v == n else Leaf(v))


# -- brute force oracle --------------------------------------------------

def brute_force_optimal(dag: Dag, candidates: Optional[int] = None,
                        table: Optional[AncestorTable] = None) -> int:
    """Plain minimax recursion with no memo and no bounds. Exponential; n <= 10."""
    table = table or ancestor_table(dag)
    if candidates is None:
        candidates = table.anc[dag.bugged]
    masks = table.anc

    def opt(s: int) -> int:
        if s & (s - 1) == 0:
            return 0
        best = None
        for m in masks:
            a = s & m
            if a and a != s:
                v = 1 + max(opt(a), opt(s & ~m))
                if best is None or v < best:
                    best = v
        return best

    return opt(candidates)


# -- constructive strategies ---------------------------------------------

def comb_strategy(dag: Dag, labelling: CombLabelling) -> StrategyTree:
    """Binary search on the comb path; height ceil(log2(2n))."""
    n = labelling.n
    if dag.n != 2 * n or dag.marked_bugged != labelling.comb[-1]:
        raise DagError("graph is not the comb described by the labelling")
    arcs = set(dag.arcs)
    for i in range(n):
        if (labelling.base[i], labelling.comb[i]) not in arcs:
            raise DagError("graph is not the comb described by the labelling")
    v, u = labelling.base, labelling.comb

    def build(lo: int, hi: int) -> StrategyTree:
        if lo == hi:
            return Query(v[lo], Leaf(v[lo]), Leaf(u[lo]))
        mid = lo + (hi - lo + 2) // 2 - 1   # u_i with i = ceil(size / 2)
        return Query(u[mid], build(lo, mid), build(mid + 1, hi))

    return build(0, n - 1)


def _fib_tree(i: int, offset: int) -> StrategyTree:
    if i == 1:
        return Leaf(offset)
    if i == 2:
        return Query(offset, Leaf(offset), Leaf(offset + 1))
    left = fibonacci_size(i - 1)
    right = fibonacci_size(i - 2)
    sink = offset + left + right
    return Query(offset + left - 1, _fib_tree(i - 1, offset),
                 _fib_prime_tree(i - 2, offset + left, sink))


def _fib_prime_tree(i: int, offset: int, sink: int) -> StrategyTree:
    top = offset + fibonacci_size(i) - 1
    return Query(top, _fib_tree(i, offset), Leaf(sink))


def fibonacci_strategy(kind: str, i: int) -> StrategyTree:
    """Recursive strategy for ``gen_fibonacci(i)`` ("F") or ``gen_fibonacci_prime(i)`` ("F'")."""
    if i < 1:
        raise DagError("Fibonacci tree needs i >= 1")
    if kind == "F":
        return _fib_tree(i, 0)
    if kind in ("F'", "Fprime", "prime"):
        return _fib_prime_tree(i, 0, fibonacci_size(i))
    raise DagError(f"unknown Fibonacci kind {kind!r}")


def log_phi_ceil(n: int) -> int:
    """ceil(log_phi(n)) computed exactly from Fibonacci numbers.

    phi^k = fib_k * phi + fib_{k-1}, so ``n <= phi^k`` reduces to an
    integer test; powers of phi are irrational for k >= 1.
    """
    if n <= 1:
        return 0
    k, a, b = 0, 0, 1   # phi^k = a*phi + b
    while True:
        k += 1
        a, b = a + b, a
        # n <= a*phi + b  <=>  2(n - b) - a <= a*sqrt(5)
        lhs = 2 * (n - b) - a
        if lhs <= 0 or lhs * lhs <= 5 * a * a:
            return k


def optimum_bounds(n: int) -> tuple[int, int]:
    """Bounds every graph with ``n`` candidates obeys: ``ceil(log2 n) <= opt <= n - 1``."""
    return _ceil_log2(n), max(n - 1, 0)


__all__ = ["SolverCapExceeded", "MinimaxSearch", "optimal_queries", "optimal_strategy",
           "crsp_optimal_queries", "crsp_optimal_strategy", "brute_force_optimal",
           "comb_strategy", "fibonacci_strategy", "log_phi_ceil", "optimum_bounds",
           "DEFAULT_CAP"]
