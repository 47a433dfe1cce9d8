"""Greedy bisection pickers, session execution and worst-case evaluation.

A picker maps a :class:`BisectState` with at least two live candidates to
the vertex to query next. Ties are always broken by the smallest vertex id.
"""

from __future__ import annotations

import json
import sys
from dataclasses import dataclass, field
from typing import Callable, Optional, TextIO, Union

from .dag import (BisectState, Dag, DagError, InconsistentOracleError, apply_verdict, bits,
                  initial_state)
from .tree import Leaf, Query, StrategyTree

Picker = Callable[[BisectState], int]


def _require_two(state: BisectState) -> None:
    if state.n_live < 2:
        raise DagError("a query needs at least two live candidates")


def git_bisect_pick(state: BisectState) -> int:
    """Live vertex of maximum score, smallest id on ties."""
    _require_two(state)
    n = state.n_live
    cand = state.candidates
    anc = state.table.anc
    best_v, best_s = -1, -1
    for v in bits(cand):
        a = (anc[v] & cand).bit_count()
        s = a if 2 * a <= n else n - a
        if s > best_s:
            best_v, best_s = v, s
    return best_v


def golden_threshold(n_live: int, s: int) -> bool:
    """Whether ``s >= n_live / phi**2``, decided in exact integer arithmetic.

    For ``0 <= s <= n`` the comparison is equivalent to ``3ns >= n^2 + s^2``;
    ``n / phi**2`` is irrational for ``n >= 1`` so equality never happens.
    """
    return 3 * n_live * s >= n_live * n_live + s * s


@dataclass(frozen=True)
class BoundarySets:
    majority: frozenset[int]      # V>=: strictly more live ancestors than non-ancestors
    boundary: frozenset[int]      # B>=: members of V>= with no parent in V>=
    below: frozenset[int]         # B<: live parents of B>= members

    def pool(self) -> frozenset[int]:
        return self.boundary | self.below


def boundary_sets(state: BisectState) -> BoundarySets:
    n = state.n_live
    majority = {v for v in bits(state.candidates) if 2 * state.live_count(v) > n}
    boundary = {v for v in majority if not any(p in majority for p in state.live_parents(v))}
    below = {p for v in boundary for p in state.live_parents(v)}
    return BoundarySets(frozenset(majority), frozenset(boundary), frozenset(below))


def golden_bisect_pick(state: BisectState) -> int:
    _require_two(state)
    n = state.n_live
    best = git_bisect_pick(state)
    a = state.live_count(best)
    if golden_threshold(n, min(a, n - a)):
        return best
    pool = boundary_sets(state).pool()
    best_v, best_s = -1, -1
    for v in sorted(pool):
        a = state.live_count(v)
        s = min(a, n - a)
        if s > best_s:
            best_v, best_s = v, s
    return best_v


PICKERS: dict[str, Picker] = {"git": git_bisect_pick, "golden": golden_bisect_pick}


def build_strategy_tree(picker: Picker, state: BisectState) -> StrategyTree:
    """Full decision tree obtained by applying ``picker`` under both verdicts."""
    if state.n_live < 1:
        raise DagError("empty candidate set")
    only = state.single()
    if only is not None:
        return Leaf(only)
    q = picker(state)
    return Query(q, build_strategy_tree(picker, apply_verdict(state, q, True)),
                 build_strategy_tree(picker, apply_verdict(state, q, False)))


def worst_case_queries(picker: Picker, dag: Dag) -> int:
    return build_strategy_tree(picker, initial_state(dag)).height


# -- sessions ------------------------------------------------------------

Oracle = Union[int, Callable[[int], bool]]


@dataclass
class Step:
    query: int
    verdict: str
    live: int

    def to_json(self) -> str:
        return json.dumps({"query": self.query, "verdict": self.verdict, "live": self.live})


@dataclass
class SessionResult:
    faulty: int
    queries: int
    transcript: list[Step] = field(default_factory=list)


def run_session(picker: Picker, dag: Dag, oracle: Oracle,
                state: Optional[BisectState] = None) -> SessionResult:
    """Run the bisection loop until one candidate remains.

    ``oracle`` is either the faulty vertex (simulated search) or a callable
    answering ``True`` when the queried vertex is bugged.
    """
    state = state or initial_state(dag)
    if isinstance(oracle, int):
        faulty = oracle
        if not state.is_live(faulty):
            raise DagError(f"vertex {dag.label(faulty)} is not a candidate")
        ask = lambda q: state.table.is_ancestor(faulty, q)  # noqa: E731
    else:
        ask = oracle
    transcript = []
    while state.n_live > 1:
        q = picker(state)
        bugged = bool(ask(q))
        state = apply_verdict(state, q, bugged)
        transcript.append(Step(q, "bugged" if bugged else "clean", state.n_live))
    return SessionResult(state.single(), len(transcript), transcript)


def session_lengths(picker: Picker, dag: Dag) -> dict[int, int]:
    """Number of queries for every possible faulty commit."""
    state = initial_state(dag)
    return {f: run_session(picker, dag, f, state).queries for f in bits(state.candidates)}


def stream_oracle(dag: Dag, inp: TextIO = sys.stdin, out: TextIO = sys.stdout,
                  name: Callable[[int], object] = str) -> Callable[[int], bool]:
    """Interactive oracle: prints ``? <vertex>`` and reads ``b`` or ``c``."""

    def ask(q: int) -> bool:
        while True:
            out.write(f"? {name(q)}\n")
            out.flush()
            line = inp.readline()
            if not line:
                raise InconsistentOracleError("input closed before the search finished")
            answer = line.strip().lower()
            if answer in ("b", "bugged"):
                return True
            if answer in ("c", "clean"):
                return False
            out.write("# answer b (bugged) or c (clean)\n")

    return ask
