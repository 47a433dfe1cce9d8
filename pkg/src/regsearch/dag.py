"""DAG model, ancestor bit-vectors, scores and candidate pruning.

Vertex ids are dense integers ``0..n-1``. Vertex sets are Python ints used
as bit-vectors: bit ``v`` set means vertex ``v`` belongs to the set.
"""

from __future__ import annotations

import heapq
from dataclasses import dataclass, field
from typing import Iterable, Iterator, Optional, Sequence


class DagError(ValueError):
    """Raised for malformed or invalid graphs."""


class InconsistentOracleError(RuntimeError):
    """A verdict left no possible faulty commit."""


def bits(mask: int) -> Iterator[int]:
    """Yield the indices of the set bits of ``mask`` in increasing order."""
    while mask:
        low = mask & -mask
        yield low.bit_length() - 1
        mask ^= low


def mask_of(vertices: Iterable[int]) -> int:
    m = 0
    for v in vertices:
        m |= 1 << v
    return m


@dataclass(frozen=True)
class Dag:
    """Immutable directed acyclic graph.

    ``arcs`` holds ``(parent, child)`` pairs. ``labels`` are optional display
    names (figures number their vertices from 1, for instance); they never
    affect the algorithms, which work on ids only.
    """

    n: int
    arcs: tuple[tuple[int, int], ...]
    marked_bugged: Optional[int] = None
    labels: Optional[tuple[str, ...]] = None
    parents: tuple[tuple[int, ...], ...] = field(init=False, repr=False, compare=False)
    children: tuple[tuple[int, ...], ...] = field(init=False, repr=False, compare=False)
    topo_order: tuple[int, ...] = field(init=False, repr=False, compare=False)

    def __post_init__(self) -> None:
        object.__setattr__(self, "arcs", tuple((int(u), int(v)) for u, v in self.arcs))
        if self.n < 0:
            raise DagError(f"negative vertex count {self.n}")
        parents: list[list[int]] = [[] for _ in range(self.n)]
        children: list[list[int]] = [[] for _ in range(self.n)]
        seen = set()
        for u, v in self.arcs:
            if not (0 <= u < self.n and 0 <= v < self.n):
                raise DagError(f"arc {u}->{v} references a vertex outside 0..{self.n - 1}")
            if u == v:
                raise DagError(f"self-loop on vertex {u}")
            if (u, v) in seen:
                raise DagError(f"duplicate arc {u}->{v}")
            seen.add((u, v))
            parents[v].append(u)
            children[u].append(v)
        if self.marked_bugged is not None and not 0 <= self.marked_bugged < self.n:
            raise DagError(f"marked vertex {self.marked_bugged} is not a vertex")
        if self.labels is not None:
            object.__setattr__(self, "labels", tuple(str(x) for x in self.labels))
            if len(self.labels) != self.n:
                raise DagError("labels must name every vertex exactly once")
        object.__setattr__(self, "parents", tuple(tuple(sorted(p)) for p in parents))
        object.__setattr__(self, "children", tuple(tuple(sorted(c)) for c in children))
        object.__setattr__(self, "topo_order", _kahn(self.n, self.parents, self.children))

    def label(self, v: int) -> str:
        return self.labels[v] if self.labels is not None else str(v)

    def vertex(self, label: str) -> int:
        """Inverse of :meth:`label`."""
        if self.labels is None:
            v = int(label)
            if not 0 <= v < self.n:
                raise KeyError(label)
            return v
        return self.labels.index(str(label))

    def sinks(self) -> list[int]:
        return [v for v in range(self.n) if not self.children[v]]

    @property
    def bugged(self) -> int:
        """The marked bugged vertex, defaulting to the unique sink."""
        if self.marked_bugged is not None:
            return self.marked_bugged
        sinks = self.sinks()
        if len(sinks) != 1:
            raise DagError("no marked bugged vertex and the sink is not unique")
        return sinks[0]

    def with_marked(self, b: Optional[int]) -> "Dag":
        return Dag(self.n, self.arcs, b, self.labels)

    def all_mask(self) -> int:
        return (1 << self.n) - 1


def _kahn(n: int, parents, children) -> tuple[int, ...]:
    indeg = [len(p) for p in parents]
    heap = [v for v in range(n) if indeg[v] == 0]
    heapq.heapify(heap)
    order = []
    while heap:
        v = heapq.heappop(heap)
        order.append(v)
        for c in children[v]:
            indeg[c] -= 1
            if indeg[c] == 0:
                heapq.heappush(heap, c)
    if len(order) != n:
        raise DagError("graph contains a directed cycle")
    return tuple(order)


def topological_order(dag: Dag) -> tuple[int, ...]:
    """Kahn order, smallest id first among available vertices."""
    return dag.topo_order


@dataclass(frozen=True)
class AncestorTable:
    """Per-vertex ancestor bit-vectors; every vertex is its own ancestor."""

    anc: tuple[int, ...]

    def count(self, v: int) -> int:
        return self.anc[v].bit_count()

    def ancestors(self, v: int) -> list[int]:
        return list(bits(self.anc[v]))

    def is_ancestor(self, u: int, v: int) -> bool:
        return bool(self.anc[v] >> u & 1)

    def counts(self) -> list[int]:
        return [a.bit_count() for a in self.anc]


def ancestor_table(dag: Dag) -> AncestorTable:
    anc = [0] * dag.n
    for v in dag.topo_order:
        m = 1 << v
        for p in dag.parents[v]:
            m |= anc[p]
        anc[v] = m
    return AncestorTable(tuple(anc))


def descendants_mask(dag: Dag, table: AncestorTable, v: int) -> int:
    return mask_of(u for u in range(dag.n) if table.anc[u] >> v & 1)


@dataclass(frozen=True)
class BisectState:
    """Live search state: the candidate set still possibly faulty."""

    dag: Dag
    table: AncestorTable
    candidates: int

    @property
    def n_live(self) -> int:
        return self.candidates.bit_count()

    def live(self) -> list[int]:
        return list(bits(self.candidates))

    def is_live(self, v: int) -> bool:
        return bool(self.candidates >> v & 1)

    def live_count(self, v: int) -> int:
        """Number of live ancestors of ``v``."""
        return (self.table.anc[v] & self.candidates).bit_count()

    def live_parents(self, v: int) -> list[int]:
        return [p for p in self.dag.parents[v] if self.candidates >> p & 1]

    def single(self) -> Optional[int]:
        if self.n_live == 1:
            return self.candidates.bit_length() - 1
        return None


def initial_state(dag: Dag, table: Optional[AncestorTable] = None) -> BisectState:
    """State whose candidates are the ancestors of the marked bugged vertex."""
    return prune_to_ancestors(dag, dag.bugged, table)


def prune_to_ancestors(dag: Dag, b: int, table: Optional[AncestorTable] = None) -> BisectState:
    if not 0 <= b < dag.n:
        raise DagError(f"vertex {b} is not in the graph")
    table = table or ancestor_table(dag)
    return BisectState(dag, table, table.anc[b])


def score(state: BisectState, v: int) -> int:
    if not state.is_live(v):
        raise DagError(f"vertex {state.dag.label(v)} is not a live candidate")
    a = state.live_count(v)
    return min(a, state.n_live - a)


def scores(state: BisectState) -> dict[int, int]:
    n = state.n_live
    out = {}
    for v in bits(state.candidates):
        a = (state.table.anc[v] & state.candidates).bit_count()
        out[v] = min(a, n - a)
    return out


def apply_verdict(state: BisectState, q: int, bugged: bool) -> BisectState:
    """Shrink the candidate set after learning the status of ``q``.

    ``q`` need not be live; querying an eliminated vertex is legal, just
    never chosen by the greedy pickers.
    """
    anc = state.table.anc[q]
    cand = state.candidates & anc if bugged else state.candidates & ~anc
    if not cand:
        verdict = "bugged" if bugged else "clean"
        raise InconsistentOracleError(
            f"answer {verdict} for {state.dag.label(q)} leaves no candidate")
    return BisectState(state.dag, state.table, cand)


def max_indegree(dag: Dag) -> int:
    return max((len(p) for p in dag.parents), default=0)


def is_binary(dag: Dag) -> bool:
    return max_indegree(dag) <= 2


def induced(dag: Dag, keep: Sequence[int], marked: Optional[int] = None) -> Dag:
    """Induced subgraph on ``keep``, relabelled densely in the given order."""
    index = {v: i for i, v in enumerate(keep)}
    arcs = [(index[u], index[v]) for u, v in dag.arcs if u in index and v in index]
    labels = tuple(dag.label(v) for v in keep)
    return Dag(len(keep), tuple(arcs), None if marked is None else index[marked], labels)


# -- text format ---------------------------------------------------------

def parse_dag(text: str) -> Dag:
    """Parse the line-oriented DAG format.

    ``dag <n> <m>`` header, ``m`` lines ``arc <u> <v>``, optional
    ``sink <b>`` and ``label <v> <name>``; ``#`` starts a comment.
    """
    dag, _, _ = _parse(text, allow_crsp=False)
    return dag


def _parse(text: str, allow_crsp: bool):
    n = m = None
    arcs: list[tuple[int, int]] = []
    sink = None
    labels: dict[int, str] = {}
    innocent: list[int] = []
    budget = None
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        parts = line.split()
        key, args = parts[0], parts[1:]
        try:
            if key == "dag" and len(args) == 2 and n is None:
                n, m = int(args[0]), int(args[1])
                if n < 0 or m < 0:
                    raise ValueError
            elif n is None:
                raise DagError(f"line {lineno}: expected 'dag <n> <m>' header first")
            elif key == "arc" and len(args) == 2:
                arcs.append((int(args[0]), int(args[1])))
            elif key == "sink" and len(args) == 1 and sink is None:
                sink = int(args[0])
            elif key == "label" and len(args) == 2:
                labels[int(args[0])] = args[1]
            elif allow_crsp and key == "innocent" and len(args) == 1:
                innocent.append(int(args[0]))
            elif allow_crsp and key == "budget" and len(args) == 1 and budget is None:
                budget = int(args[0])
            else:
                raise DagError(f"line {lineno}: malformed line {raw.strip()!r}")
        except ValueError as exc:
            if isinstance(exc, DagError):
                raise
            raise DagError(f"line {lineno}: malformed line {raw.strip()!r}") from None
    if n is None:
        raise DagError("missing 'dag <n> <m>' header")
    if len(arcs) != m:
        raise DagError(f"header announces {m} arcs, found {len(arcs)}")
    for v in labels:
        if not 0 <= v < n:
            raise DagError(f"label for dangling vertex id {v}")
    label_tuple = tuple(labels.get(v, str(v)) for v in range(n)) if labels else None
    for v in innocent:
        if not 0 <= v < n:
            raise DagError(f"innocent dangling vertex id {v}")
    return Dag(n, tuple(arcs), sink, label_tuple), innocent, budget


def format_dag(dag: Dag, extra: Iterable[str] = ()) -> str:
    lines = [f"dag {dag.n} {len(dag.arcs)}"]
    lines += [f"arc {u} {v}" for u, v in dag.arcs]
    if dag.marked_bugged is not None:
        lines.append(f"sink {dag.marked_bugged}")
    if dag.labels is not None and any(dag.labels[v] != str(v) for v in range(dag.n)):
        lines += [f"label {v} {dag.labels[v]}" for v in range(dag.n)]
    lines.extend(extra)
    return "\n".join(lines) + "\n"


# -- DOT export ----------------------------------------------------------

def export_dot(dag: Dag, state: Optional[BisectState] = None,
               highlights: Iterable[int] = (), name: str = "D") -> str:
    """Graphviz digraph; each vertex shows ``label`` and ancestors/non-ancestors.

    Counts are relative to ``state`` when given, else to the whole graph.
    Vertices outside the live candidate set are drawn dashed.
    """
    table = state.table if state is not None else ancestor_table(dag)
    universe = state.candidates if state is not None else dag.all_mask()
    total = universe.bit_count()
    marked = set(highlights)
    lines = [f"digraph {name} {{"]
    for v in range(dag.n):
        a = (table.anc[v] & universe).bit_count()
        attrs = [f'label="{dag.label(v)}\\n{a}/{total - a}"']
        if v in marked:
            attrs.append("style=filled")
            attrs.append("fillcolor=orange")
        elif state is not None and not state.is_live(v):
            attrs.append("style=dashed")
        lines.append(f"  {v} [{', '.join(attrs)}];")
    for u, v in dag.arcs:
        lines.append(f"  {u} -> {v};")
    lines.append("}")
    return "\n".join(lines) + "\n"
