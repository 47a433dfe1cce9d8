"""Strategy trees: inner nodes query a vertex, leaves name the faulty commit.

The left child is followed when the queried vertex is bugged, the right one
when it is clean. A leaf with ``vertex=None`` is the "no faulty commit"
outcome used for confined instances.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from typing import Optional, Union

from .dag import AncestorTable, Dag, ancestor_table


@dataclass(frozen=True)
class Leaf:
    vertex: Optional[int]

    @property
    def height(self) -> int:
        return 0


@dataclass(frozen=True)
class Query:
    vertex: int
    bugged: "StrategyTree"
    clean: "StrategyTree"

    @property
    def height(self) -> int:
        return 1 + max(self.bugged.height, self.clean.height)


StrategyTree = Union[Leaf, Query]
NO_FAULT = Leaf(None)


def leaves(tree: StrategyTree) -> list[Optional[int]]:
    out = []
    stack = [tree]
    while stack:
        t = stack.pop()
        if isinstance(t, Leaf):
            out.append(t.vertex)
        else:
            stack.append(t.clean)
            stack.append(t.bugged)
    return out


def size(tree: StrategyTree) -> int:
    if isinstance(tree, Leaf):
        return 1
    return 1 + size(tree.bugged) + size(tree.clean)


def _check(tree: StrategyTree, table: AncestorTable, n: int, cand: int, no_fault: bool) -> bool:
    if isinstance(tree, Leaf):
        if tree.vertex is None:
            return no_fault and cand == 0
        return not no_fault and cand == 1 << tree.vertex
    if not 0 <= tree.vertex < n:
        return False
    anc = table.anc[tree.vertex]
    return (_check(tree.bugged, table, n, cand & anc, False)
            and _check(tree.clean, table, n, cand & ~anc, no_fault))


def verify_tree(tree: StrategyTree, dag: Dag, candidates: Optional[int] = None,
                table: Optional[AncestorTable] = None) -> bool:
    """Check ``tree`` is a correct strategy for ``dag``.

    Every leaf must be the single candidate consistent with the verdicts on
    its path, so the leaves are exactly the root candidates, once each.
    ``candidates`` defaults to the ancestors of the marked bugged vertex.
    """
    table = table or ancestor_table(dag)
    if candidates is None:
        candidates = table.anc[dag.bugged]
    return _check(tree, table, dag.n, candidates, False)


def verify_crsp_tree(tree: StrategyTree, dag: Dag, innocent: frozenset[int] | set[int],
                     table: Optional[AncestorTable] = None) -> bool:
    """Same check for a confined instance; the no-fault leaf is required once."""
    table = table or ancestor_table(dag)
    cand = dag.all_mask()
    for v in innocent:
        cand &= ~(1 << v)
    return _check(tree, table, dag.n, cand, True)


def tree_to_dict(tree: StrategyTree, dag: Optional[Dag] = None) -> dict:
    name = (lambda v: v) if dag is None else dag.label
    if isinstance(tree, Leaf):
        return {"leaf": None if tree.vertex is None else name(tree.vertex)}
    return {"query": name(tree.vertex),
            "bugged": tree_to_dict(tree.bugged, dag),
            "clean": tree_to_dict(tree.clean, dag)}


def tree_to_json(tree: StrategyTree, dag: Optional[Dag] = None) -> str:
    return json.dumps(tree_to_dict(tree, dag))


def tree_from_dict(d: dict, dag: Optional[Dag] = None) -> StrategyTree:
    ident = (lambda x: int(x)) if dag is None else dag.vertex
    if "leaf" in d:
        return Leaf(None if d["leaf"] is None else ident(d["leaf"]))
    return Query(ident(d["query"]), tree_from_dict(d["bugged"], dag),
                 tree_from_dict(d["clean"], dag))


def tree_to_dot(tree: StrategyTree, dag: Optional[Dag] = None, name: str = "S") -> str:
    label = (lambda v: str(v)) if dag is None else dag.label
    lines = [f"digraph {name} {{"]
    counter = 0

    def walk(t: StrategyTree) -> int:
        nonlocal counter
        me = counter
        counter += 1
        if isinstance(t, Leaf):
            text = "no fault" if t.vertex is None else label(t.vertex)
            lines.append(f'  n{me} [label="{text}", shape=box];')
            return me
        lines.append(f'  n{me} [label="{label(t.vertex)}", shape=circle];')
        b = walk(t.bugged)
        c = walk(t.clean)
        lines.append(f'  n{me} -> n{b} [label="bugged"];')
        lines.append(f'  n{me} -> n{c} [label="clean"];')
        return me

    walk(tree)
    lines.append("}")
    return "\n".join(lines) + "\n"


__all__ = ["Leaf", "Query", "StrategyTree", "NO_FAULT", "leaves", "size", "verify_tree",
           "verify_crsp_tree", "tree_to_dict", "tree_to_json", "tree_from_dict", "tree_to_dot"]
