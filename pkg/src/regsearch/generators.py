"""Graph families: paths, octopuses, combs, J_k, Fibonacci trees, figures, random DAGs.

Id layouts are fixed so that figure checks are mechanical:

* path / octopus / claw: the sink is the last id.
* comb: base vertices keep their ids, ``u_i`` gets id ``n + i - 1``.
* J_k: backbone first (each x-type path ``x_1..x_k``, then ``c``, then
  ``z_1..z_k``), then for ``d = 1..k`` the attached paths (x-type paths in
  order, then the z path), each listed from its first vertex to the vertex
  adjacent to the backbone.
* Fibonacci tree F_i: the F_{i-1} block, then the F_{i-2} block, then the sink.
* figures: id = printed label - 1, printed labels kept as vertex labels.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field
from typing import Optional, Sequence

from .dag import Dag, DagError, induced


def _check(cond: bool, msg: str) -> None:
    if not cond:
        raise DagError(msg)


def gen_path(n: int) -> Dag:
    _check(n >= 1, "path needs n >= 1")
    return Dag(n, tuple((i, i + 1) for i in range(n - 1)), n - 1)


def gen_octopus(n: int) -> Dag:
    """``n - 1`` parents of a single sink."""
    _check(n >= 1, "octopus needs n >= 1")
    return Dag(n, tuple((i, n - 1) for i in range(n - 1)), n - 1)


def gen_claw() -> Dag:
    return Dag(4, ((0, 2), (1, 2), (2, 3)), 3)


# -- comb ----------------------------------------------------------------

@dataclass(frozen=True)
class CombLabelling:
    """``base[i]`` is v_{i+1} and ``comb[i]`` is u_{i+1}, both as comb-graph ids."""

    base: tuple[int, ...]
    comb: tuple[int, ...]

    @property
    def n(self) -> int:
        return len(self.base)


def _is_topological(dag: Dag, order: Sequence[int]) -> bool:
    if sorted(order) != list(range(dag.n)):
        return False
    pos = {v: i for i, v in enumerate(order)}
    return all(pos[u] < pos[v] for u, v in dag.arcs)


def default_comb_order(dag: Dag) -> tuple[int, ...]:
    ident = tuple(range(dag.n))
    return ident if _is_topological(dag, ident) else dag.topo_order


def gen_comb(dag: Dag, order: Optional[Sequence[int]] = None) -> tuple[Dag, CombLabelling]:
    _check(dag.n >= 1, "comb needs a non-empty graph")
    if order is None:
        order = default_comb_order(dag)
    else:
        order = tuple(order)
        _check(_is_topological(dag, order), "order is not a topological order")
    n = dag.n
    u = tuple(range(n, 2 * n))
    arcs = list(dag.arcs)
    arcs += [(order[i], u[i]) for i in range(n)]
    arcs += [(u[i], u[i + 1]) for i in range(n - 1)]
    labels = tuple(dag.label(v) for v in range(n)) + tuple(f"u{i + 1}" for i in range(n))
    return Dag(2 * n, tuple(arcs), u[-1], labels), CombLabelling(tuple(order), u)


def gen_comb_even_tweak(dag: Dag, order: Optional[Sequence[int]] = None) -> Dag:
    """Comb without the arc ``v_{n/2} -> u_{n/2}`` (only defined for even n)."""
    _check(dag.n % 2 == 0, "the tweak needs an even number of base vertices")
    comb, lab = gen_comb(dag, order)
    half = dag.n // 2 - 1
    drop = (lab.base[half], lab.comb[half])
    arcs = tuple(a for a in comb.arcs if a != drop)
    return Dag(comb.n, arcs, comb.marked_bugged, comb.labels)


def gen_pathological(k: int) -> Dag:
    """comb(octopus(2^(k-1) - 1)), 2^k - 2 vertices."""
    _check(k >= 3, "pathological family needs k >= 3")
    return gen_comb(gen_octopus(2 ** (k - 1) - 1))[0]


# -- J_k -----------------------------------------------------------------

@dataclass
class JkConstruction:
    """A built J_k with the roles of its named vertices.

    ``x[j][i - 1]`` is vertex x_i of the j-th x-type path (``j = 0`` is x,
    ``j = 1`` is y for the binary family). ``stage_sizes[d]`` is the vertex
    count of the d-th stage; since ids grow with ``d``, stage d is induced
    by the first ``stage_sizes[d]`` ids.
    """

    k: int
    delta: int
    dag: Dag
    x: list[list[int]]
    c: int
    z: list[int]
    z_prime: list[int]
    ells: list[int]
    stage_sizes: list[int]
    parity_fixed: bool = False
    blocks: list[list[list[int]]] = field(default_factory=list)

    def stage(self, d: int) -> Dag:
        n_d = self.stage_sizes[d]
        return induced(self.dag, list(range(n_d)), self.z[-1])


def _x_name(delta: int, j: int) -> str:
    if delta == 2:
        return "xy"[j]
    return f"x{j + 1}_"


def jk_construction(k: int, delta: int = 2, parity_fix: bool = True) -> JkConstruction:
    _check(k >= 1, "J_k needs k >= 1")
    _check(delta >= 2, "J_k needs delta >= 2")
    labels: list[str] = []
    arcs: list[tuple[int, int]] = []

    def new(name: str) -> int:
        labels.append(name)
        return len(labels) - 1

    x = [[new(f"{_x_name(delta, j)}{i}") for i in range(1, k + 1)] for j in range(delta)]
    c = new("c")
    z = [new(f"z{i}") for i in range(1, k + 1)]
    for path in x:
        arcs += list(zip(path, path[1:])) + [(path[-1], c)]
    chain = [c] + z
    arcs += list(zip(chain, chain[1:]))

    ells: list[int] = []
    sizes = [len(labels)]
    z_prime: list[int] = []
    blocks = []
    fixed = False
    for d in range(1, k + 1):
        ell = sizes[-1] // (delta * (delta + 1)) + 1
        # +delta+1 vertices keeps the family odd only when delta+1 is odd
        if d == k and parity_fix and (sizes[-1] + (delta + 1) * ell) % 2 == 0 and delta % 2 == 0:
            ell += 1
            fixed = True
        ells.append(ell)
        block = []
        tails = []
        for j in range(delta):
            p = [new(f"p{_x_name(delta, j)}{d}.{t}") for t in range(1, ell + 1)]
            arcs += list(zip(p, p[1:])) + [(p[-1], x[j][k - d])]
            tails.append(p[-1])
            block.append(p)
        q = [new(f"pz{d}.{t}") for t in range(1, ell)] + [new(f"z'{d}")]
        arcs += list(zip(q, q[1:])) + [(q[-1], z[d - 1])]
        arcs += [(t, q[0]) for t in tails]
        block.append(q)
        blocks.append(block)
        z_prime.append(q[-1])
        sizes.append(len(labels))
    dag = Dag(len(labels), tuple(arcs), z[-1], tuple(labels))
    return JkConstruction(k, delta, dag, x, c, z, z_prime, ells, sizes, fixed, blocks)


def gen_jk(k: int, parity_fix: bool = True) -> Dag:
    return jk_construction(k, 2, parity_fix).dag


def gen_jk_delta(k: int, delta: int, parity_fix: bool = True) -> Dag:
    return jk_construction(k, delta, parity_fix).dag


# -- Fibonacci trees -----------------------------------------------------

def _fib_blocks(i: int) -> tuple[int, list[tuple[int, int]]]:
    """(vertex count, arcs) of F_i with ids 0..|F_i|-1, sink last."""
    if i == 1:
        return 1, []
    if i == 2:
        return 2, [(0, 1)]
    n1, a1 = _fib_blocks(i - 1)
    n2, a2 = _fib_blocks(i - 2)
    sink = n1 + n2
    arcs = a1 + [(u + n1, v + n1) for u, v in a2] + [(n1 - 1, sink), (n1 + n2 - 1, sink)]
    return sink + 1, arcs


def gen_fibonacci(i: int) -> Dag:
    _check(i >= 1, "Fibonacci tree needs i >= 1")
    n, arcs = _fib_blocks(i)
    return Dag(n, tuple(arcs), n - 1)


def gen_fibonacci_prime(i: int) -> Dag:
    """F_i plus one new sink below F_i's sink."""
    _check(i >= 1, "Fibonacci tree needs i >= 1")
    n, arcs = _fib_blocks(i)
    return Dag(n + 1, tuple(arcs) + ((n - 1, n),), n)


def fibonacci_size(i: int) -> int:
    """fib_{i+2} - 1 with fib_1 = fib_2 = 1."""
    a, b = 1, 1
    for _ in range(i):
        a, b = b, a + b
    return b - 1


# -- figures -------------------------------------------------------------

_FIGURES: dict[str, tuple[int, list[tuple[int, int]], int]] = {
    # 21-vertex worked example; sink 21
    "fig4": (21, [(1, 2), (2, 3), (3, 4), (4, 5), (5, 7), (6, 7), (7, 14),
                  (8, 9), (9, 10), (10, 11), (11, 12), (12, 13), (13, 14),
                  (14, 15), (15, 16), (16, 21), (17, 18), (18, 19), (19, 20), (20, 21),
                  (4, 17), (9, 17), (14, 19)], 21),
    # 13-vertex counterexample to the two-step golden lemma
    "fig9": (13, [(1, 2), (2, 3), (3, 4), (5, 6), (6, 7), (7, 8), (4, 9), (8, 9),
                  (9, 10), (10, 11), (11, 12), (12, 13)], 13),
    "fig6-binary": (8, [(1, 5), (2, 3), (4, 5), (5, 6), (3, 1), (3, 4), (3, 7), (7, 8),
                        (8, 6)], 6),
    "fig6-nonbinary": (8, [(1, 2), (2, 5), (4, 5), (8, 5), (5, 6), (3, 1), (3, 7), (7, 8),
                           (1, 4)], 6),
    # lone vertex with n/3 <= |v| <= (2n+1)/3 is label 5
    "fig8": (8, [(1, 3), (2, 4), (3, 5), (4, 5), (5, 7), (7, 8), (2, 6), (6, 7)], 8),
    # confined-instance example; innocent labels 7, 8, 9
    "fig14": (9, [(1, 3), (2, 3), (3, 4), (4, 5), (3, 6), (6, 5), (6, 7), (7, 8), (8, 9),
                  (5, 9)], 9),
}

FIGURES = tuple(_FIGURES)


def gen_fig_example(which: str) -> Dag:
    if which not in _FIGURES:
        raise DagError(f"unknown figure {which!r}; choose from {', '.join(FIGURES)}")
    n, arcs, sink = _FIGURES[which]
    return Dag(n, tuple((u - 1, v - 1) for u, v in arcs), sink - 1,
               tuple(str(i) for i in range(1, n + 1)))


# -- random --------------------------------------------------------------

def gen_random_delta(n: int, delta: int, seed: int = 0, extra: Optional[int] = None) -> Dag:
    """Seeded single-sink DAG with indegree at most ``delta``.

    Ids are a topological order and ``n - 1`` is the sink. Uses
    ``random.Random(seed)`` (Mersenne Twister):

    1. for ``v = n-2`` down to ``0``: one arc ``v -> w`` with ``w`` drawn
       uniformly among later vertices whose indegree is below ``delta``
       (such a ``w`` always exists, and every vertex reaches the sink);
    2. ``extra`` times (default ``n // 3``): draw ``u < w`` uniformly and add
       ``u -> w`` unless it exists or ``w`` is full.
    """
    _check(n >= 1, "random DAG needs n >= 1")
    _check(delta >= 1, "delta must be positive")
    rng = random.Random(seed)
    indeg = [0] * n
    arcs: list[tuple[int, int]] = []
    present = set()
    for v in range(n - 2, -1, -1):
        room = [w for w in range(v + 1, n) if indeg[w] < delta]
        w = room[rng.randrange(len(room))]
        arcs.append((v, w))
        present.add((v, w))
        indeg[w] += 1
    if extra is None:
        extra = n // 3
    if n >= 2:
        for _ in range(extra):
            u = rng.randrange(n - 1)
            w = rng.randrange(u + 1, n)
            if (u, w) not in present and indeg[w] < delta:
                arcs.append((u, w))
                present.add((u, w))
                indeg[w] += 1
    return Dag(n, tuple(arcs), n - 1)


def gen_random_binary(n: int, seed: int = 0, extra: Optional[int] = None) -> Dag:
    return gen_random_delta(n, 2, seed, extra)


def gen_random_dag(n: int, seed: int = 0, p: float = 0.3) -> Dag:
    """Unbounded-indegree single-sink DAG: step 1 above, then each pair with prob ``p``."""
    rng = random.Random(seed)
    arcs = set()
    for v in range(n - 1):
        arcs.add((v, rng.randrange(v + 1, n)))
    for u in range(n):
        for w in range(u + 1, n):
            if rng.random() < p:
                arcs.add((u, w))
    return Dag(n, tuple(sorted(arcs)), n - 1)
