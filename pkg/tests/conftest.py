import itertools

from hypothesis import strategies as st

from regsearch.dag import Dag
from regsearch.generators import gen_random_binary, gen_random_delta


@st.composite
def dags(draw, max_n=12, min_n=1):
    """Random DAG on ids in topological order; every vertex reaches the last one."""
    n = draw(st.integers(min_n, max_n))
    arcs = {(v, draw(st.integers(v + 1, n - 1))) for v in range(n - 1)}
    pairs = list(itertools.combinations(range(n), 2))
    if pairs:
        arcs.update(draw(st.lists(st.sampled_from(pairs), max_size=n)))
    return Dag(n, tuple(sorted(arcs)))


def binary_dags(max_n=60, min_n=1):
    return st.builds(lambda n, seed, extra: gen_random_binary(n, seed, extra=extra % (n + 1)),
                     st.integers(min_n, max_n), st.integers(0, 2 ** 30), st.integers(0, 200))


def delta_dags(delta, max_n=60, min_n=1):
    return st.builds(lambda n, seed, extra: gen_random_delta(n, delta, seed, extra=extra % (n + 1)),
                     st.integers(min_n, max_n), st.integers(0, 2 ** 30), st.integers(0, 200))


def closure_by_search(dag):
    """u in result[v] iff a directed path u -> ... -> v exists (v included)."""
    out = []
    for v in range(dag.n):
        seen = {v}
        stack = [v]
        while stack:
            w = stack.pop()
            for p in dag.parents[w]:
                if p not in seen:
                    seen.add(p)
                    stack.append(p)
        out.append(seen)
    return out
