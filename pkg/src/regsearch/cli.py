"""Command-line interface.

Vertices are named by their labels (plain ids for unlabelled graphs), so
figure graphs use the same numbering as the drawings. JSON goes to standard
output with a fixed key order; human-readable tables go to standard error.
"""

from __future__ import annotations

import argparse
import json
import os
import re
import sys
from typing import Optional, Sequence

from . import generators as gen
from .claims import CLAIMS, run_claims
from .dag import Dag, DagError, InconsistentOracleError, export_dot, format_dag, initial_state, parse_dag
from .optimal import (DEFAULT_CAP, SolverCapExceeded, crsp_optimal_queries, crsp_optimal_strategy,
                      optimal_queries, optimal_strategy)
from .reduction import (FormulaError, crsp_to_rsp, format_crsp, parse_bsat, parse_crsp,
                        preprocess_pure_literals, reduce_bsat_to_crsp, rsp_to_crsp)
from .strategies import PICKERS, build_strategy_tree, run_session, session_lengths, stream_oracle
from .tree import tree_to_dict, tree_to_dot

EXIT_OK, EXIT_USAGE, EXIT_INVALID, EXIT_CLAIM = 0, 1, 2, 3

FAMILIES = ("path", "octopus", "claw", "comb", "comb-even-tweak", "pathological", "jk",
            "jk-delta", "fib", "fib-prime", "fig4", "fig9", "random-binary", "random-delta")

_NAMED = {
    "path": gen.gen_path, "octopus": gen.gen_octopus, "fib": gen.gen_fibonacci,
    "fibprime": gen.gen_fibonacci_prime, "pathological": gen.gen_pathological, "jk": gen.gen_jk,
}


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_USAGE, f"{self.prog}: error: {message}\n")


def resolve_dag(spec: str) -> Dag:
    """A DAG file path, or a built-in name such as ``fig4``, ``path5``, ``octopus6``, ``claw``."""
    if os.path.exists(spec):
        with open(spec) as fh:
            return parse_dag(fh.read())
    if spec in gen.FIGURES:
        return gen.gen_fig_example(spec)
    if spec == "claw":
        return gen.gen_claw()
    m = re.fullmatch(r"([a-z]+)(\d+)", spec)
    if m and m.group(1) in _NAMED:
        return _NAMED[m.group(1)](int(m.group(2)))
    raise UsageError(f"no such file or built-in graph: {spec!r} "
                     f"(built-ins: {', '.join(gen.FIGURES)}, claw, "
                     f"{', '.join(k + '<N>' for k in _NAMED)})")


def ident(dag: Dag, v: Optional[int]):
    if v is None:
        return None
    label = dag.label(v)
    return int(label) if label.isdigit() else label


def vertex_arg(dag: Dag, name: str) -> int:
    try:
        return dag.vertex(name)
    except (KeyError, ValueError):
        raise DagError(f"no vertex named {name!r}") from None


def emit(text: str, out: Optional[str]) -> None:
    if out:
        with open(out, "w") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def dumps(obj) -> str:
    return json.dumps(obj) + "\n"


def _need(args, *names):
    for name in names:
        if getattr(args, name) is None:
            raise UsageError(f"{args.family} needs --{name.replace('_', '-')}")


# -- commands ------------------------------------------------------------

def cmd_gen(args) -> int:
    f = args.family
    fix = not args.no_parity_fix
    if f in ("path", "octopus", "random-binary", "random-delta"):
        _need(args, "n")
    if f in ("pathological", "jk", "jk-delta"):
        _need(args, "k")
    if f in ("fib", "fib-prime"):
        _need(args, "i")
    if f in ("jk-delta", "random-delta"):
        _need(args, "delta")
    if f in ("comb", "comb-even-tweak"):
        _need(args, "dag")
    if f == "path":
        dag = gen.gen_path(args.n)
    elif f == "octopus":
        dag = gen.gen_octopus(args.n)
    elif f == "claw":
        dag = gen.gen_claw()
    elif f == "comb":
        dag, _ = gen.gen_comb(resolve_dag(args.dag))
    elif f == "comb-even-tweak":
        dag = gen.gen_comb_even_tweak(resolve_dag(args.dag))
    elif f == "pathological":
        dag = gen.gen_pathological(args.k)
    elif f == "jk":
        dag = gen.gen_jk(args.k, fix)
    elif f == "jk-delta":
        dag = gen.gen_jk_delta(args.k, args.delta, fix)
    elif f == "fib":
        dag = gen.gen_fibonacci(args.i)
    elif f == "fib-prime":
        dag = gen.gen_fibonacci_prime(args.i)
    elif f in ("fig4", "fig9"):
        dag = gen.gen_fig_example(f)
    elif f == "random-binary":
        dag = gen.gen_random_binary(args.n, args.seed)
    else:
        dag = gen.gen_random_delta(args.n, args.delta, args.seed)
    emit(format_dag(dag), args.output)
    return EXIT_OK


def _dag_and_strategy(args) -> tuple[Dag, str, str]:
    strategy = args.strategy or args.strategy_pos or "git"
    spec = args.dag or args.dag_pos
    if spec is None:
        raise UsageError("a graph is required (positional or --dag)")
    return resolve_dag(spec), strategy, spec


def cmd_run(args) -> int:
    dag, strategy, spec = _dag_and_strategy(args)
    picker = PICKERS[strategy]
    modes = sum([args.worst_case, args.faulty is not None, args.interactive])
    if modes > 1:
        raise UsageError("choose one of --worst-case, --faulty, --interactive")
    if args.faulty is not None or args.interactive:
        if args.interactive:
            oracle = stream_oracle(dag, sys.stdin, sys.stderr, lambda v: ident(dag, v))
        else:
            oracle = vertex_arg(dag, args.faulty)
        result = run_session(picker, dag, oracle)
        for step in result.transcript:
            sys.stdout.write(dumps({"query": ident(dag, step.query), "verdict": step.verdict,
                                    "live": step.live}))
        sys.stdout.write(dumps({"faulty": ident(dag, result.faulty), "queries": result.queries}))
        return EXIT_OK
    lengths = session_lengths(picker, dag)
    worst = max(lengths.values())
    report = {"dag": spec, "strategy": strategy, "worst_case": worst,
              "per_faulty": {str(ident(dag, v)): q for v, q in lengths.items()},
              "optimal": None, "ratio": None}
    if args.optimal:
        opt = optimal_queries(dag, args.cap)
        report["optimal"] = opt
        report["ratio"] = worst / opt if opt else None
    sys.stdout.write(dumps(report))
    print(f"{spec}: {strategy} worst case {worst} over {len(lengths)} candidates", file=sys.stderr)
    return EXIT_OK


def cmd_tree(args) -> int:
    dag, strategy, _ = _dag_and_strategy(args)
    if strategy == "optimal":
        tree = optimal_strategy(dag, args.cap)
    else:
        tree = build_strategy_tree(PICKERS[strategy], initial_state(dag))
    if args.json:
        emit(dumps({"height": tree.height, "tree": tree_to_dict(tree, dag)}), args.output)
    else:
        emit(tree_to_dot(tree, dag), args.output)
    print(f"height {tree.height}", file=sys.stderr)
    return EXIT_OK


def cmd_opt(args) -> int:
    spec = args.dag or args.dag_pos
    if spec is None:
        raise UsageError("a graph is required (positional or --dag)")
    dag = resolve_dag(spec)
    report = {"dag": spec, "optimal": optimal_queries(dag, args.cap)}
    if args.tree:
        report["tree"] = tree_to_dict(optimal_strategy(dag, args.cap), dag)
    sys.stdout.write(dumps(report))
    return EXIT_OK


def _read(path: str) -> str:
    if path == "-":
        return sys.stdin.read()
    if not os.path.exists(path):
        raise UsageError(f"no such file: {path!r}")
    with open(path) as fh:
        return fh.read()


def cmd_crsp_opt(args) -> int:
    inst = parse_crsp(_read(args.instance))
    opt = crsp_optimal_queries(inst, args.cap)
    report = {"optimal": opt, "budget": inst.budget, "within_budget": opt <= inst.budget}
    if args.tree:
        report["tree"] = tree_to_dict(crsp_optimal_strategy(inst, args.cap), inst.dag)
    sys.stdout.write(dumps(report))
    return EXIT_OK


def cmd_reduce(args) -> int:
    f = parse_bsat(_read(args.cnf))
    pre = preprocess_pure_literals(f)
    if len(pre.clauses) != len(f.clauses):
        print(f"dropped {len(f.clauses) - len(pre.clauses)} clauses of thrice-occurring literals",
              file=sys.stderr)
    inst, _ = reduce_bsat_to_crsp(pre)
    emit(format_crsp(inst), args.output)
    print(f"{inst.dag.n} vertices, {len(inst.innocent)} innocent, budget {inst.budget}",
          file=sys.stderr)
    return EXIT_OK


def cmd_transform(args) -> int:
    text = _read(args.input)
    if args.direction == "crsp-to-rsp":
        inst = parse_crsp(text)
        if not inst.innocent_closed():
            print("warning: an innocent vertex is an ancestor of a suspect; "
                  "the optimum may not be preserved", file=sys.stderr)
        emit(format_dag(crsp_to_rsp(inst)), args.output)
    else:
        dag = parse_dag(text)
        b = None if args.sink is None else vertex_arg(dag, args.sink)
        emit(format_crsp(rsp_to_crsp(dag, b, args.budget)), args.output)
    return EXIT_OK


def cmd_export_dot(args) -> int:
    spec = args.dag or args.dag_pos
    if spec is None:
        raise UsageError("a graph is required (positional or --dag)")
    dag = resolve_dag(spec)
    highlights = [vertex_arg(dag, h) for h in args.highlight]
    emit(export_dot(dag, None, highlights), args.output)
    return EXIT_OK


def cmd_verify(args) -> int:
    names = args.suite or ["all"]
    if "all" in names:
        names = list(CLAIMS)
    unknown = [n for n in names if n not in CLAIMS]
    if unknown:
        raise UsageError(f"unknown claim {unknown[0]!r}; available: all, {', '.join(CLAIMS)}")
    rows = run_claims(names)
    for row in rows:
        sys.stdout.write(dumps(row.to_dict()))
        status = "PASS" if row.passed else "FAIL"
        print(f"{status}  {row.claim:<13} {row.case}: expected {row.expected}, got {row.observed}",
              file=sys.stderr)
    return EXIT_OK if all(r.passed for r in rows) else EXIT_CLAIM


# -- parser --------------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    p = _Parser(prog="regsearch", description="Regression search on version-control DAGs.")
    sub = p.add_subparsers(dest="command", required=True, parser_class=_Parser)

    def graph_args(sp, positional_strategy=False, strategies=tuple(PICKERS)):
        if positional_strategy:
            sp.add_argument("strategy_pos", nargs="?", choices=strategies, metavar="STRATEGY")
            sp.add_argument("--strategy", choices=strategies)
        sp.add_argument("dag_pos", nargs="?", metavar="DAG",
                        help="graph file or built-in name (fig4, path5, octopus6, claw, fib5, ...)")
        sp.add_argument("--dag", help="graph file or built-in name")

    g = sub.add_parser("gen", help="generate a graph family")
    g.add_argument("family", choices=FAMILIES)
    g.add_argument("--n", type=int)
    g.add_argument("--k", type=int)
    g.add_argument("--i", type=int)
    g.add_argument("--delta", type=int)
    g.add_argument("--seed", type=int, default=0)
    g.add_argument("--dag", help="base graph for comb families")
    g.add_argument("--no-parity-fix", action="store_true")
    g.add_argument("-o", "--output")
    g.set_defaults(func=cmd_gen)

    r = sub.add_parser("run", help="run git or golden bisect")
    graph_args(r, positional_strategy=True)
    r.add_argument("--worst-case", action="store_true")
    r.add_argument("--faulty", metavar="ID")
    r.add_argument("--interactive", action="store_true")
    r.add_argument("--optimal", action="store_true", help="also solve exactly and report the ratio")
    r.add_argument("--cap", type=int, default=DEFAULT_CAP)
    r.set_defaults(func=cmd_run)

    t = sub.add_parser("tree", help="emit a strategy tree as DOT (or JSON)")
    graph_args(t, positional_strategy=True, strategies=(*PICKERS, "optimal"))
    t.add_argument("--json", action="store_true")
    t.add_argument("--cap", type=int, default=DEFAULT_CAP)
    t.add_argument("-o", "--output")
    t.set_defaults(func=cmd_tree)

    o = sub.add_parser("opt", help="exact optimal worst-case query count")
    graph_args(o)
    o.add_argument("--cap", type=int, default=DEFAULT_CAP)
    o.add_argument("--tree", action="store_true")
    o.set_defaults(func=cmd_opt)

    c = sub.add_parser("crsp-opt", help="exact optimum of a confined instance")
    c.add_argument("instance", help="instance file ('-' for stdin)")
    c.add_argument("--cap", type=int, default=DEFAULT_CAP)
    c.add_argument("--tree", action="store_true")
    c.set_defaults(func=cmd_crsp_opt)

    rd = sub.add_parser("reduce", help="reduce a DIMACS CNF to a confined instance")
    rd.add_argument("cnf", help="CNF file ('-' for stdin)")
    rd.add_argument("-o", "--output")
    rd.set_defaults(func=cmd_reduce)

    tr = sub.add_parser("transform", help="convert between confined and plain instances")
    tr.add_argument("direction", choices=("crsp-to-rsp", "rsp-to-crsp"))
    tr.add_argument("input", help="input file ('-' for stdin)")
    tr.add_argument("--sink", help="bugged vertex for rsp-to-crsp (default: marked sink)")
    tr.add_argument("--budget", type=int)
    tr.add_argument("-o", "--output")
    tr.set_defaults(func=cmd_transform)

    e = sub.add_parser("export-dot", help="export a graph as DOT")
    graph_args(e)
    e.add_argument("--highlight", action="append", default=[], metavar="ID")
    e.add_argument("-o", "--output")
    e.set_defaults(func=cmd_export_dot)

    v = sub.add_parser("verify", help="check the theorems on their corpora")
    v.add_argument("suite", nargs="*", help=f"claims to run: all, {', '.join(CLAIMS)}")
    v.set_defaults(func=cmd_verify)
    return p


def main(argv: Optional[Sequence[str]] = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except UsageError as exc:
        print(f"regsearch: error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except (DagError, FormulaError, InconsistentOracleError, SolverCapExceeded) as exc:
        print(f"regsearch: invalid input: {exc}", file=sys.stderr)
        return EXIT_INVALID


if __name__ == "__main__":
    sys.exit(main())
