import io
import json

import pytest

from regsearch.cli import main
from regsearch.dag import parse_dag
from regsearch.reduction import EXAMPLE_FORMULA, parse_crsp


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def report(capsys, *argv):
    code, out, _ = run(capsys, *argv)
    assert code == 0
    return json.loads(out)


class TestGen:
    @pytest.mark.parametrize("argv, n", [
        (("gen", "pathological", "--k", "4"), 14),
        (("gen", "fib", "--i", "5"), 12),
        (("gen", "path", "--n", "1"), 1),
        (("gen", "jk", "--k", "3", "--no-parity-fix"), 40),
        (("gen", "comb", "--dag", "octopus7"), 14),
        (("gen", "fig4",), 21),
    ])
    def test_sizes(self, capsys, argv, n):
        code, out, _ = run(capsys, *argv)
        assert code == 0 and parse_dag(out).n == n

    def test_seeded(self, capsys):
        _, a, _ = run(capsys, "gen", "random-delta", "--n", "30", "--delta", "3", "--seed", "5")
        _, b, _ = run(capsys, "gen", "random-delta", "--n", "30", "--delta", "3", "--seed", "5")
        assert a == b

    def test_output_file(self, capsys, tmp_path):
        path = tmp_path / "oct.dag"
        assert run(capsys, "gen", "octopus", "--n", "6", "-o", str(path))[0] == 0
        assert parse_dag(path.read_text()).n == 6

    def test_missing_param(self, capsys):
        code, _, err = run(capsys, "gen", "path")
        assert code == 1 and "--n" in err

    def test_bad_param(self, capsys):
        assert run(capsys, "gen", "pathological", "--k", "2")[0] == 2

    def test_unknown_family(self, capsys):
        with pytest.raises(SystemExit) as exc:
            main(["gen", "hexagon"])
        assert exc.value.code == 1


class TestRun:
    def test_fig4_git(self, capsys):
        r = report(capsys, "run", "git", "fig4", "--worst-case")
        assert r["worst_case"] == 6
        assert r["worst_case"] == max(r["per_faulty"].values())

    def test_fig4_golden_flags(self, capsys):
        r = report(capsys, "run", "--strategy", "golden", "--dag", "fig4", "--worst-case")
        assert r["worst_case"] == 5

    def test_ratio(self, capsys):
        r = report(capsys, "run", "git", "octopus6", "--optimal")
        assert r["optimal"] == 5 and r["ratio"] == r["worst_case"] / 5

    def test_faulty(self, capsys):
        code, out, _ = run(capsys, "run", "git", "path5", "--faulty", "0")
        lines = [json.loads(x) for x in out.splitlines()]
        assert code == 0
        assert lines[-1]["faulty"] == 0 and lines[-1]["queries"] in (2, 3)
        assert len(lines) - 1 == lines[-1]["queries"]

    def test_fig4_transcript(self, capsys):
        _, out, _ = run(capsys, "run", "git", "fig4", "--faulty", "5")
        steps = [json.loads(x) for x in out.splitlines()[:-1]]
        assert [s["query"] for s in steps] == [18, 14, 13, 5]
        assert list(steps[0]) == ["query", "verdict", "live"]

    def test_interactive(self, capsys, monkeypatch):
        monkeypatch.setattr("sys.stdin", io.StringIO("c\nb\n"))
        code, out, err = run(capsys, "run", "git", "path5", "--interactive")
        assert code == 0 and err.startswith("? ")
        assert json.loads(out.splitlines()[-1]) == {"faulty": 2, "queries": 2}

    def test_interactive_inconsistent(self, capsys, monkeypatch):
        monkeypatch.setattr("sys.stdin", io.StringIO(""))
        assert run(capsys, "run", "git", "path5", "--interactive")[0] == 2

    def test_unknown_graph(self, capsys):
        assert run(capsys, "run", "git", "nosuchgraph")[0] == 1

    def test_bad_file(self, capsys, tmp_path):
        path = tmp_path / "cycle.dag"
        path.write_text("dag 2 2\narc 0 1\narc 1 0\n")
        code, _, err = run(capsys, "run", "git", str(path))
        assert code == 2 and "cycle" in err

    def test_unknown_faulty(self, capsys):
        assert run(capsys, "run", "git", "path5", "--faulty", "99")[0] == 2


class TestOpt:
    @pytest.mark.parametrize("name, value", [("claw", 3), ("octopus6", 5), ("path16", 4)])
    def test_examples(self, capsys, name, value):
        assert report(capsys, "opt", name)["optimal"] == value

    def test_cap(self, capsys):
        code, _, err = run(capsys, "opt", "path30")
        assert code == 2 and "cap" in err
        assert report(capsys, "opt", "path30", "--cap", "32")["optimal"] == 5

    def test_tree(self, capsys):
        r = report(capsys, "opt", "claw", "--tree")
        assert "tree" in r


class TestTree:
    def test_dot(self, capsys):
        code, out, err = run(capsys, "tree", "golden", "fig4")
        assert code == 0 and out.startswith("digraph") and "height 5" in err

    def test_json_round_trip(self, capsys):
        _, out, _ = run(capsys, "tree", "optimal", "claw", "--json")
        assert json.dumps(json.loads(out)) + "\n" == out
        assert json.loads(out)["height"] == 3


class TestReduceTransform:
    def test_reduce_and_solve(self, capsys, tmp_path):
        cnf = tmp_path / "f.cnf"
        cnf.write_text(EXAMPLE_FORMULA.to_dimacs())
        inst_path = tmp_path / "f.crsp"
        code, _, err = run(capsys, "reduce", str(cnf), "-o", str(inst_path))
        assert code == 0 and "20 vertices" in err
        assert parse_crsp(inst_path.read_text()).dag.n == 20
        r = report(capsys, "crsp-opt", str(inst_path))
        assert r == {"optimal": 6, "budget": 6, "within_budget": True}

    def test_round_trip(self, capsys, tmp_path):
        cnf = tmp_path / "f.cnf"
        cnf.write_text(EXAMPLE_FORMULA.to_dimacs())
        inst_path, rsp_path, back_path = (tmp_path / x for x in ("a.crsp", "b.dag", "c.crsp"))
        run(capsys, "reduce", str(cnf), "-o", str(inst_path))
        assert run(capsys, "transform", "crsp-to-rsp", str(inst_path), "-o", str(rsp_path))[0] == 0
        assert report(capsys, "opt", str(rsp_path))["optimal"] == 6
        assert run(capsys, "transform", "rsp-to-crsp", str(rsp_path), "-o", str(back_path))[0] == 0
        assert report(capsys, "crsp-opt", str(back_path))["optimal"] == 6

    def test_all_innocent(self, capsys, tmp_path):
        path = tmp_path / "i.crsp"
        path.write_text("dag 2 1\narc 0 1\ninnocent 0\ninnocent 1\nbudget 0\n")
        code, out, _ = run(capsys, "transform", "crsp-to-rsp", str(path))
        rsp = tmp_path / "i.dag"
        rsp.write_text(out)
        assert code == 0 and parse_dag(out).n == 3
        # the new sink has no ancestors besides itself
        assert report(capsys, "opt", str(rsp))["optimal"] == 0

    def test_warns_on_innocent_ancestor(self, capsys, tmp_path):
        path = tmp_path / "i.crsp"
        path.write_text("dag 2 1\narc 0 1\ninnocent 0\nbudget 1\n")
        code, _, err = run(capsys, "transform", "crsp-to-rsp", str(path))
        assert code == 0 and "warning" in err

    def test_bad_cnf(self, capsys, tmp_path):
        cnf = tmp_path / "bad.cnf"
        cnf.write_text("p cnf 1 1\n1 0\n")
        assert run(capsys, "reduce", str(cnf))[0] == 2


class TestExportDot:
    def test_highlight(self, capsys):
        code, out, _ = run(capsys, "export-dot", "fig4", "--highlight", "18")
        assert code == 0 and out.count("->") == 23 and "fillcolor" in out


class TestVerify:
    def test_pathological(self, capsys):
        code, out, _ = run(capsys, "verify", "pathological")
        rows = [json.loads(x) for x in out.splitlines()]
        assert code == 0 and rows and all(r["passed"] for r in rows)
        assert list(rows[0]) == ["claim", "case", "expected", "observed", "passed"]

    def test_table1(self, capsys):
        code, out, _ = run(capsys, "verify", "table1")
        assert code == 0

    def test_unknown(self, capsys):
        code, _, err = run(capsys, "verify", "unknown-claim")
        assert code == 1 and "pathological" in err

    def test_json_round_trip(self, capsys):
        _, out, _ = run(capsys, "verify", "figures")
        for line in out.splitlines():
            assert json.dumps(json.loads(line)) == line
