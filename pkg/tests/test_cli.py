"""End-to-end runs of the command line harness through cli.main."""

import itertools
import json

import pytest

from treembed.cli import main
from treembed.families import caterpillar, cliques_with_apex
from treembed.formats import (
    graph_from_dimacs,
    graph_from_json,
    graph_to_json,
    witness_from_text,
)
from treembed.graphs import TreeGraph, build_graph
from treembed.embedding import validate_embedding


def write_graph(path, g, meta=None):
    path.write_text(graph_to_json(g, meta))
    return str(path)


def gen(tmp_path, name, *argv):
    out = tmp_path / name
    code = main(["gen", *argv, "--out", str(out)])
    assert code == 0
    return out


class TestGen:
    def test_two_wing_host(self, tmp_path, capsys):
        out = gen(tmp_path, "h.json", "--family", "h", "--ell", "3", "--c", "1", "--k", "12")
        g, meta = graph_from_json(out.read_text())
        assert (g.n, g.m) == (23, 72)
        assert meta["parts"] == {"hub": 1, "A1": 6, "B1": 5, "A2": 6, "B2": 5}
        stdout = capsys.readouterr().out
        assert "parts: hub=1 A1=6 B1=5 A2=6 B2=5" in stdout
        assert "n=23 m=72 delta=6 Delta=12" in stdout

    def test_stdout_payload_and_stderr_info(self, capsys):
        code = main(["gen", "--family", "h", "--ell", "3", "--c", "1", "--k", "12"])
        assert code == 0
        captured = capsys.readouterr()
        g, _ = graph_from_json(captured.out)
        assert g.n == 23
        assert "delta=6" in captured.err

    def test_wing_clique_host(self, tmp_path):
        out = gen(tmp_path, "g.json", "--family", "g", "--ell", "3", "--c", "1", "--k", "12")
        g, _ = graph_from_json(out.read_text())
        assert g.n == 18

    def test_matched_wing_host(self, tmp_path):
        out = gen(tmp_path, "hp.json", "--family", "hprime", "--ell", "3", "--c", "1", "--k", "12")
        g, _ = graph_from_json(out.read_text())
        assert g.n == 19

    def test_broom(self, tmp_path):
        out = gen(tmp_path, "t.json", "--family", "broom", "--stars", "4,4,4")
        g, meta = graph_from_json(out.read_text())
        TreeGraph(g)  # must be a valid tree
        assert g.n == 13
        assert meta["ell"] == 3 and meta["k"] == 12

    def test_broom_requires_equal_stars(self, tmp_path, capsys):
        code = main(["gen", "--family", "broom", "--stars", "4,4,5"])
        assert code == 2
        assert "must all be equal" in capsys.readouterr().err

    def test_complete_bipartite(self, tmp_path):
        out = gen(tmp_path, "kb.json", "--family", "kbip", "--n1", "3", "--n2", "5")
        g, _ = graph_from_json(out.read_text())
        assert (g.n, g.m) == (8, 15)

    def test_dimacs_output(self, tmp_path):
        out = gen(
            tmp_path, "h.col",
            "--family", "h", "--ell", "3", "--c", "1", "--k", "12",
            "--format", "dimacs",
        )
        g = graph_from_dimacs(out.read_text())
        assert (g.n, g.m) == (23, 72)
        assert g.tags == {}

    def test_missing_parameter(self, capsys):
        code = main(["gen", "--family", "h", "--ell", "3", "--c", "1"])
        assert code == 2
        assert "error:" in capsys.readouterr().err

    def test_invalid_parameters(self, capsys):
        code = main(["gen", "--family", "h", "--ell", "4", "--c", "1", "--k", "12"])
        assert code == 2
        assert "odd" in capsys.readouterr().err

    def test_unknown_family_is_usage_error(self):
        with pytest.raises(SystemExit) as exc:
            main(["gen", "--family", "snake"])
        assert exc.value.code == 2


class TestCheck:
    def test_embedded_with_witness(self, tmp_path, capsys):
        tree = gen(tmp_path, "t.json", "--family", "broom", "--stars", "12")
        host = gen(tmp_path, "h.json", "--family", "h", "--ell", "3", "--c", "1", "--k", "12")
        capsys.readouterr()
        # a single star of order 12 is a 12-edge star; use the path instead
        path_file = write_graph(tmp_path / "p12.json", caterpillar(12).graph)
        wit = tmp_path / "wit.txt"
        code = main(["check", "--tree", path_file, "--host", str(host), "--witness-out", str(wit)])
        assert code == 0
        assert capsys.readouterr().out.startswith("Embedded")
        mapping = witness_from_text(wit.read_text())
        host_graph, _ = graph_from_json(host.read_text())
        assert validate_embedding(TreeGraph(caterpillar(12).graph), host_graph, mapping)

    def test_not_embedded(self, tmp_path, capsys):
        tree = gen(tmp_path, "t.json", "--family", "broom", "--stars", "4,4,4")
        host = gen(tmp_path, "h.json", "--family", "h", "--ell", "3", "--c", "1", "--k", "12")
        capsys.readouterr()
        wit = tmp_path / "wit.txt"
        code = main(["check", "--tree", str(tree), "--host", str(host),
                     "--solver", "exact", "--witness-out", str(wit)])
        assert code == 1
        assert capsys.readouterr().out.startswith("NotEmbedded")
        assert not wit.exists()

    def test_node_budget_timeout(self, tmp_path, capsys):
        tree = write_graph(tmp_path / "p12.json", caterpillar(12).graph)
        host = write_graph(tmp_path / "ca.json", cliques_with_apex(5, 3).graph)
        code = main(["check", "--tree", tree, "--host", host,
                     "--solver", "exact", "--max-nodes", "1000"])
        assert code == 3
        out = capsys.readouterr().out
        assert out.startswith("Timeout")
        assert "detail:" in out

    def test_wall_clock_timeout(self, tmp_path, capsys):
        tree = write_graph(tmp_path / "p12.json", caterpillar(12).graph)
        host = write_graph(tmp_path / "ca.json", cliques_with_apex(5, 3).graph)
        code = main(["check", "--tree", tree, "--host", host,
                     "--solver", "exact", "--timeout-ms", "1"])
        assert code == 3

    def test_greedy_solver(self, tmp_path, capsys):
        tree = gen(tmp_path, "t.json", "--family", "broom", "--stars", "4,4,4")
        capsys.readouterr()
        k13 = build_graph(13, list(itertools.combinations(range(13), 2)))
        host = write_graph(tmp_path / "k13.json", k13)
        code = main(["check", "--tree", str(tree), "--host", host, "--solver", "greedy"])
        assert code == 0

    def test_non_tree_input(self, tmp_path, capsys):
        host = gen(tmp_path, "h.json", "--family", "kbip", "--n1", "2", "--n2", "2")
        capsys.readouterr()
        code = main(["check", "--tree", str(host), "--host", str(host)])
        assert code == 2
        assert "is not a tree" in capsys.readouterr().err

    def test_unreadable_file(self, tmp_path, capsys):
        code = main(["check", "--tree", str(tmp_path / "no.json"),
                     "--host", str(tmp_path / "no.json")])
        assert code == 2


class TestVerifyExample:
    def test_two_wing_confirmed(self, capsys):
        code = main(["verify-example", "--family", "h", "--ell", "3", "--c", "1"])
        assert code == 0
        out = capsys.readouterr().out.strip()
        assert out == "certificate holds; oracle: NotEmbedded; CONFIRMED"

    def test_wing_clique_confirmed(self, capsys):
        code = main(["verify-example", "--family", "g", "--ell", "3", "--c", "1"])
        assert code == 0
        assert capsys.readouterr().out.strip() == "oracle: NotEmbedded; CONFIRMED"

    def test_matched_wing_confirmed(self, capsys):
        code = main(["verify-example", "--family", "hprime", "--ell", "3", "--c", "1"])
        assert code == 0
        assert capsys.readouterr().out.strip() == "oracle: NotEmbedded; CONFIRMED"


class TestSweep:
    def test_nine_two_wing_cases(self, tmp_path):
        out = tmp_path / "sweep.csv"
        code = main(["sweep", "--family", "h", "--ell-list", "3,5,7",
                     "--c-list", "1,2,3", "--out", str(out)])
        assert code == 0
        lines = out.read_text().splitlines()
        assert len(lines) == 10
        header = lines[0].split(",")
        assert header[0] == "family" and "delta_matches" in header
        for line in lines[1:]:
            row = dict(zip(header, line.split(",")))
            assert row["delta_matches"] == "True"
            assert row["Delta_matches"] == "True"
            assert row["certificate_holds"] == "True"
            assert row["delta_ge_half_k"] == "True"

    def test_matched_wing_flags_thin_min_degree(self, tmp_path):
        out = tmp_path / "sweep.csv"
        main(["sweep", "--family", "hprime", "--ell-list", "3", "--c-list", "1",
              "--out", str(out)])
        header, row_line = out.read_text().splitlines()
        row = dict(zip(header.split(","), row_line.split(",")))
        assert row["delta_ge_half_k"] == "False"
        assert row["certificate_holds"] == "n/a"

    def test_wing_clique_reports_quoted_form_mismatch(self, tmp_path):
        out = tmp_path / "sweep.csv"
        main(["sweep", "--family", "g", "--ell-list", "3", "--c-list", "1",
              "--out", str(out)])
        header, row_line = out.read_text().splitlines()
        row = dict(zip(header.split(","), row_line.split(",")))
        assert row["Delta_form"] == "8"
        assert row["Delta"] == "12"
        assert row["Delta_matches"] == "False"

    def test_non_integer_list(self, capsys):
        code = main(["sweep", "--ell-list", "3,x,5", "--c-list", "1"])
        assert code == 2
        assert "comma list" in capsys.readouterr().err

    def test_trailing_comma_tolerated(self, tmp_path):
        out = tmp_path / "sweep.csv"
        code = main(["sweep", "--family", "h", "--ell-list", "3,",
                     "--c-list", "1", "--out", str(out)])
        assert code == 0
        assert len(out.read_text().splitlines()) == 2


class TestStress:
    def test_deterministic_and_counterexample_free(self, tmp_path):
        args = ["stress", "--k", "6", "--n", "16", "--trials", "5", "--seed", "7"]
        f1, f2 = tmp_path / "a.jsonl", tmp_path / "b.jsonl"
        assert main(args + ["--out", str(f1)]) == 0
        assert main(args + ["--out", str(f2)]) == 0
        assert f1.read_bytes() == f2.read_bytes()
        rows = [json.loads(line) for line in f1.read_text().splitlines()]
        assert len(rows) == 5
        for row in rows:
            assert row["counterexample"] is False
            assert (row["witness"] is not None) == (row["verdict"] == "embedded")
            assert "elapsed_ms" not in row

    def test_timings_flag_adds_elapsed(self, tmp_path):
        out = tmp_path / "t.jsonl"
        main(["stress", "--k", "5", "--n", "14", "--trials", "2", "--seed", "1",
              "--timings", "--out", str(out)])
        row = json.loads(out.read_text().splitlines()[0])
        assert "elapsed_ms" in row

    def test_stdout_rows(self, capsys):
        code = main(["stress", "--k", "4", "--n", "12", "--trials", "3", "--seed", "2"])
        assert code == 0
        lines = capsys.readouterr().out.strip().splitlines()
        assert len(lines) == 3
        assert json.loads(lines[0])["instance_id"] == "stress-2-0000"

    def test_tree_degree_cap_recorded(self, tmp_path):
        out = tmp_path / "t.jsonl"
        main(["stress", "--k", "6", "--n", "16", "--trials", "2", "--seed", "3",
              "--max-tree-degree", "3", "--out", str(out)])
        row = json.loads(out.read_text().splitlines()[0])
        assert row["params"]["max_tree_degree"] == 3

    def test_host_too_small(self, capsys):
        code = main(["stress", "--k", "10", "--n", "5", "--trials", "1"])
        assert code == 2
        assert "cannot host" in capsys.readouterr().err

    def test_alpha_out_of_range(self, capsys):
        code = main(["stress", "--k", "6", "--n", "16", "--trials", "1",
                     "--alpha", "1/2"])
        assert code == 2
        assert "alpha" in capsys.readouterr().err
