import io
import random
from fractions import Fraction
from pathlib import Path

import pytest
from hypothesis import given, settings, strategies as st

from helpers import random_divisor, random_graph
from metrized.cli import run
from metrized.fileformat import GraphFile, ParseError, parse_graph_file, parse_rational
from metrized.graph import DuplicateId, UnknownVertex

GRAPHS = Path(__file__).resolve().parent.parent / "graphs"
WEDGE = "vertex O\nedge e1 O O 1\nedge e2 O O 1\ndivisor O 2\ncurve-genus 2\n"


def call(*argv):
    out, err = io.StringIO(), io.StringIO()
    code = run([str(a) for a in argv], out, err)
    return code, out.getvalue(), err.getvalue()


@pytest.fixture
def wedge_file(tmp_path):
    p = tmp_path / "wedge.graph"
    p.write_text(WEDGE)
    return p


class TestGrammar:
    def test_wedge_fiber(self):
        gf = parse_graph_file(WEDGE)
        assert gf.vertices == ["O"] and len(gf.edges) == 2
        assert gf.divisor == {"O": 2} and gf.curve_genus == 2
        G = gf.graph()
        assert gf.component_genus(G) == {"O": 0}

    def test_unknown_vertex(self):
        with pytest.raises(UnknownVertex, match="line 1"):
            parse_graph_file("edge e1 A B 1")

    def test_rational_length(self):
        gf = parse_graph_file("vertex a\nvertex b\nedge e a b 3/2\n")
        assert gf.edges[0][3] == Fraction(3, 2)

    def test_comments_and_blanks(self):
        gf = parse_graph_file("# header\n\nvertex a   # trailing\nedge e a a 1\n")
        assert gf.vertices == ["a"]

    @pytest.mark.parametrize(
        "text, line",
        [
            ("vertex a\nedge e a a 0\n", 2),
            ("vertex a\nedge e a a 1.5\n", 2),
            ("vertex a\nedge e a a\n", 2),
            ("vertex a\nbogus a\n", 2),
            ("vertex a\ncomponent a genus=x\n", 2),
            ("curve-genus two\n", 1),
        ],
    )
    def test_parse_errors(self, text, line):
        with pytest.raises(ParseError) as info:
            parse_graph_file(text)
        assert info.value.line == line

    @pytest.mark.parametrize(
        "text",
        [
            "vertex a\nvertex a\n",
            "vertex a\nedge e a a 1\nedge e a a 1\n",
            "vertex a\ndivisor a 1\ndivisor a 2\n",
        ],
    )
    def test_duplicates(self, text):
        with pytest.raises(DuplicateId):
            parse_graph_file(text)

    def test_parse_rational(self):
        assert parse_rational("-7/3") == Fraction(-7, 3)
        with pytest.raises(ParseError):
            parse_rational("1/0x")

    def test_genus_mismatch(self):
        gf = parse_graph_file("vertex a\nvertex b\nedge e a b 1\ncomponent a genus=1\ncurve-genus 3\n")
        with pytest.raises(Exception, match="disagrees"):
            gf.component_genus(gf.graph())


@settings(max_examples=40, deadline=None)
@given(st.integers(0, 2**32 - 1))
def test_round_trip(seed):
    rng = random.Random(seed)
    G = random_graph(rng)
    gf = GraphFile(
        list(G.vertices),
        [(e.id, e.tail, e.head, e.length) for e in G.edges],
        {v: Fraction(c) for v, c in random_divisor(rng, G).items()},
        {v: rng.randint(0, 2) for v in G.vertices if rng.random() < 0.3},
    )
    text = gf.dumps()
    again = parse_graph_file(text)
    assert again == gf
    assert again.dumps() == text


class TestCommands:
    def test_constant_wedge(self, wedge_file):
        code, out, _ = call("constant", wedge_file)
        assert (code, out) == (0, "c = 1/8\n")

    def test_bounds(self):
        code, out, _ = call("bounds", "--genus", 2, "--delta", 1)
        assert code == 0
        assert "omega2 >= 1/5" in out
        assert "admissible omega2 >= 1/30" in out
        assert "A >= 0.0912870929175" in out
        assert "irreducible" in out

    def test_verify(self, wedge_file):
        code, out, _ = call("verify", wedge_file)
        assert code == 0
        assert out.rstrip().endswith("6/6 properties hold")

    @pytest.mark.parametrize("path", sorted(GRAPHS.glob("*.graph")), ids=lambda p: p.name)
    def test_verify_samples(self, path):
        assert call("verify", path)[0] == 0

    def test_measure(self, wedge_file):
        code, out, _ = call("measure", wedge_file)
        assert "mass O = 0" in out and "density e1 = 1/2" in out and "total = 1" in out

    def test_green(self, tmp_path):
        p = tmp_path / "par.graph"
        p.write_text("vertex v1\nvertex v2\nedge e0 v1 v2 1\nedge e1 v1 v2 1\ndivisor v1 2\n")
        code, out, _ = call("green", p)
        assert out.splitlines() == ["g(v1, v1) = 1/24", "g(v1, v2) = -1/12", "g(v2, v2) = 7/24"]
        assert call("green", p, "--at", "v2", "v1")[1] == "g(v2, v1) = -1/12\n"

    def test_green_interior(self, tmp_path):
        p = tmp_path / "c.graph"
        p.write_text("vertex O\nedge c O O 1\ndivisor O 2\n")
        assert call("green", p, "--at", "O", "c:1/2")[1] == "g(O, c:1/2) = -1/24\n"

    def test_local_term(self, tmp_path):
        p = tmp_path / "b.graph"
        p.write_text((GRAPHS / "banana.graph").read_text())
        code, out, _ = call("local-term", p, GRAPHS / "wedge2.graph")
        assert code == 0
        assert out.count("local term = -1/3") == 2

    def test_arith_bounds(self):
        code, out, _ = call("arith-bounds", "--genus", 2, "--fiber", "1:2")
        assert code == 0
        assert "0.115524530093" in out

    def test_wedge(self):
        code, out, _ = call("wedge", "--lengths", "1,1", "--genus", 2, "--at", "c2:1/2", "O")
        assert code == 0
        assert "c = 1/8" in out and "g(c2:1/2, O) = -1/48" in out

    def test_signed_measure_warning(self):
        code, _, err = call("wedge", "--lengths", "1,1,1", "--genus", 2)
        assert code == 0 and "warning" in err


class TestExitCodes:
    def test_missing_file(self, tmp_path):
        code, _, err = call("constant", tmp_path / "nope.graph")
        assert code == 2 and "error" in err

    def test_parse_error_has_context(self, tmp_path):
        p = tmp_path / "bad.graph"
        p.write_text("vertex a\nedge e a b 1\n")
        code, _, err = call("measure", p)
        assert code == 2 and "bad.graph" in err and "line 2" in err

    def test_degree_minus_two(self, tmp_path):
        p = tmp_path / "m2.graph"
        p.write_text("vertex a\nedge e a a 1\ndivisor a -2\n")
        assert call("constant", p)[0] == 2

    def test_bad_genus(self):
        assert call("bounds", "--genus", 1, "--delta", 1)[0] == 2

    def test_bad_point(self, wedge_file):
        assert call("green", wedge_file, "--at", "O", "zz:1")[0] == 2

    def test_verify_failure_exit_one(self, wedge_file, monkeypatch):
        import metrized.cli as cli
        from metrized.admissible import AdmissibilityReport

        def broken(*args, **kwargs):
            return AdmissibilityReport({1: True, 2: False, 3: True, 4: True, 5: True, 6: True})

        monkeypatch.setattr(cli, "verify_admissibility", broken)
        code, out, _ = call("verify", wedge_file)
        assert code == 1 and "5/6 properties hold" in out


def test_deterministic(wedge_file):
    runs = [call("measure", GRAPHS / "theta.graph") for _ in range(2)]
    assert runs[0] == runs[1]


def test_tsv(wedge_file):
    code, out, _ = call("--format", "tsv", "constant", wedge_file)
    assert out == "c\t1/8\n"
    code, out, _ = call("verify", wedge_file, "--format", "tsv")
    assert out.splitlines()[-1] == "passed\t6"
    assert all("\t" in line for line in out.splitlines())
