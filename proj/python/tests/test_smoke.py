from fractions import Fraction

import pytest

import reebcat

LOOP = """\
# two edges over [0, 1]
criticals 0 1
vertex a 0
vertex b 1
edge l a b
edge r a b
"""


def test_parse_and_emit():
    g = reebcat.Graph.parse(LOOP)
    assert g.num_vertices == 2
    assert g.num_edges == 2
    assert reebcat.criticals(g) == [0, 1]
    assert reebcat.Graph.parse(g.text()).text() == g.text()


def test_parse_error_names_line():
    with pytest.raises(reebcat.ParseError, match="line 2"):
        reebcat.Graph.parse("vertex a 0\nedge e a nowhere\n")


def test_smoothing_removes_the_loop():
    g = reebcat.Graph.parse(LOOP)
    u = reebcat.smooth(g, Fraction(1, 2))
    assert reebcat.is_isomorphic(u.graph, reebcat.line("-1/2", "3/2"))
    assert reebcat.criticals(u.graph.reduced()) == [Fraction(-1, 2), Fraction(3, 2)]
    thin = reebcat.smooth(g, "0.25", algo="naive")
    assert thin.graph.num_edges > u.graph.num_edges
    assert thin.zeta().startswith("vertex")


def test_components():
    g = reebcat.loop(0, 1)
    assert len(reebcat.components(g, Fraction(1, 4), Fraction(3, 4))) == 2
    assert len(reebcat.components(g)) == 1
    assert reebcat.components(g, 5, 6) == []


def test_distance_and_certificate():
    line = reebcat.line(0, 1)
    b = reebcat.distance(line, line, Fraction(1, 64))
    assert (b["lower"], b["upper"]) == (0, Fraction(1, 64))
    ok, diagnostic = reebcat.check_interleave(line, line, Fraction(1, 64), b["alpha"], b["beta"])
    assert ok and diagnostic is None

    fork = reebcat.Graph.parse(reebcat.fork().text())
    assert not reebcat.distance(line, fork, "1/8")["infinite"]
    assert reebcat.distance(line, reebcat.Graph.parse(LOOP.replace("0 1", "0 1 5") + "vertex c 5\n"), "1/8")["infinite"]
    assert reebcat.distance(reebcat.loop(0, 1), line, "1/64", budget=3)["unknown_gaps"]


def test_reeb_of_field():
    field = "v a 0\nv b 1/2\nv c 1\ne ab a b\ne bc b c\ne ac a c\n"
    g = reebcat.reeb(field)
    assert g.num_edges == 4
    assert g.num_components == 1
    assert "rankdir=BT" in g.dot()
