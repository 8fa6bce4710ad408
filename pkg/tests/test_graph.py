import random
from fractions import Fraction

import pytest
from hypothesis import given, settings

from helpers import graphs
from metrized.graph import (
    DisconnectedGraph,
    DuplicateId,
    EmptyGraph,
    NonpositiveLength,
    PointIsVertex,
    PointLocation,
    UnknownVertex,
    VertexDivisor,
    build_graph,
    graph_genus,
    normalize_point,
    refine,
    subdivide,
    total_length,
)


def test_circle_loop_valence():
    G = build_graph(["O"], [("O", "O", 1)])
    assert G.valence("O") == 2


def test_segment_valences():
    G = build_graph(["a", "b"], [("a", "b", 2)])
    assert (G.valence("a"), G.valence("b")) == (1, 1)


def test_rejections():
    with pytest.raises(DisconnectedGraph):
        build_graph(["a", "b"], [])
    with pytest.raises(EmptyGraph):
        build_graph(["a"], [])
    with pytest.raises(NonpositiveLength):
        build_graph(["a", "b"], [("a", "b", 0)])
    with pytest.raises(UnknownVertex):
        build_graph(["a"], [("a", "b", 1)])
    with pytest.raises(DuplicateId):
        build_graph(["a", "a"], [("a", "a", 1)])
    with pytest.raises(DisconnectedGraph):
        build_graph(["a", "b", "c"], [("a", "b", 1), ("c", "c", 1)])


@pytest.mark.parametrize(
    "vertices, edges, length",
    [
        (["O"], [("O", "O", 1)] * 3, Fraction(3)),
        (["a", "b"], [("a", "b", Fraction(5, 2))], Fraction(5, 2)),
        (["a", "b"], [("a", "b", Fraction(1, 3)), ("a", "b", Fraction(2, 3))], Fraction(1)),
    ],
)
def test_total_length(vertices, edges, length):
    assert total_length(build_graph(vertices, edges)) == length


def test_genus():
    assert graph_genus(build_graph(["a", "b"], [("a", "b", 1)])) == 0
    assert graph_genus(build_graph(["O"], [("O", "O", 1)] * 4)) == 4
    assert graph_genus(build_graph(["a", "b"], [("a", "b", 1), ("a", "b", 2)])) == 1


def test_subdivide_segment():
    G = build_graph(["a", "b"], [("a", "b", 2, "e")])
    H, v = subdivide(G, PointLocation.on_edge("e", Fraction(1, 2)))
    assert sorted(e.length for e in H.edges) == [Fraction(1, 2), Fraction(3, 2)]
    assert H.valence(v) == 2
    assert total_length(H) == 2


def test_subdivide_loop_gives_parallel_edges():
    G = build_graph(["O"], [("O", "O", 1, "c")])
    H, v = subdivide(G, PointLocation.on_edge("c", Fraction(1, 3)))
    assert [(e.tail, e.head, e.length) for e in H.edges] == [
        ("O", v, Fraction(1, 3)),
        (v, "O", Fraction(2, 3)),
    ]


def test_subdivide_at_vertex_rejected():
    G = build_graph(["a", "b"], [("a", "b", 2, "e")])
    with pytest.raises(PointIsVertex):
        subdivide(G, PointLocation.on_edge("e", 0))
    with pytest.raises(PointIsVertex):
        subdivide(G, "a")


def test_endpoint_offsets_normalize_to_vertices():
    G = build_graph(["a", "b"], [("a", "b", 2, "e")])
    assert normalize_point(G, PointLocation.on_edge("e", 2)).vertex == "b"


def test_refine_many_points_on_one_edge():
    G = build_graph(["a", "b"], [("a", "b", 3, "e")])
    r = refine(G, [PointLocation.on_edge("e", 2), "a", PointLocation.on_edge("e", 1), PointLocation.on_edge("e", 2)])
    assert r.names[0] == r.names[3]
    assert r.names[1] == "a"
    assert [e.length for e in r.graph.edges] == [1, 1, 1]
    assert {eid: s for eid, (_, s) in r.parents.items()} == {"e#0": 0, "e#1": 1, "e#2": 2}


def test_build_is_deterministic():
    spec = (["x", "y", "z"], [("x", "y", 1, "p"), ("y", "z", 2, "q"), ("z", "x", 3, "r")])
    a, b = build_graph(*spec), build_graph(*spec)
    assert a == b
    assert [e.id for e in a.edges] == ["p", "q", "r"]


def test_divisor_degree_and_support():
    D = VertexDivisor({"a": 2, "b": Fraction(-1, 2), "c": 0})
    assert D.degree == Fraction(3, 2)
    assert D.support() == {"a", "b"}


@settings(max_examples=60, deadline=None)
@given(graphs())
def test_valence_sum(G):
    assert sum(G.valence(v) for v in G.vertices) == 2 * len(G.edges)


@settings(max_examples=60, deadline=None)
@given(graphs())
def test_subdivision_preserves_invariants(G):
    rng = random.Random(len(G.edges))
    e = rng.choice(G.edges)
    H, _ = subdivide(G, PointLocation.on_edge(e.id, e.length * Fraction(rng.randint(1, 9), 10)))
    assert total_length(H) == total_length(G)
    assert graph_genus(H) == graph_genus(G)
    build_graph(H.vertices, H.edges)  # still connected and valid
