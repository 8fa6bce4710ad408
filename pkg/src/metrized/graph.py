"""Finite combinatorial models of metrized graphs with rational edge lengths."""

from __future__ import annotations

from collections import defaultdict
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable, Mapping, Union


class GraphError(ValueError):
    pass


class DisconnectedGraph(GraphError):
    pass


class NonpositiveLength(GraphError):
    pass


class UnknownVertex(GraphError):
    pass


class EmptyGraph(GraphError):
    pass


class DuplicateId(GraphError):
    pass


class PointIsVertex(GraphError):
    pass


@dataclass(frozen=True)
class Edge:
    id: str
    tail: str
    head: str
    length: Fraction

    @property
    def is_loop(self) -> bool:
        return self.tail == self.head


@dataclass(frozen=True)
class MetrizedGraph:
    """Connected graph whose edges carry positive rational lengths.

    Loops and parallel edges are allowed. Edge orientation only fixes the
    arc-length coordinate t in [0, length] running from tail to head.
    Build instances through :func:`build_graph`, which validates.
    """

    vertices: tuple[str, ...]
    edges: tuple[Edge, ...]
    _edge_index: dict = field(default=None, repr=False, compare=False)
    _vertex_index: dict = field(default=None, repr=False, compare=False)

    def __post_init__(self):
        object.__setattr__(self, "_edge_index", {e.id: e for e in self.edges})
        object.__setattr__(self, "_vertex_index", {v: i for i, v in enumerate(self.vertices)})

    def edge(self, edge_id: str) -> Edge:
        return self._edge_index[edge_id]

    def has_edge(self, edge_id: str) -> bool:
        return edge_id in self._edge_index

    def has_vertex(self, v: str) -> bool:
        return v in self._vertex_index

    def index(self, v: str) -> int:
        return self._vertex_index[v]

    def valence(self, v: str) -> int:
        return sum((e.tail == v) + (e.head == v) for e in self.edges)

    def incident(self, v: str) -> list[Edge]:
        return [e for e in self.edges if e.tail == v or e.head == v]

    def loops_at(self, v: str) -> int:
        return sum(1 for e in self.edges if e.is_loop and e.tail == v)

    def scaled(self, factor) -> MetrizedGraph:
        factor = Fraction(factor)
        if factor <= 0:
            raise NonpositiveLength(f"scale factor {factor} is not positive")
        return MetrizedGraph(
            self.vertices,
            tuple(Edge(e.id, e.tail, e.head, e.length * factor) for e in self.edges),
        )


@dataclass(frozen=True)
class PointLocation:
    """A vertex, or a point at ``offset`` from the tail of an edge."""

    vertex: str | None = None
    edge: str | None = None
    offset: Fraction | None = None

    @classmethod
    def at_vertex(cls, v: str) -> PointLocation:
        return cls(vertex=v)

    @classmethod
    def on_edge(cls, edge: str, offset) -> PointLocation:
        return cls(edge=edge, offset=Fraction(offset))

    @property
    def is_vertex(self) -> bool:
        return self.vertex is not None


Point = Union[str, PointLocation]


def as_point(p: Point) -> PointLocation:
    return PointLocation.at_vertex(p) if isinstance(p, str) else p


def normalize_point(G: MetrizedGraph, p: Point) -> PointLocation:
    """Map edge offsets 0 and length to the endpoint vertices; validate the rest."""
    p = as_point(p)
    if p.is_vertex:
        if not G.has_vertex(p.vertex):
            raise UnknownVertex(p.vertex)
        return p
    if not G.has_edge(p.edge):
        raise GraphError(f"unknown edge {p.edge!r}")
    e = G.edge(p.edge)
    if p.offset == 0:
        return PointLocation.at_vertex(e.tail)
    if p.offset == e.length:
        return PointLocation.at_vertex(e.head)
    if not 0 < p.offset < e.length:
        raise GraphError(f"offset {p.offset} outside edge {e.id} of length {e.length}")
    return p


@dataclass(frozen=True)
class VertexDivisor:
    coefficients: Mapping[str, Fraction] = field(default_factory=dict)

    def __post_init__(self):
        clean = {v: Fraction(c) for v, c in self.coefficients.items() if c != 0}
        object.__setattr__(self, "coefficients", clean)

    def __getitem__(self, v: str) -> Fraction:
        return self.coefficients.get(v, Fraction(0))

    @property
    def degree(self) -> Fraction:
        return sum(self.coefficients.values(), Fraction(0))

    def support(self):
        return set(self.coefficients)

    def check(self, G: MetrizedGraph) -> None:
        for v in self.coefficients:
            if not G.has_vertex(v):
                raise UnknownVertex(v)


def _connected(vertices, edges) -> bool:
    adj = defaultdict(set)
    for e in edges:
        adj[e.tail].add(e.head)
        adj[e.head].add(e.tail)
    seen = {vertices[0]}
    stack = [vertices[0]]
    while stack:
        for w in adj[stack.pop()]:
            if w not in seen:
                seen.add(w)
                stack.append(w)
    return len(seen) == len(vertices)


def build_graph(vertices: Iterable[str], edges: Iterable) -> MetrizedGraph:
    """Validate and build a metrized graph.

    ``edges`` holds ``(tail, head, length)`` or ``(tail, head, length, id)``
    tuples, or :class:`Edge` instances. Missing ids become ``e0, e1, ...``.
    """
    vertices = tuple(vertices)
    if len(set(vertices)) != len(vertices):
        raise DuplicateId("duplicate vertex id")
    known = set(vertices)
    built = []
    for i, item in enumerate(edges):
        if isinstance(item, Edge):
            e = item
        elif len(item) == 4:
            e = Edge(str(item[3]), item[0], item[1], Fraction(item[2]))
        else:
            e = Edge(f"e{i}", item[0], item[1], Fraction(item[2]))
        e = Edge(e.id, e.tail, e.head, Fraction(e.length))
        for v in (e.tail, e.head):
            if v not in known:
                raise UnknownVertex(v)
        if e.length <= 0:
            raise NonpositiveLength(f"edge {e.id} has length {e.length}")
        built.append(e)
    if len({e.id for e in built}) != len(built):
        raise DuplicateId("duplicate edge id")
    if not vertices:
        raise EmptyGraph("no vertices")
    if not _connected(vertices, built):
        raise DisconnectedGraph("graph is not connected")
    if not built:
        raise EmptyGraph("graph has no edges")
    return MetrizedGraph(vertices, tuple(built))


def total_length(G: MetrizedGraph) -> Fraction:
    return sum((e.length for e in G.edges), Fraction(0))


def graph_genus(G: MetrizedGraph) -> int:
    """First Betti number |E| - |V| + 1."""
    return len(G.edges) - len(G.vertices) + 1


def point_name(edge_id: str, offset: Fraction) -> str:
    return f"{edge_id}:{offset}"


@dataclass(frozen=True)
class Refinement:
    """A subdivided graph plus the bookkeeping to move data onto it.

    ``names[i]`` is the vertex standing for the i-th requested point and
    ``parents`` maps every edge of ``graph`` to ``(original edge, start
    offset)`` so functions and measures can be re-expressed on it.
    """

    graph: MetrizedGraph
    names: tuple[str, ...]
    parents: Mapping[str, tuple[Edge, Fraction]]


def refine(G: MetrizedGraph, points: Iterable[Point]) -> Refinement:
    """Insert a vertex at every interior point in ``points``.

    A cut edge ``e`` becomes the chain ``e#0, e#1, ...`` in its original
    position; new vertices are appended in order of first appearance and
    named ``edge:offset``. Vertices among ``points`` map to themselves.
    """
    points = [normalize_point(G, p) for p in points]
    cuts = defaultdict(set)
    for p in points:
        if not p.is_vertex:
            cuts[p.edge].add(p.offset)
    taken = set(G.vertices) | {e.id for e in G.edges}
    new_edges = []
    parents = {}
    label = {}

    def fresh(name):
        base, n = name, 1
        while name in taken:
            name = f"{base}~{n}"
            n += 1
        taken.add(name)
        return name

    for e in G.edges:
        if e.id not in cuts:
            new_edges.append(e)
            parents[e.id] = (e, Fraction(0))
            continue
        offsets = sorted(cuts[e.id])
        chain = [e.tail]
        for s in offsets:
            label[(e.id, s)] = fresh(point_name(e.id, s))
            chain.append(label[(e.id, s)])
        chain.append(e.head)
        stops = [Fraction(0), *offsets, e.length]
        for i in range(len(chain) - 1):
            piece = Edge(fresh(f"{e.id}#{i}"), chain[i], chain[i + 1], stops[i + 1] - stops[i])
            new_edges.append(piece)
            parents[piece.id] = (e, stops[i])

    names = [p.vertex if p.is_vertex else label[(p.edge, p.offset)] for p in points]
    extra = list(dict.fromkeys(n for n, p in zip(names, points) if not p.is_vertex))
    H = MetrizedGraph(G.vertices + tuple(extra), tuple(new_edges))
    return Refinement(H, tuple(names), parents)


def subdivide_many(G: MetrizedGraph, points: Iterable[Point]):
    r = refine(G, points)
    return r.graph, list(r.names)


def subdivide(G: MetrizedGraph, point: Point):
    """Split the edge containing an interior point; returns ``(graph, vertex id)``."""
    p = normalize_point(G, point)
    if p.is_vertex:
        raise PointIsVertex(f"{p.vertex} is already a vertex")
    H, names = subdivide_many(G, [p])
    return H, names[0]
