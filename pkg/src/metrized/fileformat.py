"""Line-based graph files.

One directive per line; ``#`` starts a comment::

    vertex <id>
    edge <id> <tail> <head> <length p[/q]>
    divisor <vertex> <p[/q]>
    component <vertex> genus=<int>
    curve-genus <int>
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field
from fractions import Fraction

from .graph import (
    DuplicateId,
    GraphError,
    MetrizedGraph,
    UnknownVertex,
    VertexDivisor,
    build_graph,
    graph_genus,
)

_RATIONAL = re.compile(r"^[+-]?\d+(/\d+)?$")


class ParseError(ValueError):
    def __init__(self, message, line=None):
        self.line = line
        super().__init__(f"line {line}: {message}" if line is not None else message)


def parse_rational(token: str, line=None) -> Fraction:
    if not _RATIONAL.match(token):
        raise ParseError(f"not a rational number: {token!r}", line)
    value = Fraction(token)
    return value


@dataclass
class GraphFile:
    vertices: list = field(default_factory=list)
    edges: list = field(default_factory=list)  # (id, tail, head, length)
    divisor: dict = field(default_factory=dict)
    components: dict = field(default_factory=dict)
    curve_genus: int | None = None

    def graph(self) -> MetrizedGraph:
        return build_graph(self.vertices, [(t, h, l, i) for i, t, h, l in self.edges])

    def divisor_or_none(self) -> VertexDivisor | None:
        return VertexDivisor(self.divisor) if self.divisor else None

    @property
    def is_fiber(self) -> bool:
        return bool(self.components) or self.curve_genus is not None

    def component_genus(self, G: MetrizedGraph) -> dict:
        """Per-vertex genus; a lone vertex without a component line absorbs
        whatever curve-genus requires."""
        genus = {v: self.components.get(v, 0) for v in G.vertices}
        if self.curve_genus is not None and not self.components and len(G.vertices) == 1:
            genus[G.vertices[0]] = self.curve_genus - graph_genus(G)
        derived = sum(genus.values()) + graph_genus(G)
        if self.curve_genus is not None and derived != self.curve_genus:
            raise GraphError(f"curve-genus {self.curve_genus} disagrees with derived genus {derived}")
        if any(g < 0 for g in genus.values()):
            raise GraphError("negative component genus")
        return genus

    def dumps(self) -> str:
        """Normalized text: vertices, edges, divisor, components, curve genus."""
        out = [f"vertex {v}" for v in self.vertices]
        out += [f"edge {i} {t} {h} {l}" for i, t, h, l in self.edges]
        out += [f"divisor {v} {c}" for v, c in self.divisor.items()]
        out += [f"component {v} genus={g}" for v, g in self.components.items()]
        if self.curve_genus is not None:
            out.append(f"curve-genus {self.curve_genus}")
        return "\n".join(out) + "\n"


def parse_graph_file(text: str) -> GraphFile:
    gf = GraphFile()
    known = set()
    edge_ids = set()

    def need_vertex(v, n):
        if v not in known:
            raise UnknownVertex(f"line {n}: unknown vertex {v!r}")

    for n, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        tok = line.split()
        kind, args = tok[0], tok[1:]
        if kind == "vertex":
            if len(args) != 1:
                raise ParseError("expected: vertex <id>", n)
            if args[0] in known:
                raise DuplicateId(f"line {n}: duplicate vertex {args[0]!r}")
            known.add(args[0])
            gf.vertices.append(args[0])
        elif kind == "edge":
            if len(args) != 4:
                raise ParseError("expected: edge <id> <tail> <head> <length>", n)
            eid, tail, head, length = args
            if eid in edge_ids:
                raise DuplicateId(f"line {n}: duplicate edge {eid!r}")
            need_vertex(tail, n)
            need_vertex(head, n)
            value = parse_rational(length, n)
            if value <= 0:
                raise ParseError(f"edge length must be positive, got {length}", n)
            edge_ids.add(eid)
            gf.edges.append((eid, tail, head, value))
        elif kind == "divisor":
            if len(args) != 2:
                raise ParseError("expected: divisor <vertex> <coefficient>", n)
            need_vertex(args[0], n)
            if args[0] in gf.divisor:
                raise DuplicateId(f"line {n}: divisor coefficient for {args[0]!r} given twice")
            gf.divisor[args[0]] = parse_rational(args[1], n)
        elif kind == "component":
            if len(args) != 2 or not re.fullmatch(r"genus=\d+", args[1]):
                raise ParseError("expected: component <vertex> genus=<int>", n)
            need_vertex(args[0], n)
            if args[0] in gf.components:
                raise DuplicateId(f"line {n}: component {args[0]!r} given twice")
            gf.components[args[0]] = int(args[1].split("=")[1])
        elif kind == "curve-genus":
            if len(args) != 1 or not args[0].isdigit():
                raise ParseError("expected: curve-genus <int>", n)
            if gf.curve_genus is not None:
                raise DuplicateId(f"line {n}: curve-genus given twice")
            gf.curve_genus = int(args[0])
        else:
            raise ParseError(f"unknown directive {kind!r}", n)
    return gf
