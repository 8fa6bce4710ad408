"""Dual graphs of semistable fibers and their graph-side invariants.

Vertices are irreducible components C_v with geometric genus g_v, edges are
nodes (unit length). Intersection numbers are reconstructed from the graph:
C_v . C_w counts edges joining v != w, and C_v . C_v = -(non-loop edge ends
at v) because C_v . F = 0. Adjunction with p_a(C_v) = g_v + loops(v) gives

    (omega . C_v) = 2 (g_v + loops(v)) - 2 - C_v . C_v,

which sums to 2g - 2 with g = sum g_v + (first Betti number).
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Mapping

from .admissible import GreenSystem, green_system
from .bounds import GenusTooSmall
from .calculus import ZERO, Measure, check_continuity, laplacian_matrix, laplacian_of, q_map
from .graph import GraphError, MetrizedGraph, VertexDivisor, build_graph, graph_genus


class NonUnitLength(GraphError):
    pass


class DegreeMismatch(ArithmeticError):
    pass


class VerticalPairingMismatch(ArithmeticError):
    """The two expressions for the admissible fiber intersection differ."""


class HypothesisViolated(ValueError):
    pass


@dataclass(frozen=True)
class FiberGraph:
    graph: MetrizedGraph
    component_genus: Mapping[str, int]

    @property
    def genus(self) -> int:
        return sum(self.component_genus.values()) + graph_genus(self.graph)

    @property
    def delta(self) -> int:
        """Number of nodes."""
        return len(self.graph.edges)

    @property
    def vertices(self):
        return self.graph.vertices


def fiber_graph(vertices: Iterable[str], edges: Iterable, component_genus: Mapping[str, int] | None = None) -> FiberGraph:
    """Build a fiber dual graph; edges are ``(tail, head)`` pairs or full
    edge tuples whose length must be 1."""
    norm = []
    for item in edges:
        if not hasattr(item, "length") and len(item) == 2:
            item = (item[0], item[1], 1)
        length = item.length if hasattr(item, "length") else item[2]
        if Fraction(length) != 1:
            raise NonUnitLength(f"fiber edges must have length 1, got {length}")
        norm.append(item)
    G = build_graph(vertices, norm)
    return fiber_from_graph(G, component_genus)


def fiber_from_graph(G: MetrizedGraph, component_genus: Mapping[str, int] | None = None) -> FiberGraph:
    for e in G.edges:
        if e.length != 1:
            raise NonUnitLength(f"edge {e.id} has length {e.length}")
    component_genus = dict(component_genus or {})
    for v, gv in component_genus.items():
        if not G.has_vertex(v):
            raise GraphError(f"genus given for unknown vertex {v!r}")
        if int(gv) != gv or gv < 0:
            raise ValueError(f"component genus must be a nonnegative integer, got {gv}")
    fiber = FiberGraph(G, {v: int(component_genus.get(v, 0)) for v in G.vertices})
    if fiber.genus < 1:
        raise GenusTooSmall(f"curve genus {fiber.genus} < 1")
    return fiber


def intersection_matrix(fiber: FiberGraph) -> list[list[Fraction]]:
    """(C_v . C_w): edge counts off the diagonal, rows summing to zero."""
    G = fiber.graph
    n = len(G.vertices)
    m = [[ZERO] * n for _ in range(n)]
    for e in G.edges:
        if e.is_loop:
            continue
        i, j = G.index(e.tail), G.index(e.head)
        m[i][j] += 1
        m[j][i] += 1
    for i in range(n):
        m[i][i] = -sum(m[i], ZERO)
    return m


def canonical_fiber_divisor(fiber: FiberGraph) -> VertexDivisor:
    G = fiber.graph
    coeffs = {}
    for v in G.vertices:
        loops = G.loops_at(v)
        self_int = -(G.valence(v) - 2 * loops)
        coeffs[v] = 2 * (fiber.component_genus[v] + loops) - 2 - self_int
    K = VertexDivisor(coeffs)
    if K.degree != 2 * fiber.genus - 2:
        raise DegreeMismatch(f"deg K = {K.degree}, expected {2 * fiber.genus - 2}")
    return K


def fiber_system(fiber: FiberGraph) -> GreenSystem:
    return green_system(fiber.graph, canonical_fiber_divisor(fiber))


def _vec(fiber: FiberGraph, d) -> dict:
    if isinstance(d, Mapping):
        out = {v: Fraction(d.get(v, 0)) for v in fiber.vertices}
        extra = set(d) - set(out)
        if extra:
            raise GraphError(f"unknown vertices {sorted(extra)}")
        return out
    d = list(d)
    if len(d) != len(fiber.vertices):
        raise ValueError("vector length does not match the vertex count")
    return {v: Fraction(x) for v, x in zip(fiber.vertices, d)}


def pairing_correction(fiber: FiberGraph, d, e, system: GreenSystem | None = None) -> Fraction:
    """sum over v, w of d_v g(v, w) e_w, with d_v standing for (D . C_v)."""
    system = system or fiber_system(fiber)
    return system.pairing(_vec(fiber, d), _vec(fiber, e))


def vertical_admissible_intersection(fiber: FiberGraph, d, system: GreenSystem | None = None) -> dict:
    """(D . C_v)_a computed two ways, checked equal, and returned.

    Left: d_v + sum_{w, w'} d_w g(w, w') (C_v . C_w'). Right: (sum d) q(mu)(v).
    """
    system = system or fiber_system(fiber)
    d = _vec(fiber, d)
    V = fiber.vertices
    M = intersection_matrix(fiber)
    gd = {w2: sum((d[w] * system.green[(w, w2)] for w in V if d[w]), ZERO) for w2 in V}
    left = {v: d[v] + sum((M[i][j] * gd[w2] for j, w2 in enumerate(V)), ZERO) for i, v in enumerate(V)}
    qmu = q_map(fiber.graph, system.measure)
    deg = sum(d.values(), ZERO)
    right = {v: deg * qmu[v] for v in V}
    if left != right:
        bad = next(v for v in V if left[v] != right[v])
        raise VerticalPairingMismatch(f"vertex {bad}: {left[bad]} != {right[bad]}")
    return left


def local_term(fiber: FiberGraph, system: GreenSystem | None = None) -> Fraction:
    """g(K, K) - 2 (2g - 2) c(G, K): the fiber's contribution to
    (omega^a . omega^a)_a - omega^2."""
    g = fiber.genus
    if g < 2:
        raise GenusTooSmall(f"local term needs g >= 2, got {g}")
    return divisor_local_term(fiber.graph, canonical_fiber_divisor(fiber), g, system)


def divisor_local_term(G: MetrizedGraph, K, g: int, system: GreenSystem | None = None) -> Fraction:
    """Same quantity for an arbitrary graph and divisor of degree 2g - 2.

    Lets a wedge of delta unit loops carry K = (2g - 2) O even when
    delta > g, where no single-component fiber has that dual graph.
    """
    K = K if isinstance(K, VertexDivisor) else VertexDivisor(dict(K))
    if K.degree != 2 * g - 2:
        raise DegreeMismatch(f"deg K = {K.degree}, expected {2 * g - 2}")
    system = system or green_system(G, K)
    k = dict(K.coefficients)
    return system.pairing(k, k) - 2 * (2 * g - 2) * system.constant


def irreducible_local_term(g: int, delta) -> Fraction:
    """Closed form -(g - 1) delta / (3g) for a one-component fiber."""
    return -Fraction(g - 1, 3 * g) * Fraction(delta)


def vertex_balance_check(G: MetrizedGraph, D, mu: Measure, g) -> dict:
    """Check d_v + sum_w a(v, w) g(w) = (deg D) q(mu)(v) at every vertex.

    ``g`` is a piecewise quadratic with Laplacian delta_D - (deg D) mu and
    ``mu`` must have total mass 1; both hypotheses are verified first.
    Returns ``{v: (left, right)}``; the identity holds iff every pair is equal.
    """
    D = D if isinstance(D, VertexDivisor) else VertexDivisor(dict(D))
    deg = D.degree
    if mu.total(G) != 1:
        raise HypothesisViolated(f"mu has total mass {mu.total(G)}")
    if laplacian_of(G, g) != Measure(dict(D.coefficients)) - mu.scale(deg):
        raise HypothesisViolated("Laplacian of g is not delta_D - (deg D) mu")
    values = check_continuity(G, g)
    # a(v, w): conductance off the diagonal, minus the row sum on it
    a = [[-x for x in row] for row in laplacian_matrix(G)]
    qmu = q_map(G, mu)
    out = {}
    for i, v in enumerate(G.vertices):
        left = D[v] + sum((a[i][j] * values[w] for j, w in enumerate(G.vertices)), ZERO)
        right = deg * qmu[v]
        out[v] = (left, right)
    return out
