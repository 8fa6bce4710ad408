"""Piecewise-quadratic functions, measures and the graph Laplacian.

Every edge polynomial lives in the tail-anchored coordinate t in [0, l]:
f(t) = c2 t^2 + c1 t + c0. The outgoing derivative at the tail is c1, at
the head it is -(2 c2 l + c1). The Laplacian is -f'' - delta(f), where
delta(f) collects, at each vertex, the sum of outgoing derivatives over all
incident branches (a loop contributes both of its ends).
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Mapping

from .graph import (
    DisconnectedGraph,
    GraphError,
    MetrizedGraph,
    Point,
    Refinement,
    normalize_point,
)
from .linalg import solve

ZERO = Fraction(0)


class DiscontinuousFunction(ValueError):
    pass


class NonzeroMass(ValueError):
    pass


@dataclass(frozen=True)
class Measure:
    """Vertex point masses plus a uniform density a_e (meaning a_e dt) on each edge."""

    masses: Mapping[str, Fraction] = field(default_factory=dict)
    densities: Mapping[str, Fraction] = field(default_factory=dict)

    def __post_init__(self):
        object.__setattr__(self, "masses", {k: Fraction(v) for k, v in self.masses.items() if v != 0})
        object.__setattr__(self, "densities", {k: Fraction(v) for k, v in self.densities.items() if v != 0})

    def mass(self, v: str) -> Fraction:
        return self.masses.get(v, ZERO)

    def density(self, e: str) -> Fraction:
        return self.densities.get(e, ZERO)

    def total(self, G: MetrizedGraph) -> Fraction:
        return sum(self.masses.values(), ZERO) + sum(
            (a * G.edge(e).length for e, a in self.densities.items()), ZERO
        )

    def __add__(self, other: Measure) -> Measure:
        masses = dict(self.masses)
        for k, v in other.masses.items():
            masses[k] = masses.get(k, ZERO) + v
        dens = dict(self.densities)
        for k, v in other.densities.items():
            dens[k] = dens.get(k, ZERO) + v
        return Measure(masses, dens)

    def __neg__(self) -> Measure:
        return self.scale(-1)

    def __sub__(self, other: Measure) -> Measure:
        return self + (-other)

    def scale(self, c) -> Measure:
        c = Fraction(c)
        return Measure(
            {k: c * v for k, v in self.masses.items()},
            {k: c * v for k, v in self.densities.items()},
        )

    def is_positive(self) -> bool:
        return all(v >= 0 for v in self.masses.values()) and all(
            a >= 0 for a in self.densities.values()
        )


def dirac(v: str, weight=1) -> Measure:
    return Measure({v: Fraction(weight)})


def lebesgue(G: MetrizedGraph, edge_id: str, weight=1) -> Measure:
    G.edge(edge_id)
    return Measure({}, {edge_id: Fraction(weight)})


@dataclass(frozen=True)
class PiecewiseQuadratic:
    """One quadratic (c2, c1, c0) per edge, continuous at the vertices."""

    coefficients: Mapping[str, tuple[Fraction, Fraction, Fraction]]

    def __post_init__(self):
        object.__setattr__(
            self,
            "coefficients",
            {k: tuple(Fraction(c) for c in cs) for k, cs in self.coefficients.items()},
        )

    def on_edge(self, edge_id: str, t) -> Fraction:
        c2, c1, c0 = self.coefficients[edge_id]
        t = Fraction(t)
        return (c2 * t + c1) * t + c0

    def __add__(self, other: PiecewiseQuadratic) -> PiecewiseQuadratic:
        return PiecewiseQuadratic(
            {
                k: tuple(a + b for a, b in zip(cs, other.coefficients[k]))
                for k, cs in self.coefficients.items()
            }
        )

    def scale(self, c) -> PiecewiseQuadratic:
        c = Fraction(c)
        return PiecewiseQuadratic({k: tuple(c * x for x in cs) for k, cs in self.coefficients.items()})

    def shift(self, c) -> PiecewiseQuadratic:
        c = Fraction(c)
        return PiecewiseQuadratic({k: (a, b, x + c) for k, (a, b, x) in self.coefficients.items()})


def constant(G: MetrizedGraph, c) -> PiecewiseQuadratic:
    return PiecewiseQuadratic({e.id: (ZERO, ZERO, Fraction(c)) for e in G.edges})


def from_vertex_values(G: MetrizedGraph, values: Mapping[str, Fraction], curvature=None) -> PiecewiseQuadratic:
    """Interpolate vertex values; ``curvature[e]`` is the c2 coefficient on e (default 0)."""
    curvature = curvature or {}
    out = {}
    for e in G.edges:
        a = Fraction(curvature.get(e.id, 0))
        f0, f1 = Fraction(values[e.tail]), Fraction(values[e.head])
        out[e.id] = (a, (f1 - f0) / e.length - a * e.length, f0)
    return PiecewiseQuadratic(out)


def check_continuity(G: MetrizedGraph, f: PiecewiseQuadratic) -> dict:
    """Return the common vertex values; raise if incident branches disagree."""
    if set(f.coefficients) != {e.id for e in G.edges}:
        raise DiscontinuousFunction("function is not defined on exactly the graph's edges")
    values = {}
    for e in G.edges:
        for v, t in ((e.tail, ZERO), (e.head, e.length)):
            x = f.on_edge(e.id, t)
            if values.setdefault(v, x) != x:
                raise DiscontinuousFunction(f"branches disagree at vertex {v!r}")
    return values


def p_map(G: MetrizedGraph, f: PiecewiseQuadratic) -> dict:
    """Restriction of f to the vertex set."""
    return {v: check_continuity(G, f)[v] for v in G.vertices}


def dirac_of(G: MetrizedGraph, f: PiecewiseQuadratic) -> dict:
    check_continuity(G, f)
    out = {v: ZERO for v in G.vertices}
    for e in G.edges:
        c2, c1, _ = f.coefficients[e.id]
        out[e.tail] += c1
        out[e.head] -= 2 * c2 * e.length + c1
    return out


def laplacian_of(G: MetrizedGraph, f: PiecewiseQuadratic) -> Measure:
    d = dirac_of(G, f)
    return Measure(
        {v: -x for v, x in d.items()},
        {e: -2 * cs[0] for e, cs in f.coefficients.items()},
    )


def q_map(G: MetrizedGraph, m: Measure) -> dict:
    """Push a measure to the vertices: each edge sends half its mass to each end."""
    out = {v: m.mass(v) for v in G.vertices}
    for e in G.edges:
        a = m.density(e.id)
        if a:
            half = a * e.length / 2
            out[e.tail] += half
            out[e.head] += half
    return out


def conductance_matrix(G: MetrizedGraph) -> list[list[Fraction]]:
    n = len(G.vertices)
    a = [[ZERO] * n for _ in range(n)]
    for e in G.edges:
        if e.is_loop:
            continue
        i, j = G.index(e.tail), G.index(e.head)
        w = 1 / e.length
        a[i][j] += w
        a[j][i] += w
    return a


def laplacian_matrix(G: MetrizedGraph) -> list[list[Fraction]]:
    """Weighted Laplacian: -sum 1/l(e) off the diagonal, row sums zero, loops ignored."""
    a = conductance_matrix(G)
    n = len(a)
    for i in range(n):
        a[i] = [-x for x in a[i]]
        a[i][i] = -sum(a[i], ZERO)
    return a


def apply_matrix(G: MetrizedGraph, mat, vec: Mapping[str, Fraction]) -> dict:
    xs = [vec[v] for v in G.vertices]
    return {v: sum((m * x for m, x in zip(row, xs)), ZERO) for v, row in zip(G.vertices, mat)}


def edge_integral(c2, c1, c0, length) -> Fraction:
    return ((c2 * length / 3 + c1 / 2) * length + c0) * length


def integrate(G: MetrizedGraph, f: PiecewiseQuadratic, m: Measure) -> Fraction:
    values = check_continuity(G, f)
    total = sum((x * values[v] for v, x in m.masses.items()), ZERO)
    for e, a in m.densities.items():
        total += a * edge_integral(*f.coefficients[e], G.edge(e).length)
    return total


def grounded_inverse(G: MetrizedGraph, base: str | None = None):
    """Inverse of the Laplacian with the base row and column removed, padded
    with zeros back to |V| x |V|. For b summing to zero, x = Gamma b solves
    L x = b with x(base) = 0."""
    n = len(G.vertices)
    base = G.vertices[0] if base is None else base
    k = G.index(base)
    L = laplacian_matrix(G)
    keep = [i for i in range(n) if i != k]
    sub = [[L[i][j] for j in keep] for i in keep]
    ident = [[int(i == j) for j in range(n - 1)] for i in range(n - 1)]
    try:
        inv = solve(sub, ident)
    except ArithmeticError as exc:
        raise DisconnectedGraph("Laplacian is singular after grounding") from exc
    gamma = [[ZERO] * n for _ in range(n)]
    for a, i in enumerate(keep):
        for b, j in enumerate(keep):
            gamma[i][j] = inv[a][b]
    return gamma


def _vertex_solution(G: MetrizedGraph, rhs: Mapping[str, Fraction], base: str) -> dict:
    k = G.index(base)
    L = laplacian_matrix(G)
    keep = [i for i in range(len(G.vertices)) if i != k]
    sub = [[L[i][j] for j in keep] for i in keep]
    b = [[rhs[G.vertices[i]]] for i in keep]
    try:
        x = solve(sub, b) if keep else []
    except ArithmeticError as exc:
        raise DisconnectedGraph("Laplacian is singular after grounding") from exc
    out = {base: ZERO}
    for row, i in zip(x, keep):
        out[G.vertices[i]] = row[0]
    return out


def solve_poisson(G: MetrizedGraph, target: Measure, base: str | None = None) -> PiecewiseQuadratic:
    """The f with laplacian_of(f) == target and f(base) == 0.

    Edge curvature is fixed by the target density (c2 = -a_e/2). The vertex
    values then satisfy L p(f) = q(target): the quadratic bump on each edge
    vanishes at the endpoints and is killed by q, so no correction is needed.
    """
    base = G.vertices[0] if base is None else base
    if target.total(G) != 0:
        raise NonzeroMass(f"target has total mass {target.total(G)}")
    values = _vertex_solution(G, q_map(G, target), base)
    return from_vertex_values(G, values, {e.id: -target.density(e.id) / 2 for e in G.edges})


def evaluate(G: MetrizedGraph, f: PiecewiseQuadratic, point: Point) -> Fraction:
    p = normalize_point(G, point)
    if p.is_vertex:
        for e in G.incident(p.vertex):
            return f.on_edge(e.id, 0 if e.tail == p.vertex else e.length)
        raise GraphError(f"isolated vertex {p.vertex!r}")
    return f.on_edge(p.edge, p.offset)


def refine_function(r: Refinement, f: PiecewiseQuadratic) -> PiecewiseQuadratic:
    """Re-express f on the edges of a refined graph."""
    out = {}
    for eid, (parent, s) in r.parents.items():
        c2, c1, c0 = f.coefficients[parent.id]
        out[eid] = (c2, 2 * c2 * s + c1, (c2 * s + c1) * s + c0)
    return PiecewiseQuadratic(out)


def refine_measure(r: Refinement, m: Measure) -> Measure:
    dens = {eid: m.density(parent.id) for eid, (parent, _) in r.parents.items()}
    return Measure(dict(m.masses), dens)
