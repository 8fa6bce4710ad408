"""Admissible measures, Green functions and the constant c(G, D).

For a vertex divisor D with deg D != -2 the admissible measure is

    mu_D = (delta_D + 2 mu_can) / (deg D + 2),

where mu_can has vertex mass 1 - v(p)/2 and density (1 - R_e / l_e) / l_e
on every edge, R_e being the effective resistance between the endpoints of
e in the whole graph. (This equals 1 / (l_e + R'_e) with R'_e the resistance
once e is deleted, by the parallel law; bridges get 0, loops 1 / l_e.)
The construction is trusted only because :func:`verify_admissibility`
checks every defining property exactly.
"""

from __future__ import annotations

import warnings
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable, Mapping

from .calculus import (
    ZERO,
    Measure,
    NonzeroMass,
    PiecewiseQuadratic,
    DiscontinuousFunction,
    _vertex_solution,
    check_continuity,
    dirac,
    evaluate,
    from_vertex_values,
    grounded_inverse,
    integrate,
    laplacian_of,
    q_map,
    refine_measure,
    solve_poisson,
)
from .graph import (
    EmptyGraph,
    MetrizedGraph,
    Point,
    PointLocation,
    VertexDivisor,
    refine,
)


class DegreeMinusTwo(ValueError):
    pass


class AdmissibilityError(ArithmeticError):
    """An identity that must hold exactly did not; indicates a bug."""


class NegativeMeasureWarning(UserWarning):
    pass


def _resistance_from_gamma(gamma, i: int, j: int) -> Fraction:
    return gamma[i][i] + gamma[j][j] - 2 * gamma[i][j]


def effective_resistance(G: MetrizedGraph, x: Point, y: Point) -> Fraction:
    """Two-point resistance with conductance 1/l(e) on every edge.

    Injects a unit current at x, grounds y, and reads the potential at x.
    """
    r = refine(G, [x, y])
    H, (a, b) = r.graph, r.names
    if a == b:
        return ZERO
    rhs = {v: ZERO for v in H.vertices}
    rhs[a] += 1
    rhs[b] -= 1
    return _vertex_solution(H, rhs, base=b)[a]


def _canonical(G: MetrizedGraph, gamma) -> Measure:
    masses = {v: 1 - Fraction(G.valence(v), 2) for v in G.vertices}
    dens = {}
    for e in G.edges:
        if e.is_loop:
            dens[e.id] = 1 / e.length
        else:
            R = _resistance_from_gamma(gamma, G.index(e.tail), G.index(e.head))
            dens[e.id] = (e.length - R) / e.length**2
    return Measure(masses, dens)


def canonical_measure(G: MetrizedGraph) -> Measure:
    if not G.edges:
        raise EmptyGraph("no edges")
    return _canonical(G, grounded_inverse(G))


def _as_divisor(D) -> VertexDivisor:
    if D is None:
        return VertexDivisor({})
    return D if isinstance(D, VertexDivisor) else VertexDivisor(dict(D))


def _admissible(G: MetrizedGraph, D: VertexDivisor, gamma) -> Measure:
    D.check(G)
    deg = D.degree
    if deg == -2:
        raise DegreeMinusTwo("the admissible measure needs deg D != -2")
    mu = (Measure(dict(D.coefficients)) + _canonical(G, gamma).scale(2)).scale(1 / (deg + 2))
    if not mu.is_positive():
        if all(D[v] >= G.valence(v) - 2 for v in G.vertices):
            raise AdmissibilityError("positivity hypothesis holds but the measure is signed")
        warnings.warn("admissible measure has negative parts", NegativeMeasureWarning, stacklevel=3)
    return mu


def admissible_measure(G: MetrizedGraph, D=None) -> Measure:
    """The unique total-mass-1 measure whose Green function makes
    g(D, y) + g(y, y) constant."""
    if not G.edges:
        raise EmptyGraph("no edges")
    return _admissible(G, _as_divisor(D), grounded_inverse(G))


@dataclass(frozen=True)
class GreenSystem:
    graph: MetrizedGraph
    divisor: VertexDivisor
    measure: Measure
    green: Mapping[tuple[str, str], Fraction]
    sources: Mapping[str, PiecewiseQuadratic]
    constant: Fraction

    def __call__(self, x: str, y: str) -> Fraction:
        return self.green[(x, y)]

    def pairing(self, d: Mapping[str, Fraction], e: Mapping[str, Fraction]) -> Fraction:
        """sum over v, w of d_v g(v, w) e_w."""
        return sum(
            (Fraction(a) * self.green[(v, w)] * Fraction(b) for v, a in d.items() if a for w, b in e.items() if b),
            ZERO,
        )

    def divisor_value(self, y: str) -> Fraction:
        return sum((c * self.green[(x, y)] for x, c in self.divisor.coefficients.items()), ZERO)


class _Sources(Mapping):
    """g(x, .) for each vertex x, built from the Green table on first access."""

    def __init__(self, G: MetrizedGraph, green, curvature):
        self._G = G
        self._green = green
        self._curvature = curvature
        self._cache = {}

    def __getitem__(self, x):
        if x not in self._cache:
            if not self._G.has_vertex(x):
                raise KeyError(x)
            values = {y: self._green[(x, y)] for y in self._G.vertices}
            self._cache[x] = from_vertex_values(self._G, values, self._curvature)
        return self._cache[x]

    def __iter__(self):
        return iter(self._G.vertices)

    def __len__(self):
        return len(self._G.vertices)


def green_system(G: MetrizedGraph, D=None) -> GreenSystem:
    """Admissible measure, Green function for every vertex source, and c(G, D).

    With Gamma the grounded inverse Laplacian and q = q(mu), the source x has
    vertex values Gamma e_x - Gamma q up to a constant and curvature
    mu_e / 2 on each edge. Integrating such a function against mu gives
    q . p(f) - K0 with K0 = sum_e mu_e^2 l_e^3 / 12, so

        g(x, y) = Gamma[x][y] - (Gamma q)[x] - (Gamma q)[y] + q . Gamma q + K0.
    """
    if not G.edges:
        raise EmptyGraph("no edges")
    D = _as_divisor(D)
    gamma = grounded_inverse(G)
    mu = _admissible(G, D, gamma)
    qmu = q_map(G, mu)
    V = G.vertices
    n = len(V)
    qvec = [qmu[v] for v in V]
    gq = [sum((gamma[i][j] * qvec[j] for j in range(n) if qvec[j]), ZERO) for i in range(n)]
    k0 = sum((mu.density(e.id) ** 2 * e.length**3 for e in G.edges), ZERO) / 12
    base = sum((a * b for a, b in zip(qvec, gq)), ZERO) + k0
    green = {}
    for i, x in enumerate(V):
        row = gamma[i]
        shift = base - gq[i]
        for j in range(i, n):
            green[(x, V[j])] = green[(V[j], x)] = row[j] - gq[j] + shift

    def at(y):
        return sum((c * green[(x, y)] for x, c in D.coefficients.items()), ZERO) + green[(y, y)]

    c = at(V[0])
    for y in V[1:]:
        if at(y) != c:
            raise AdmissibilityError(f"g(D, y) + g(y, y) not constant at vertex {y}")
    curvature = {e.id: mu.density(e.id) / 2 for e in G.edges}
    return GreenSystem(G, D, mu, green, _Sources(G, green, curvature), c)


def green_at_points(G: MetrizedGraph, D, points: Iterable[Point]):
    """Green system on G refined at ``points``; returns ``(system, names)``.

    Measure and Green function are unchanged by subdivision, so the values
    ``system(names[i], names[j])`` are g(points[i], points[j]) on G.
    """
    r = refine(G, points)
    return green_system(r.graph, D), list(r.names)


def green_eval(G: MetrizedGraph, D, x: Point, y: Point) -> Fraction:
    system, (a, b) = green_at_points(G, D, [x, y])
    return system(a, b)


def constant(G: MetrizedGraph, D=None) -> Fraction:
    return green_system(G, D).constant


PROPERTIES = (
    "total mass 1",
    "symmetry",
    "vertex sources in Q(G,V)",
    "Laplacian of source",
    "mean zero against mu",
    "g(D,y)+g(y,y) constant",
)


@dataclass
class AdmissibilityReport:
    results: dict = field(default_factory=dict)
    details: dict = field(default_factory=dict)

    @property
    def ok(self) -> bool:
        return all(self.results.values())

    @property
    def passed(self) -> int:
        return sum(bool(v) for v in self.results.values())

    def lines(self):
        for i, name in enumerate(PROPERTIES, 1):
            status = "ok" if self.results.get(i) else "FAIL"
            extra = f"  ({self.details[i]})" if i in self.details else ""
            yield f"({i}) {name}: {status}{extra}"


def _default_samples(G: MetrizedGraph):
    return [PointLocation.on_edge(e.id, e.length / 2) for e in G.edges]


def verify_admissibility(G: MetrizedGraph, D, system: GreenSystem, samples=None) -> AdmissibilityReport:
    """Check the six defining properties exactly; never raises on a failure.

    Property 6 is checked at every vertex and at ``samples`` (default: edge
    midpoints). For an interior sample y, g(y, y) is obtained by solving the
    Poisson problem for delta_y - mu on G subdivided at the samples, using
    the measure stored in ``system``.
    """
    D = _as_divisor(D)
    rep = AdmissibilityReport()
    mu = system.measure
    V = G.vertices

    total = mu.total(G)
    rep.results[1] = total == 1
    if total != 1:
        rep.details[1] = f"total mass {total}"

    asym = [(x, y) for x in V for y in V if system.green.get((x, y)) != system.green.get((y, x))]
    mismatch = []
    for x in V:
        f = system.sources.get(x)
        try:
            vals = check_continuity(G, f) if f is not None else {}
        except DiscontinuousFunction:
            vals = {}
        mismatch += [(x, y) for y in V if vals.get(y) != system.green.get((x, y))]
    rep.results[2] = not asym and not mismatch
    if asym:
        rep.details[2] = f"asymmetric at {asym[0]}"
    elif mismatch:
        rep.details[2] = f"table disagrees with source function at {mismatch[0]}"

    bad3 = []
    for x in V:
        f = system.sources.get(x)
        try:
            if f is None:
                raise DiscontinuousFunction("missing")
            check_continuity(G, f)
        except DiscontinuousFunction:
            bad3.append(x)
    rep.results[3] = not bad3
    if bad3:
        rep.details[3] = f"source {bad3[0]} not a continuous piecewise quadratic"

    bad4, bad5 = [], []
    for x in V:
        if x in bad3:
            bad4.append(x)
            bad5.append(x)
            continue
        f = system.sources[x]
        if laplacian_of(G, f) != dirac(x) - mu:
            bad4.append(x)
        if integrate(G, f, mu) != 0:
            bad5.append(x)
    rep.results[4] = not bad4
    rep.results[5] = not bad5
    if bad4:
        rep.details[4] = f"fails for source {bad4[0]}"
    if bad5:
        rep.details[5] = f"fails for source {bad5[0]}"

    rep.results[6], detail = _check_constancy(G, D, system, samples)
    if detail:
        rep.details[6] = detail
    return rep


def _check_constancy(G, D, system, samples):
    green = system.green
    try:
        values = {
            y: sum((c * green[(x, y)] for x, c in D.coefficients.items()), ZERO) + green[(y, y)]
            for y in G.vertices
        }
    except KeyError as exc:
        return False, f"missing Green value {exc}"
    ref = values[G.vertices[0]]
    for y, val in values.items():
        if val != ref:
            return False, f"vertex {y}: {val} != {ref}"
    if system.constant != ref:
        return False, f"recorded constant {system.constant} != {ref}"

    samples = _default_samples(G) if samples is None else list(samples)
    if not samples:
        return True, None
    r = refine(G, samples)
    H = r.graph
    mu_h = refine_measure(r, system.measure)
    for p, name in zip(samples, r.names):
        try:
            f = solve_poisson(H, dirac(name) - mu_h, base=name)
        except NonzeroMass:
            return False, "cannot solve for interior source: measure mass is not 1"
        gyy = -integrate(H, f, mu_h)
        gdy = sum((c * evaluate(G, system.sources[x], p) for x, c in D.coefficients.items()), ZERO)
        if gdy + gyy != ref:
            return False, f"interior point {name}: {gdy + gyy} != {ref}"
    return True, None
