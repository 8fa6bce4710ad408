"""Random graphs and independent oracles shared by the test modules."""

import random
from fractions import Fraction

import sympy
from hypothesis import strategies as st

from metrized.calculus import PiecewiseQuadratic, from_vertex_values
from metrized.graph import build_graph


def random_graph(rng: random.Random, max_vertices=8, max_edges=14, lengths=None):
    """Spanning tree plus extra edges, loops and parallel edges included."""
    n = rng.randint(1, max_vertices)
    names = [f"v{i}" for i in range(n)]
    length = lengths or (lambda: Fraction(rng.randint(1, 6), rng.randint(1, 4)))
    edges = []
    for i in range(1, n):
        edges.append((names[rng.randrange(i)], names[i], length()))
    extra = rng.randint(1 if n == 1 else 0, max(0, max_edges - len(edges)))
    for _ in range(extra):
        edges.append((rng.choice(names), rng.choice(names), length()))
    rng.shuffle(edges)
    return build_graph(names, edges)


def random_divisor(rng: random.Random, G, lo=-2, hi=3, avoid_minus_two=True):
    while True:
        d = {v: rng.randint(lo, hi) for v in G.vertices if rng.random() < 0.6}
        if not avoid_minus_two or sum(d.values()) != -2:
            return d


def random_quadratic(rng: random.Random, G):
    values = {v: Fraction(rng.randint(-9, 9), rng.randint(1, 5)) for v in G.vertices}
    curv = {e.id: Fraction(rng.randint(-6, 6), rng.randint(1, 4)) for e in G.edges}
    return from_vertex_values(G, values, curv)


@st.composite
def graphs(draw, max_vertices=6, max_edges=10):
    seed = draw(st.integers(0, 2**32 - 1))
    return random_graph(random.Random(seed), max_vertices, max_edges)


@st.composite
def graphs_with_quadratic(draw):
    seed = draw(st.integers(0, 2**32 - 1))
    rng = random.Random(seed)
    G = random_graph(rng, 6, 10)
    return G, random_quadratic(rng, G)


def sympy_green(G, mu, source):
    """Solve the boundary-value problem for g(source, .) symbolically.

    Unknown quadratic a t^2 + b t + c on every edge; equations: -f'' equals
    the target density, continuity at vertices, the vertex Laplacian condition
    -sum(outgoing slopes) = target mass, and integral of f against mu = 0.
    Shares nothing with the package's solver.
    """
    t = sympy.Symbol("t")
    unknowns, polys, eqs = [], {}, []
    for e in G.edges:
        a, b, c = sympy.symbols(f"a_{e.id} b_{e.id} c_{e.id}".replace("#", "_").replace(":", "_").replace("/", "_"))
        unknowns += [a, b, c]
        polys[e.id] = a * t**2 + b * t + c
        dens = sympy.Rational(mu.density(e.id))
        # target density is -mu_e, and Laplacian density is -f''
        eqs.append(sympy.Eq(-sympy.diff(polys[e.id], t, 2), -dens))
    ends = {}
    for e in G.edges:
        L = sympy.Rational(e.length)
        for v, val in ((e.tail, polys[e.id].subs(t, 0)), (e.head, polys[e.id].subs(t, L))):
            ends.setdefault(v, []).append(val)
    for v, vals in ends.items():
        eqs += [sympy.Eq(vals[0], w) for w in vals[1:]]
    for v in G.vertices:
        slope = 0
        for e in G.edges:
            d = sympy.diff(polys[e.id], t)
            if e.tail == v:
                slope += d.subs(t, 0)
            if e.head == v:
                slope += -d.subs(t, sympy.Rational(e.length))
        mass = (1 if v == source else 0) - sympy.Rational(mu.mass(v))
        eqs.append(sympy.Eq(-slope, mass))
    total = 0
    for v in G.vertices:
        total += sympy.Rational(mu.mass(v)) * ends[v][0]
    for e in G.edges:
        total += sympy.Rational(mu.density(e.id)) * sympy.integrate(polys[e.id], (t, 0, sympy.Rational(e.length)))
    eqs.append(sympy.Eq(total, 0))
    sol = sympy.solve(eqs, unknowns, dict=True)
    assert len(sol) == 1
    sol = sol[0]
    return {v: Fraction(str(sympy.nsimplify(ends[v][0].subs(sol)))) for v in G.vertices}


def sympy_integral(G, f: PiecewiseQuadratic, mu):
    t = sympy.Symbol("t")
    total = sympy.Rational(0)
    for e in G.edges:
        c2, c1, c0 = (sympy.Rational(x) for x in f.coefficients[e.id])
        total += sympy.Rational(mu.density(e.id)) * sympy.integrate(c2 * t**2 + c1 * t + c0, (t, 0, sympy.Rational(e.length)))
    for v, m in mu.masses.items():
        e = next(e for e in G.edges if v in (e.tail, e.head))
        s = 0 if e.tail == v else e.length
        total += sympy.Rational(m) * sympy.Rational(f.on_edge(e.id, s))
    return Fraction(str(total))
