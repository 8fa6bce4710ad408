"""Closed forms for a wedge of n circles joined at one point O.

With circle lengths l_i, L = sum l_i and a positive integer g, the measure

    mu = ((g - n)/g) delta_O + sum_i dt_i / (g l_i)

is admissible for K = (2g - 2) O and its Green function is explicit in
phi_i(t) = t^2/(2 l_i) - t/2. These formulas are kept separate from the
general solver so they can serve as an oracle for it.
"""

from __future__ import annotations

import warnings
from dataclasses import dataclass
from fractions import Fraction
from .admissible import NegativeMeasureWarning
from .calculus import Measure, PiecewiseQuadratic
from .graph import MetrizedGraph, NonpositiveLength, VertexDivisor, build_graph

CENTER = "O"


class IndexOutOfRange(IndexError):
    pass


@dataclass(frozen=True)
class WedgeSpec:
    lengths: tuple[Fraction, ...]
    genus: int

    def __post_init__(self):
        lengths = tuple(Fraction(x) for x in self.lengths)
        object.__setattr__(self, "lengths", lengths)
        if not lengths:
            raise ValueError("a wedge needs at least one circle")
        if any(x <= 0 for x in lengths):
            raise NonpositiveLength("circle lengths must be positive")
        if int(self.genus) != self.genus or self.genus < 1:
            raise ValueError(f"genus must be a positive integer, got {self.genus}")
        object.__setattr__(self, "_total", sum(lengths, Fraction(0)))

    @property
    def n(self) -> int:
        return len(self.lengths)

    @property
    def total_length(self) -> Fraction:
        return self._total

    def edge_id(self, i: int) -> str:
        return f"c{i + 1}"

    def graph(self) -> MetrizedGraph:
        return build_graph([CENTER], [(CENTER, CENTER, l, self.edge_id(i)) for i, l in enumerate(self.lengths)])

    def divisor(self) -> VertexDivisor:
        return VertexDivisor({CENTER: 2 * self.genus - 2})


def circle_phi(l, t) -> Fraction:
    """t^2/(2l) - t/2 for the representative of t in [0, l)."""
    if l <= 0:
        raise NonpositiveLength(f"circle length {l}")
    t = Fraction(t) % l
    return (t / l - 1) * t / 2


def wedge_measure(spec: WedgeSpec) -> Measure:
    g, n = spec.genus, spec.n
    mu = Measure(
        {CENTER: Fraction(g - n, g)},
        {spec.edge_id(i): 1 / (g * l) for i, l in enumerate(spec.lengths)},
    )
    if g < n:
        warnings.warn("wedge measure has negative mass at O (g < n)", NegativeMeasureWarning, stacklevel=2)
    return mu


def _coordinate(spec: WedgeSpec, p) -> tuple[int | None, Fraction]:
    """``p`` is ``(circle index, t)`` with 0-based index; the index is
    irrelevant when t reduces to 0 (the point O)."""
    i, t = p
    if not 0 <= i < spec.n:
        raise IndexOutOfRange(f"circle index {i} not in 0..{spec.n - 1}")
    return i, Fraction(t) % spec.lengths[i]


def wedge_green(spec: WedgeSpec, x, y) -> Fraction:
    g = spec.genus
    i, s = _coordinate(spec, x)
    j, t = _coordinate(spec, y)
    shift = spec.total_length / (12 * g * g)
    phi_x = circle_phi(spec.lengths[i], s)
    phi_y = circle_phi(spec.lengths[j], t)
    if i == j:
        return circle_phi(spec.lengths[i], s - t) - Fraction(g - 1, g) * (phi_x + phi_y) + shift
    return (phi_x + phi_y) / g + shift


def wedge_constant(spec: WedgeSpec) -> Fraction:
    g = spec.genus
    return spec.total_length * (2 * g - 1) / (12 * g * g)


def wedge_source(spec: WedgeSpec, i: int, s) -> PiecewiseQuadratic:
    """g(x, .) as a piecewise quadratic, for x = (i, s).

    For s = 0 (x = O) this lives on the wedge itself. Otherwise it lives on
    the wedge refined at x by :func:`metrized.graph.refine`, where circle i
    becomes the edges ``c{i+1}#0`` (O to x) and ``c{i+1}#1`` (x to O).
    """
    g = spec.genus
    li = spec.lengths[i]
    s = Fraction(s) % li
    shift = spec.total_length / (12 * g * g)
    phi_x = circle_phi(li, s)
    k = Fraction(g - 1, g)
    out = {}
    for j, lj in enumerate(spec.lengths):
        eid = spec.edge_id(j)
        if j != i or s == 0:
            # (phi_x + phi_j(t))/g + shift
            out[eid] = (1 / (2 * lj * g), Fraction(-1, 2 * g), phi_x / g + shift)
            continue
        # on [0, s): phi(s - t) = (s - t)^2/(2l) - (s - t)/2
        # on (s, l): phi(t - s) = (t - s)^2/(2l) - (t - s)/2
        base = -k * phi_x + shift
        a = 1 / (2 * li) - k / (2 * li)
        b0 = -s / li + Fraction(1, 2) + k / 2
        c0 = s * s / (2 * li) - s / 2 + base
        out[f"{eid}#0"] = (a, b0, c0)
        # second piece in local coordinate u = t - s
        c1 = -2 * k * phi_x + shift
        b1 = Fraction(-1, 2) - k * (2 * s / (2 * li) - Fraction(1, 2))
        out[f"{eid}#1"] = (a, b1, c1)
    return PiecewiseQuadratic(out)
