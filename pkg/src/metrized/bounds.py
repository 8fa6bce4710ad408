"""Lower bounds for omega^2, the admissible self-intersection and the
Bogomolov constant, plus the arithmetic-surface bounds.

Everything is an exact Fraction except square roots and logarithms, which
are taken once, at the end, in double precision.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable, Sequence


class GenusTooSmall(ValueError):
    pass


class NegativeDelta(ValueError):
    pass


class BadResidueCardinality(ValueError):
    pass


def _genus(g) -> int:
    if int(g) != g or g < 2:
        raise GenusTooSmall(f"need an integer genus g >= 2, got {g}")
    return int(g)


def chx_lower_bound(g, deg_push) -> Fraction:
    """omega^2 >= 4(g - 1)/g * deg f_*(omega)."""
    g = _genus(g)
    return Fraction(4 * (g - 1), g) * Fraction(deg_push)


def noether_degree(omega_sq, delta) -> Fraction:
    """deg f_*(omega) = (omega^2 + delta) / 12."""
    return (Fraction(omega_sq) + Fraction(delta)) / 12


def omega_sq_lower(g, delta) -> Fraction:
    """Fixed point of omega^2 = chx_lower_bound(g, noether_degree(omega^2, delta))."""
    g = _genus(g)
    return Fraction(g - 1, 2 * g + 1) * Fraction(delta)


def admissible_omega_sq_lower(g, delta) -> Fraction:
    g = _genus(g)
    return Fraction((g - 1) ** 2, 3 * g * (2 * g + 1)) * Fraction(delta)


def bogomolov_sq_lower(g, delta) -> Fraction:
    """Lower bound for A^2, i.e. (g - 1) delta / (12 g (2g + 1))."""
    g = _genus(g)
    return Fraction(g - 1, 12 * g * (2 * g + 1)) * Fraction(delta)


@dataclass(frozen=True)
class BoundReport:
    genus: int
    delta: Fraction
    omega_sq_lower: Fraction
    admissible_omega_sq_lower: Fraction
    A_sq_lower: Fraction
    A_lower: float
    irreducible_fibers: bool = True
    assumptions: tuple[str, ...] = field(default=())


def function_field_bounds(g, delta, irreducible_fibers: bool = True) -> BoundReport:
    """omega^2, (omega^a . omega^a)_a and A lower bounds from the fiber count.

    The last two rely on the stable model having only irreducible fibers;
    that hypothesis is recorded on the report, not assumed silently.
    """
    g = _genus(g)
    delta = Fraction(delta)
    if delta < 0:
        raise NegativeDelta(f"delta = {delta}")
    w2 = omega_sq_lower(g, delta)
    wa2 = admissible_omega_sq_lower(g, delta)
    a2 = bogomolov_sq_lower(g, delta)
    if a2 != wa2 / (4 * (g - 1)):
        raise ArithmeticError("A^2 bound inconsistent with the admissible bound")
    assumptions = ["semistable fibration", "omega relatively nef", "generic fiber genus >= 2"]
    if irreducible_fibers:
        assumptions.append("stable model has only geometrically irreducible fibers")
    return BoundReport(g, delta, w2, wa2, a2, math.sqrt(a2), irreducible_fibers, tuple(assumptions))


def admissible_omega_square(omega_sq, local_terms: Iterable) -> Fraction:
    """omega^2 plus the per-fiber local terms."""
    return Fraction(omega_sq) + sum((Fraction(t) for t in local_terms), Fraction(0))


def nt_threshold(admissible_omega_sq, g, nt_norm_sq=0) -> Fraction:
    """(omega^a . omega^a)_a / (4(g - 1)) + ||omega - (2g - 2) D||^2 / (4 g (g - 1))."""
    g = _genus(g)
    nt = Fraction(nt_norm_sq)
    if nt < 0:
        raise ValueError("squared Neron-Tate norm must be nonnegative")
    return Fraction(admissible_omega_sq) / (4 * (g - 1)) + nt / (4 * g * (g - 1))


@dataclass(frozen=True)
class ArithmeticFiberDatum:
    delta: int
    residue_size: int

    def __post_init__(self):
        if int(self.delta) != self.delta or self.delta < 1:
            raise ValueError(f"delta must be a positive integer, got {self.delta}")
        if int(self.residue_size) != self.residue_size or self.residue_size < 2:
            raise BadResidueCardinality(f"#(O_K/P) must be an integer >= 2, got {self.residue_size}")


@dataclass(frozen=True)
class ArithmeticReport:
    genus: int
    irreducible_bound: float | None
    reducible_bound: float | None
    not_smooth_floor: float | None
    hypotheses: dict


def arithmetic_bounds(g, fibers: Sequence[ArithmeticFiberDatum] = (), reducible_places: Sequence[int] = ()) -> ArithmeticReport:
    """Lower bounds for the Arakelov self-intersection of omega.

    ``fibers`` are the critical places of a model whose stable model has
    only irreducible geometric fibers; ``reducible_places`` are residue
    field sizes at places with reducible geometric fibers. A bound is None
    when its hypothesis is not met by the input.
    """
    g = _genus(g)
    fibers = [f if isinstance(f, ArithmeticFiberDatum) else ArithmeticFiberDatum(*f) for f in fibers]
    for n in reducible_places:
        ArithmeticFiberDatum(1, n)
    irr = None
    if fibers:
        irr = sum((g - 1) * f.delta * math.log(f.residue_size) / (3 * g) for f in fibers)
    red = None
    if reducible_places:
        red = sum(math.log(n) for n in reducible_places) / (6 * (g - 1))
    floor = math.log(2) / (6 * (g - 1)) if (fibers or reducible_places) else None
    hyp = {
        "irreducible_bound": "stable model has only geometric irreducible fibers; critical places as listed",
        "reducible_bound": "geometric fibers at the listed places are reducible",
        "not_smooth_floor": "model is not smooth (at least one singular fiber)",
    }
    return ArithmeticReport(g, irr, red, floor, hyp)


def not_smooth_floor(g) -> float:
    g = _genus(g)
    return math.log(2) / (6 * (g - 1))
