"""Command-line front end.

Exit status: 0 on success, 1 when a verification fails, 2 on bad input.
Exact quantities print as p/q; square roots and logarithms print with 12
significant digits.
"""

from __future__ import annotations

import argparse
import sys
import warnings
from fractions import Fraction

from . import bounds as B
from .admissible import (
    AdmissibilityError,
    green_at_points,
    green_system,
    verify_admissibility,
)
from .calculus import q_map
from .fiber import (
    VerticalPairingMismatch,
    canonical_fiber_divisor,
    fiber_from_graph,
    local_term,
)
from .fileformat import GraphFile, ParseError, parse_graph_file, parse_rational
from .graph import GraphError, MetrizedGraph, PointLocation
from .wedge import CENTER, WedgeSpec, wedge_constant, wedge_green, wedge_measure


class InputError(ValueError):
    pass


def fmt_exact(x) -> str:
    x = Fraction(x)
    return str(x.numerator) if x.denominator == 1 else f"{x.numerator}/{x.denominator}"


def fmt_real(x) -> str:
    return f"{x:.12g}"


class Report:
    def __init__(self, tsv: bool):
        self.tsv = tsv
        self.lines = []

    def row(self, key: str, value: str, rel: str = "="):
        self.lines.append(f"{key}\t{value}" if self.tsv else f"{key} {rel} {value}")

    def text(self, line: str):
        if not self.tsv:
            self.lines.append(line)

    def emit(self, out):
        for line in self.lines:
            print(line, file=out)


def _load(path: str) -> GraphFile:
    try:
        with open(path, encoding="utf-8") as fh:
            text = fh.read()
    except OSError as exc:
        raise InputError(f"{path}: {exc.strerror}") from exc
    try:
        return parse_graph_file(text)
    except (ParseError, GraphError) as exc:
        raise InputError(f"{path}: {exc}") from exc


def _divisor_for(gf: GraphFile, G: MetrizedGraph):
    """File divisor if given; else K_y for fiber files; else 0."""
    if gf.divisor:
        return gf.divisor_or_none()
    if gf.is_fiber:
        return canonical_fiber_divisor(fiber_from_graph(G, gf.component_genus(G)))
    return None


def parse_point(G: MetrizedGraph, token: str) -> PointLocation:
    if G.has_vertex(token):
        return PointLocation.at_vertex(token)
    if ":" not in token:
        raise InputError(f"unknown point {token!r}: expected a vertex id or edge:offset")
    edge, offset = token.rsplit(":", 1)
    if not G.has_edge(edge):
        raise InputError(f"unknown edge {edge!r}")
    return PointLocation.on_edge(edge, parse_rational(offset))


def cmd_measure(gf, rep, args):
    G = gf.graph()
    system = green_system(G, _divisor_for(gf, G))
    mu = system.measure
    for v in G.vertices:
        rep.row(f"mass {v}", fmt_exact(mu.mass(v)))
    for e in G.edges:
        rep.row(f"density {e.id}", fmt_exact(mu.density(e.id)))
    rep.row("total", fmt_exact(mu.total(G)))
    q = q_map(G, mu)
    for v in G.vertices:
        rep.row(f"q {v}", fmt_exact(q[v]))
    return 0


def cmd_green(gf, rep, args):
    G = gf.graph()
    D = _divisor_for(gf, G)
    if args.at:
        x, y = (parse_point(G, t) for t in args.at)
        system, (a, b) = green_at_points(G, D, [x, y])
        rep.row(f"g({args.at[0]}, {args.at[1]})", fmt_exact(system(a, b)))
        return 0
    system = green_system(G, D)
    for i, x in enumerate(G.vertices):
        for y in G.vertices[i:]:
            rep.row(f"g({x}, {y})", fmt_exact(system(x, y)))
    return 0


def cmd_constant(gf, rep, args):
    G = gf.graph()
    rep.row("c", fmt_exact(green_system(G, _divisor_for(gf, G)).constant))
    return 0


def cmd_verify(gf, rep, args):
    G = gf.graph()
    D = _divisor_for(gf, G)
    try:
        system = green_system(G, D)
    except AdmissibilityError as exc:
        rep.row("error", str(exc), ":")
        return 1
    report = verify_admissibility(G, D, system)
    for i, line in enumerate(report.lines(), 1):
        if rep.tsv:
            rep.row(f"property{i}", "ok" if report.results[i] else "FAIL")
        else:
            rep.text(line)
    rep.text(f"{report.passed}/6 properties hold")
    if rep.tsv:
        rep.row("passed", str(report.passed))
    return 0 if report.ok else 1


def cmd_local_term(gf, rep, args):
    G = gf.graph()
    fiber = fiber_from_graph(G, gf.component_genus(G))
    K = canonical_fiber_divisor(fiber)
    rep.row("genus", str(fiber.genus))
    rep.row("delta", str(fiber.delta))
    for v in G.vertices:
        rep.row(f"K {v}", fmt_exact(K[v]))
    rep.row("local term", fmt_exact(local_term(fiber)))
    return 0


def cmd_bounds(args, rep):
    r = B.function_field_bounds(args.genus, args.delta)
    rep.row("omega2", fmt_exact(r.omega_sq_lower), ">=")
    rep.row("admissible omega2", fmt_exact(r.admissible_omega_sq_lower), ">=")
    rep.row("A^2", fmt_exact(r.A_sq_lower), ">=")
    rep.row("A", fmt_real(r.A_lower), ">=")
    rep.text("assuming: " + "; ".join(r.assumptions))
    return 0


def cmd_arith(args, rep):
    fibers = []
    for tok in args.fiber or []:
        try:
            d, n = tok.split(":")
            fibers.append(B.ArithmeticFiberDatum(int(d), int(n)))
        except ValueError as exc:
            raise InputError(f"bad --fiber {tok!r}: {exc}") from exc
    r = B.arithmetic_bounds(args.genus, fibers, args.reducible or [])
    for key, label in (
        ("irreducible_bound", "irreducible-fiber bound"),
        ("reducible_bound", "reducible-fiber bound"),
        ("not_smooth_floor", "not-smooth floor"),
    ):
        value = getattr(r, key)
        if value is not None:
            rep.row(f"omegaAr2 ({label})", fmt_real(value), ">=")
            rep.text(f"  assuming: {r.hypotheses[key]}")
    return 0


def _wedge_point(spec: WedgeSpec, token: str):
    if token == CENTER:
        return (0, Fraction(0))
    if ":" in token:
        edge, t = token.rsplit(":", 1)
        if edge.startswith("c") and edge[1:].isdigit():
            i = int(edge[1:]) - 1
            if 0 <= i < spec.n:
                return (i, parse_rational(t))
    raise InputError(f"bad wedge point {token!r}: expected O or c<i>:<t>")


def cmd_wedge(args, rep):
    try:
        lengths = [parse_rational(t) for t in args.lengths.split(",")]
        spec = WedgeSpec(tuple(lengths), args.genus)
    except (ParseError, ValueError) as exc:
        raise InputError(str(exc)) from exc
    mu = wedge_measure(spec)
    rep.row(f"mass {CENTER}", fmt_exact(mu.mass(CENTER)))
    for i in range(spec.n):
        rep.row(f"density {spec.edge_id(i)}", fmt_exact(mu.density(spec.edge_id(i))))
    rep.row("c", fmt_exact(wedge_constant(spec)))
    if args.at:
        x, y = (_wedge_point(spec, t) for t in args.at)
        rep.row(f"g({args.at[0]}, {args.at[1]})", fmt_exact(wedge_green(spec, x, y)))
    else:
        rep.row(f"g({CENTER}, {CENTER})", fmt_exact(wedge_green(spec, (0, 0), (0, 0))))
    return 0


FILE_COMMANDS = {
    "measure": cmd_measure,
    "green": cmd_green,
    "constant": cmd_constant,
    "verify": cmd_verify,
    "local-term": cmd_local_term,
}


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="metrized", description="Potential theory on metrized graphs.")
    p.add_argument("--format", choices=("text", "tsv"), default="text")
    sub = p.add_subparsers(dest="command", required=True)
    helps = {
        "measure": "admissible measure and its vertex push-forward q(mu)",
        "green": "vertex Green values, or one value with --at",
        "constant": "the constant c(G, D)",
        "verify": "check the six defining properties exactly",
        "local-term": "per-fiber term g(K,K) - 2(2g-2)c(G,K)",
    }
    for name, text in helps.items():
        sp = sub.add_parser(name, help=text)
        sp.add_argument("files", nargs="+")
        sp.add_argument("--format", choices=("text", "tsv"), default=argparse.SUPPRESS)
        if name == "green":
            sp.add_argument("--at", nargs=2, metavar=("X", "Y"))
    sp = sub.add_parser("bounds", help="function-field lower bounds from g and delta")
    sp.add_argument("--genus", type=int, required=True)
    sp.add_argument("--delta", type=Fraction, required=True)
    sp.add_argument("--format", choices=("text", "tsv"), default=argparse.SUPPRESS)
    sp = sub.add_parser("arith-bounds", help="arithmetic-surface lower bounds")
    sp.add_argument("--genus", type=int, required=True)
    sp.add_argument("--fiber", nargs="+", metavar="DELTA:N")
    sp.add_argument("--reducible", nargs="+", type=int, metavar="N")
    sp.add_argument("--format", choices=("text", "tsv"), default=argparse.SUPPRESS)
    sp = sub.add_parser("wedge", help="closed forms for a wedge of circles")
    sp.add_argument("--lengths", required=True)
    sp.add_argument("--genus", type=int, required=True)
    sp.add_argument("--at", nargs=2, metavar=("X", "Y"))
    sp.add_argument("--format", choices=("text", "tsv"), default=argparse.SUPPRESS)
    return p


def run(argv=None, out=None, err=None) -> int:
    out = out or sys.stdout
    err = err or sys.stderr
    args = build_parser().parse_args(argv)
    tsv = args.format == "tsv"
    status = 0
    with warnings.catch_warnings(record=True) as caught:
        warnings.simplefilter("always")
        try:
            if args.command in FILE_COMMANDS:
                for path in args.files:
                    rep = Report(tsv)
                    gf = _load(path)
                    try:
                        code = FILE_COMMANDS[args.command](gf, rep, args)
                    except (InputError, ValueError, GraphError) as exc:
                        raise InputError(f"{path}: {exc}") from exc
                    if len(args.files) > 1 and not tsv:
                        print(f"== {path}", file=out)
                    rep.emit(out)
                    status = max(status, code)
            else:
                rep = Report(tsv)
                handler = {"bounds": cmd_bounds, "arith-bounds": cmd_arith, "wedge": cmd_wedge}[args.command]
                status = handler(args, rep)
                rep.emit(out)
        except (InputError, ValueError, GraphError) as exc:
            print(f"error: {exc}", file=err)
            status = 2
        except (AdmissibilityError, VerticalPairingMismatch) as exc:
            print(f"verification failure: {exc}", file=err)
            status = 1
    for w in dict.fromkeys(str(w.message) for w in caught):
        print(f"warning: {w}", file=err)
    return status


def main(argv=None):
    sys.exit(run(argv))


if __name__ == "__main__":
    main()
