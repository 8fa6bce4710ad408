"""Tables of the function-field lower bounds and the irreducible local term.

For each genus g the rows list omega^2, the admissible self-intersection and
A per unit delta, then the per-node local term checked against a wedge of
unit loops computed by the general solver.
"""

import argparse
import warnings
from dataclasses import dataclass
from fractions import Fraction

from metrized.admissible import NegativeMeasureWarning
from metrized.bounds import function_field_bounds, not_smooth_floor
from metrized.fiber import divisor_local_term, irreducible_local_term
from metrized.graph import build_graph


@dataclass
class Config:
    genera: tuple = tuple(range(2, 11))
    delta: Fraction = Fraction(1)
    check_nodes: int = 3


def main():
    # signed admissible measures are expected here (small g, many loops)
    warnings.simplefilter("ignore", NegativeMeasureWarning)
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--genera", type=int, nargs="+", default=list(Config.genera))
    ap.add_argument("--delta", type=Fraction, default=Config.delta)
    ap.add_argument("--check-nodes", type=int, default=Config.check_nodes)
    args = ap.parse_args()
    cfg = Config(tuple(args.genera), args.delta, args.check_nodes)

    wedge = build_graph(["O"], [("O", "O", 1)] * cfg.check_nodes)
    print(f"delta = {cfg.delta}")
    print(f"{'g':>3} {'omega2 >=':>12} {'adm omega2 >=':>14} {'A >=':>15} {'local/node':>11} {'solver ok':>9} {'log2/6(g-1)':>13}")
    for g in cfg.genera:
        r = function_field_bounds(g, cfg.delta)
        per_node = irreducible_local_term(g, 1)
        solved = divisor_local_term(wedge, {"O": 2 * g - 2}, g)
        ok = solved == per_node * cfg.check_nodes
        print(
            f"{g:3d} {str(r.omega_sq_lower):>12} {str(r.admissible_omega_sq_lower):>14} "
            f"{r.A_lower:15.12f} {str(per_node):>11} {str(ok):>9} {not_smooth_floor(g):13.10f}"
        )


if __name__ == "__main__":
    main()
