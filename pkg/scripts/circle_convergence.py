"""Error of the discretized Green function on a circle as the mesh is refined.

Prints one row per k with the approximation of g(O, O), its error against
the exact value l/12, and the observed order log2(err(k/2) / err(k)).
"""

import argparse
import math
from dataclasses import dataclass
from fractions import Fraction

from metrized.discrete import circle_convergence


@dataclass
class Config:
    length: Fraction = Fraction(1)
    ks: tuple = (4, 8, 16, 32, 64, 128, 256, 512)


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--length", type=Fraction, default=Config.length)
    ap.add_argument("--ks", type=int, nargs="+", default=list(Config.ks))
    args = ap.parse_args()
    cfg = Config(args.length, tuple(args.ks))

    print(f"circle of length {cfg.length}; exact g(O,O) = {float(cfg.length) / 12:.12f}")
    print(f"{'k':>6} {'approx':>16} {'error':>12} {'order':>7}")
    prev = None
    for k, approx, err in circle_convergence(cfg.ks, cfg.length):
        order = f"{math.log2(prev / err):7.3f}" if prev else " " * 7
        print(f"{k:6d} {approx:16.12f} {err:12.4e} {order}")
        prev = err


if __name__ == "__main__":
    main()
