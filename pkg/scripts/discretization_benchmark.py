"""Compare exact vertex Green values with the brute-force discretization on
random graphs, reporting the relative error per mesh size."""

import argparse
import warnings
import random
import time
from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from metrized.admissible import NegativeMeasureWarning, green_system
from metrized.discrete import discrete_green, relative_error
from metrized.graph import build_graph


@dataclass
class Config:
    graphs: int = 5
    ks: tuple = (16, 64, 256)
    seed: int = 0
    max_vertices: int = 6
    max_edges: int = 9


def random_graph(rng, cfg):
    n = rng.randint(1, cfg.max_vertices)
    names = [f"v{i}" for i in range(n)]

    def length():
        return Fraction(rng.randint(1, 6), rng.randint(1, 4))

    edges = [(names[rng.randrange(i)], names[i], length()) for i in range(1, n)]
    for _ in range(rng.randint(1 if n == 1 else 0, max(0, cfg.max_edges - len(edges)))):
        edges.append((rng.choice(names), rng.choice(names), length()))
    return build_graph(names, edges)


def main():
    # signed admissible measures are expected here (small g, many loops)
    warnings.simplefilter("ignore", NegativeMeasureWarning)
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--graphs", type=int, default=Config.graphs)
    ap.add_argument("--ks", type=int, nargs="+", default=list(Config.ks))
    ap.add_argument("--seed", type=int, default=Config.seed)
    args = ap.parse_args()
    cfg = Config(args.graphs, tuple(args.ks), args.seed)

    rng = random.Random(cfg.seed)
    print(f"{'graph':>5} {'|V|':>4} {'|E|':>4} " + " ".join(f"{'k=' + str(k):>10}" for k in cfg.ks) + f" {'seconds':>8}")
    for i in range(cfg.graphs):
        G = random_graph(rng, cfg)
        D = {v: rng.randint(0, 2) for v in G.vertices}
        start = time.perf_counter()
        exact = green_system(G, D)
        want = np.array([[float(exact(x, y)) for y in G.vertices] for x in G.vertices])
        errs = [relative_error(discrete_green(G, D, k), want) for k in cfg.ks]
        elapsed = time.perf_counter() - start
        print(f"{i:5d} {len(G.vertices):4d} {len(G.edges):4d} " + " ".join(f"{e:10.2e}" for e in errs) + f" {elapsed:8.2f}")


if __name__ == "__main__":
    main()
