"""Brute-force floating-point Green functions on a finely subdivided graph.

Each edge is cut into k equal segments, giving an ordinary weighted graph
whose Laplacian is pseudo-inverted numerically. The canonical measure of
the fine graph is computed from its own resistances, so nothing here
reuses the exact machinery; it serves as an independent check on it.
"""

from __future__ import annotations

import numpy as np
import scipy.sparse as sp

from .graph import MetrizedGraph, VertexDivisor


def discretize(G: MetrizedGraph, k: int):
    """Return ``(laplacian, segments, n_nodes)``.

    Nodes 0..|V|-1 are the original vertices in order; ``segments`` is an
    array of rows (i, j, h) for each of the k|E| pieces.
    """
    n = len(G.vertices)
    segs = []
    for e in G.edges:
        h = float(e.length) / k
        chain = [G.index(e.tail)] + list(range(n, n + k - 1)) + [G.index(e.head)]
        n += k - 1
        segs.extend((chain[s], chain[s + 1], h) for s in range(k))
    segs = np.array(segs, dtype=float)
    i = segs[:, 0].astype(int)
    j = segs[:, 1].astype(int)
    w = 1.0 / segs[:, 2]
    off = sp.coo_matrix((np.concatenate([-w, -w]), (np.concatenate([i, j]), np.concatenate([j, i]))), shape=(n, n))
    deg = sp.coo_matrix((np.concatenate([w, w]), (np.concatenate([i, j]), np.concatenate([i, j]))), shape=(n, n))
    return (off + deg).tocsr(), segs, n


def pseudo_inverse(L) -> np.ndarray:
    """L^+ for a connected graph Laplacian, via (L + J/n)^-1 - J/n."""
    L = L.toarray() if sp.issparse(L) else np.asarray(L)
    n = L.shape[0]
    J = np.full((n, n), 1.0 / n)
    return np.linalg.inv(L + J) - J


def discrete_green(G: MetrizedGraph, D=None, k: int = 256) -> np.ndarray:
    """Approximate vertex Green matrix g(v, w) for the admissible measure of D."""
    D = D if isinstance(D, VertexDivisor) else VertexDivisor(dict(D or {}))
    L, segs, n = discretize(G, k)
    Lp = pseudo_inverse(L)
    i = segs[:, 0].astype(int)
    j = segs[:, 1].astype(int)
    h = segs[:, 2]
    R = np.diag(Lp)[i] + np.diag(Lp)[j] - 2 * Lp[i, j]
    loop = i == j
    R[loop] = 0.0

    # canonical measure of the fine graph, lumped onto nodes
    valence = np.bincount(np.concatenate([i, j]), minlength=n).astype(float)
    m = 1.0 - valence / 2
    seg_mass = (1.0 - R / h)  # density (1 - R/h)/h times length h
    np.add.at(m, i, seg_mass / 2)
    np.add.at(m, j, seg_mass / 2)

    deg = float(D.degree)
    d = np.zeros(n)
    for v, c in D.coefficients.items():
        d[G.index(v)] = float(c)
    mu = (d + 2 * m) / (deg + 2)

    nv = len(G.vertices)
    P = np.eye(n) - np.outer(np.ones(n), mu)
    full = P @ Lp @ P.T
    return full[:nv, :nv]


def relative_error(approx: np.ndarray, exact: np.ndarray) -> float:
    """Max-norm error relative to the largest exact entry."""
    scale = np.max(np.abs(exact))
    return float(np.max(np.abs(approx - exact)) / scale)


def circle_convergence(ks=(4, 8, 16, 32, 64, 128, 256), length=1):
    """Error of the discrete g(O, O) on a circle (exact value length/12)."""
    from .graph import build_graph

    G = build_graph(["O"], [("O", "O", length)])
    exact = float(length) / 12
    rows = []
    for k in ks:
        approx = discrete_green(G, None, k)[0, 0]
        rows.append((k, approx, abs(approx - exact)))
    return rows
