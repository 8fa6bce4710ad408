"""Exact potential theory on metrized graphs: admissible measures, Green
functions, semistable fiber invariants, and the lower bounds they feed."""

from .admissible import (
    DegreeMinusTwo,
    GreenSystem,
    admissible_measure,
    canonical_measure,
    constant,
    effective_resistance,
    green_eval,
    green_system,
    verify_admissibility,
)
from .calculus import (
    Measure,
    PiecewiseQuadratic,
    dirac_of,
    integrate,
    laplacian_matrix,
    laplacian_of,
    p_map,
    q_map,
    solve_poisson,
)
from .graph import (
    MetrizedGraph,
    PointLocation,
    VertexDivisor,
    build_graph,
    graph_genus,
    subdivide,
    total_length,
)

__version__ = "0.1.0"
